#include "rmtac/orthogonal.hpp"

#include <cmath>
#include <random>

#include "rmtac/symcore.hpp"
#include "rmtac/symplectic.hpp"

namespace rmtac {

namespace {

void check_shifts(int N, std::size_t k) {
  require(N >= 1, "N must be >= 1");
  require(k >= 1, "at least one shift is required");
}

template <class C>
C reflection_factor_product(std::span<const C> w) {
  C prod(1);
  for (const C& x : w) prod *= x * x - C(1);
  return prod;
}

// w^N sum_eps (weight) prod w^{eps N} prod_{i<j} (1 - w_i^{-eps_i} w_j^{-eps_j})^{-1}
template <class C>
C strict_sign_sum(int N, std::span<const C> w, bool signed_weight) {
  const std::size_t k = w.size();
  C pref(1);
  for (const C& x : w) {
    if (magnitude(x) == 0.0) throw RouteError(ErrorKind::PoleHit, "the sign sum needs nonzero shifts");
    pref *= ipow(x, N);
  }
  C total(0);
  std::vector<C> reflected(k);
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    C term(1);
    for (std::size_t j = 0; j < k; ++j) {
      const bool minus = (mask >> j) & 1U;
      term *= ipow(w[j], minus ? -static_cast<long long>(N) : N);
      if (minus && signed_weight) term = -term;
      reflected[j] = minus ? w[j] : C(1) / w[j];
    }
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        const C factor = C(1) - reflected[i] * reflected[j];
        if (magnitude(factor) < kSeparationThreshold)
          throw RouteError(ErrorKind::PoleHit, "a sign-sum denominator vanishes");
        term /= factor;
      }
    }
    total += term;
  }
  return pref * total;
}

std::vector<std::vector<int>> partial_index_sets(PartialVariant v, std::size_t count, int top) {
  const int half = static_cast<int>(count / 2);
  switch (v) {
    case PartialVariant::M: return paired_index_sets(false, half, false, top);
    case PartialVariant::E: return paired_index_sets(true, half - 1, true, top);
    case PartialVariant::R: return paired_index_sets(false, half, true, top);
    case PartialVariant::L: return paired_index_sets(true, half, false, top);
  }
  return {};
}

}  // namespace

template <class C>
SubsetStats<C> subset_stats(std::span<const int> A, std::span<const int> B, std::span<const C> w) {
  auto at = [&](int i) -> const C& {
    require(i >= 0 && static_cast<std::size_t>(i) < w.size(), "subset index out of range");
    return w[static_cast<std::size_t>(i)];
  };
  SubsetStats<C> s{C(1), 0, 0, C(1), C(1), C(1), C(1), C(1)};
  for (int a : A) s.wA *= at(a);
  for (int a : A) {
    for (int b : B) {
      require(a != b, "subsets must be disjoint");
      if (a > b) ++s.W;
      s.E *= C(1) - at(a) * at(b);
      s.D *= at(b) - at(a);
    }
  }
  const auto a_size = static_cast<long long>(A.size());
  const auto b_size = static_cast<long long>(B.size());
  s.S = a_size * b_size + a_size * (a_size + 1) / 2 + s.W;
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = i + 1; j < A.size(); ++j) {
      s.Delta_A *= at(A[j]) - at(A[i]);
      s.calE_A *= C(1) - at(A[i]) * at(A[j]);
    }
  for (std::size_t i = 0; i < B.size(); ++i)
    for (std::size_t j = i + 1; j < B.size(); ++j) s.Delta_B *= at(B[j]) - at(B[i]);
  return s;
}

template <class C>
C so_autocorr_det(int N, std::span<const C> w) {
  check_shifts(N, w.size());
  return alternant_sum(so_index_sets(static_cast<int>(w.size()), N), w);
}

template <class C>
C so_autocorr_schur(int N, std::span<const C> w) {
  check_shifts(N, w.size());
  const int k = static_cast<int>(w.size());
  C total(0);
  auto add = [&](std::vector<int> conj_parts) {
    const Partition lambda = conjugate(Partition(std::move(conj_parts)));
    total += schur_stable(lambda.with_length(w.size()), w);
  };
  for (const Partition& p : bounded_partitions(2 * N, (k - 1) / 2)) {
    std::vector<int> odd = p.parts();
    for (int& v : odd) v = 2 * v + 1;
    add(std::move(odd));
  }
  for (const Partition& p : bounded_partitions(2 * N, k / 2)) {
    std::vector<int> even = p.parts();
    for (int& v : even) v *= 2;
    add(std::move(even));
  }
  return total;
}

template <class C>
C so_autocorr_eps(int N, std::span<const C> w) {
  check_shifts(N, w.size());
  return strict_sign_sum(N, w, false);
}

template <class C>
C ominus_autocorr_det(int N, std::span<const C> w) {
  check_shifts(N, w.size());
  return reflection_factor_product(w) * sp_autocorr_det<C>(N - 1, w);
}

template <class C>
C ominus_autocorr_schur(int N, std::span<const C> w) {
  check_shifts(N, w.size());
  return reflection_factor_product(w) * sp_autocorr_schur<C>(N - 1, w);
}

template <class C>
C ominus_autocorr_eps(int N, std::span<const C> w) {
  check_shifts(N, w.size());
  return strict_sign_sum(N, w, true);
}

template <class C>
PartialSum so_partial_sums(PartialVariant variant, int n_max, std::span<const C> w) {
  const std::size_t k = w.size();
  require(k >= 1, "at least one shift is required");
  const bool even_count = variant == PartialVariant::M || variant == PartialVariant::E;
  require((k % 2 == 0) == even_count, "M and E need an even shift count, R and L an odd one");
  require(n_max >= 0, "n_max must be nonnegative");

  PartialSum out;
  const auto sets = partial_index_sets(variant, k, n_max);
  out.value = to_cd(alternant_sum(sets, w));

  // Closed form: (1 / (calE([k]) Delta([k]))) sum_{|B| parity} w_A^n E(A,B) Delta(A) Delta(B) (-1)^{S-|A|}.
  const bool b_even = variant == PartialVariant::M || variant == PartialVariant::R;
  std::vector<int> all(k);
  for (std::size_t i = 0; i < k; ++i) all[i] = static_cast<int>(i);
  const SubsetStats<C> whole = subset_stats<C>(all, {}, w);
  C total(0);
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::vector<int> A, B;
    for (std::size_t i = 0; i < k; ++i) ((mask >> i) & 1U ? B : A).push_back(static_cast<int>(i));
    if ((B.size() % 2 == 0) != b_even) continue;
    const SubsetStats<C> s = subset_stats<C>(A, B, w);
    C term = ipow(s.wA, n_max) * s.E * s.Delta_A * s.Delta_B;
    if ((s.S - static_cast<long long>(A.size())) % 2 != 0) term = -term;
    total += term;
  }
  const C denom = whole.calE_A * whole.Delta_A;
  if (magnitude(denom) < kSeparationThreshold)
    throw RouteError(ErrorKind::NearConfluent, "closed form denominator vanishes");
  out.closed_form = to_cd(C(total / denom));
  out.residual = std::abs(out.value - out.closed_form);
  return out;
}

Cd orthogonal_contour(Family family, int N, std::span<const Cd> alphas, const ContourConfig& cfg) {
  require(family == Family::SpecialOrthogonalEven || family == Family::OrthogonalMinus,
          "orthogonal contour needs the SO or O- family");
  check_shifts(N, alphas.size());
  std::vector<Cd> enclosed;
  Cd sum{0.0, 0.0};
  for (const Cd& a : alphas) {
    enclosed.push_back(a);
    enclosed.push_back(-a);
    sum += a;
  }
  const Circle circle = resolve_circle(cfg, enclosed, true);
  require_exponential_clearance(circle);
  ReflectionKernel G;
  G.F = [N](std::span<const Cd> z) {
    Cd s{0.0, 0.0};
    for (const Cd& x : z) s += x;
    return std::exp(static_cast<double>(N) * s);
  };
  G.f = [](Cd x) { return 1.0 / (1.0 - std::exp(-x)); };
  G.inclusive = false;
  ContourConfig pinned = cfg;
  pinned.center = circle.center;
  pinned.radius = circle.radius;
  const SignVariant variant = family == Family::OrthogonalMinus ? SignVariant::Signed : SignVariant::Plain;
  return std::exp(static_cast<double>(N) * sum) * reflection_integral(G, alphas, variant, pinned);
}

Cd orthogonal_quadrature(Family family, int N, std::span<const Cd> w, const QuadratureConfig& cfg) {
  require(family == Family::SpecialOrthogonalEven || family == Family::OrthogonalMinus,
          "orthogonal quadrature needs the SO or O- family");
  check_shifts(N, w.size());
  const GroupSpec g(family, N);
  QuadratureConfig c = cfg;
  c.integrand_degree = static_cast<int>(w.size());
  const Cd avg = quadrature_average(g, char_poly_product(g, {w.begin(), w.end()}), c);
  return (family == Family::OrthogonalMinus && w.size() % 2 == 1) ? -avg : avg;
}

MonteCarloEstimate orthogonal_montecarlo(Family family, int N, std::span<const Cd> w, std::uint64_t seed,
                                         std::size_t count) {
  require(family == Family::SpecialOrthogonalEven || family == Family::OrthogonalMinus,
          "orthogonal Monte Carlo needs the SO or O- family");
  check_shifts(N, w.size());
  const GroupSpec g(family, N);
  MonteCarloEstimate est = monte_carlo_average(g, char_poly_product(g, {w.begin(), w.end()}), seed, count);
  if (family == Family::OrthogonalMinus && w.size() % 2 == 1) est.mean = -est.mean;
  return est;
}

template <class C>
C full_o2n_average(int N, std::span<const C> w, bool with_ominus_sign) {
  check_shifts(N, w.size());
  const C so = so_autocorr_schur<C>(N, w);
  C om = ominus_autocorr_schur<C>(N, w);
  if (!with_ominus_sign && w.size() % 2 == 1) om = -om;
  return (so + om) / C(2);
}

MonteCarloEstimate full_o2n_montecarlo(int N, std::span<const Cd> w, std::uint64_t seed, std::size_t count) {
  check_shifts(N, w.size());
  require(count >= 2, "Monte Carlo needs at least two samples");
  const GroupSpec gso(Family::SpecialOrthogonalEven, N);
  const GroupSpec gom(Family::OrthogonalMinus, N);
  EigenangleSampler so_stream(gso, seed);
  EigenangleSampler om_stream(gom, seed ^ 0x9e3779b97f4a7c15ULL);
  std::mt19937_64 coin(seed + 1);
  const AngleIntegrand fso = char_poly_product(gso, {w.begin(), w.end()});
  const AngleIntegrand fom = char_poly_product(gom, {w.begin(), w.end()});
  std::vector<Cd> values(count);
  for (std::size_t i = 0; i < count; ++i) values[i] = (coin() & 1U) ? fom(om_stream.next()) : fso(so_stream.next());
  const Cd mean = pairwise_sum(values) / static_cast<double>(count);
  double ss = 0.0;
  for (const Cd& v : values) ss += std::norm(v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(count - 1) / static_cast<double>(count))};
}

std::int64_t pairing_determinant(int N) {
  require(N >= 1, "N must be >= 1");
  const auto n = static_cast<std::size_t>(N);
  std::vector<std::int64_t> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = j >= i ? 1 : -1;
  return integer_determinant(std::move(a), n);
}

#define RMTAC_INSTANTIATE(C)                                                                                  \
  template SubsetStats<C> subset_stats<C>(std::span<const int>, std::span<const int>, std::span<const C>);    \
  template C so_autocorr_det<C>(int, std::span<const C>);                                                    \
  template C so_autocorr_schur<C>(int, std::span<const C>);                                                  \
  template C so_autocorr_eps<C>(int, std::span<const C>);                                                    \
  template C ominus_autocorr_det<C>(int, std::span<const C>);                                                \
  template C ominus_autocorr_schur<C>(int, std::span<const C>);                                              \
  template C ominus_autocorr_eps<C>(int, std::span<const C>);                                                \
  template PartialSum so_partial_sums<C>(PartialVariant, int, std::span<const C>);                           \
  template C full_o2n_average<C>(int, std::span<const C>, bool);

RMTAC_INSTANTIATE(Cd)
RMTAC_INSTANTIATE(MpComplex)
#undef RMTAC_INSTANTIATE

}  // namespace rmtac

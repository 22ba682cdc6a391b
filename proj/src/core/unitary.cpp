#include "rmtac/unitary.hpp"

#include <cmath>

#include "rmtac/symcore.hpp"

namespace rmtac {

namespace {

void check_split(int N, int m, std::size_t n) {
  require(N >= 1, "N must be >= 1");
  require(n >= 1, "at least one shift is required");
  require(m >= 0 && m <= static_cast<int>(n), "m must lie in [0, n]");
}

}  // namespace

void UnitaryQuery::validate() const { check_split(N, m, shifts.size()); }

template <class C>
C autocorr_schur(int N, int m, std::span<const C> w) {
  check_split(N, m, w.size());
  std::vector<int> parts(w.size(), 0);
  for (std::size_t i = 0; i < w.size() - static_cast<std::size_t>(m); ++i) parts[i] = N;
  return schur_stable(Partition(std::move(parts)), w);
}

template <class C>
C autocorr_det(int N, int m, std::span<const C> w) {
  check_split(N, m, w.size());
  const std::size_t n = w.size();
  std::vector<int> exps;
  for (int i = 0; i < m; ++i) exps.push_back(i);
  for (int i = m; i < static_cast<int>(n); ++i) exps.push_back(N + i);
  return alternant_sum(std::vector<std::vector<int>>{exps}, w);
}

template <class C>
C autocorr_comb(int N, int m, std::span<const C> w) {
  check_split(N, m, w.size());
  for (const C& x : w)
    if (magnitude(x) == 0.0) throw RouteError(ErrorKind::PoleHit, "the combinatorial sum needs nonzero shifts");
  C total(0);
  for (const SplitPermutation& sp : split_permutations(static_cast<int>(w.size()), m)) {
    C right(1);
    for (int q : sp.right) right *= w[static_cast<std::size_t>(q)];
    C denom(1);
    for (int l : sp.left) {
      for (int q : sp.right) {
        const C factor = C(1) - w[static_cast<std::size_t>(l)] / w[static_cast<std::size_t>(q)];
        if (magnitude(factor) < kSeparationThreshold)
          throw RouteError(ErrorKind::PoleHit, "a shift on the left of a split meets one on the right");
        denom *= factor;
      }
    }
    total += ipow(right, N) / denom;
  }
  return total;
}

Cd autocorr_contour(int N, int m, std::span<const Cd> alphas, const ContourConfig& cfg) {
  check_split(N, m, alphas.size());
  const Circle circle = resolve_circle(cfg, alphas, false);
  require_exponential_clearance(circle);
  SplitKernel G;
  G.F = [N](std::span<const Cd>, std::span<const Cd> b) {
    Cd sum{0.0, 0.0};
    for (const Cd& z : b) sum += z;
    return std::exp(-static_cast<double>(N) * sum);
  };
  G.f = [](Cd x) { return 1.0 / (1.0 - std::exp(-x)); };
  ContourConfig pinned = cfg;
  pinned.center = circle.center;
  pinned.radius = circle.radius;
  return split_integral(G, alphas, m, pinned);
}

AngleIntegrand unitary_integrand(int m, std::vector<Cd> w) {
  return [m, w = std::move(w)](std::span<const double> angles) {
    Cd prod{1.0, 0.0};
    for (double t : angles) {
      const Cd e = std::polar(1.0, t);
      const Cd ebar = std::conj(e);
      for (std::size_t r = 0; r < w.size(); ++r)
        prod *= static_cast<int>(r) < m ? 1.0 - ebar * w[r] : w[r] - e;
    }
    return prod;
  };
}

Cd autocorr_quadrature(int N, int m, std::span<const Cd> w, const QuadratureConfig& cfg) {
  check_split(N, m, w.size());
  QuadratureConfig c = cfg;
  c.integrand_degree = static_cast<int>(w.size());
  return quadrature_average(GroupSpec(Family::Unitary, N), unitary_integrand(m, {w.begin(), w.end()}), c);
}

MonteCarloEstimate autocorr_montecarlo(int N, int m, std::span<const Cd> w, std::uint64_t seed, std::size_t count) {
  check_split(N, m, w.size());
  return monte_carlo_average(GroupSpec(Family::Unitary, N), unitary_integrand(m, {w.begin(), w.end()}), seed, count);
}

template <class C>
C shifted_product_average(int N, int m, std::span<const C> s) {
  check_split(N, m, s.size());
  std::vector<C> reordered(s.begin() + m, s.end());
  reordered.insert(reordered.end(), s.begin(), s.begin() + m);
  C pref(1);
  for (int i = 0; i < m; ++i) pref *= ipow(s[static_cast<std::size_t>(i)], -static_cast<long long>(N));
  const int n = static_cast<int>(s.size());
  return pref * autocorr_schur<C>(N, n - m, std::span<const C>(reordered));
}

Cd exponential_comparison_sum(int N, std::span<const Cd> alphas) {
  require(N >= 1, "N must be >= 1");
  require(!alphas.empty() && alphas.size() % 2 == 0, "the comparison sum needs an even number of shifts");
  const int n = static_cast<int>(alphas.size());
  const int k = n / 2;
  const double half_n = 0.5 * N;
  Cd outer{0.0, 0.0};
  for (int i = 0; i < n; ++i) outer += (i < k ? -1.0 : 1.0) * alphas[static_cast<std::size_t>(i)];
  std::vector<Cd> terms;
  for (const SplitPermutation& sp : split_permutations(n, k)) {
    Cd expo{0.0, 0.0};
    for (int l : sp.left) expo += alphas[static_cast<std::size_t>(l)];
    for (int q : sp.right) expo -= alphas[static_cast<std::size_t>(q)];
    Cd term = std::exp(half_n * expo);
    for (int l : sp.left) {
      for (int q : sp.right) {
        const Cd factor = 1.0 - std::exp(alphas[static_cast<std::size_t>(q)] - alphas[static_cast<std::size_t>(l)]);
        if (std::abs(factor) < kSeparationThreshold)
          throw RouteError(ErrorKind::PoleHit, "two shifts coincide across a split");
        term /= factor;
      }
    }
    terms.push_back(term);
  }
  return std::exp(half_n * outer) * pairwise_sum(terms);
}

AngleIntegrand exponential_comparison_integrand(std::vector<Cd> alphas) {
  return [alphas = std::move(alphas)](std::span<const double> angles) {
    const std::size_t k = alphas.size() / 2;
    Cd prod{1.0, 0.0};
    for (double t : angles) {
      const Cd e = std::polar(1.0, t);
      for (std::size_t j = 0; j < alphas.size(); ++j)
        prod *= j < k ? 1.0 - e * std::exp(-alphas[j]) : 1.0 - std::conj(e) * std::exp(alphas[j]);
    }
    return prod;
  };
}

#define RMTAC_INSTANTIATE(C)                                        \
  template C autocorr_schur<C>(int, int, std::span<const C>);      \
  template C autocorr_det<C>(int, int, std::span<const C>);        \
  template C autocorr_comb<C>(int, int, std::span<const C>);       \
  template C shifted_product_average<C>(int, int, std::span<const C>);

RMTAC_INSTANTIATE(Cd)
RMTAC_INSTANTIATE(MpComplex)
#undef RMTAC_INSTANTIATE

}  // namespace rmtac

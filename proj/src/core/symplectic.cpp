#include "rmtac/symplectic.hpp"

#include <cmath>
#include <limits>

#include "rmtac/symcore.hpp"

namespace rmtac {

namespace {

void check_shifts(int N, std::size_t k, int min_N) {
  require(N >= min_N, "N is below the allowed range");
  require(k >= 1, "at least one shift is required");
}

}  // namespace

template <class C>
C sp_autocorr_det(int N, std::span<const C> w) {
  check_shifts(N, w.size(), 0);
  return alternant_sum(sp_index_sets(static_cast<int>(w.size()), N), w);
}

template <class C>
C sp_autocorr_schur(int N, std::span<const C> w) {
  check_shifts(N, w.size(), 0);
  C total(0);
  for (const Partition& lambda : even_partitions(static_cast<int>(w.size()), 2 * N)) total += schur_stable(lambda, w);
  return total;
}

template <class C>
C sp_autocorr_eps(int N, std::span<const C> w) {
  check_shifts(N, w.size(), 0);
  const std::size_t k = w.size();
  C pref(1);
  for (const C& x : w) {
    if (magnitude(x) == 0.0) throw RouteError(ErrorKind::PoleHit, "the sign sum needs nonzero shifts");
    pref *= ipow(x, N);
  }
  std::vector<C> inv(k);
  for (std::size_t j = 0; j < k; ++j) inv[j] = C(1) / w[j];
  C total(0);
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    // bit set means eps_j = -1; reflected[j] = w_j^{-eps_j}
    C term(1);
    std::vector<C> reflected(k);
    for (std::size_t j = 0; j < k; ++j) {
      const bool minus = (mask >> j) & 1U;
      term *= ipow(w[j], minus ? -static_cast<long long>(N) : N);
      reflected[j] = minus ? w[j] : inv[j];
    }
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i; j < k; ++j) {
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

Cd sp_autocorr_contour(int N, std::span<const Cd> alphas, const ContourConfig& cfg) {
  check_shifts(N, alphas.size(), 1);
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
  G.inclusive = true;
  ContourConfig pinned = cfg;
  pinned.center = circle.center;
  pinned.radius = circle.radius;
  return std::exp(-static_cast<double>(N) * sum) * reflection_integral(G, alphas, SignVariant::Plain, pinned);
}

Cd sp_autocorr_quadrature(int N, std::span<const Cd> w, const QuadratureConfig& cfg) {
  check_shifts(N, w.size(), 1);
  const GroupSpec g(Family::Symplectic, N);
  QuadratureConfig c = cfg;
  c.integrand_degree = static_cast<int>(w.size());
  return quadrature_average(g, char_poly_product(g, {w.begin(), w.end()}), c);
}

MonteCarloEstimate sp_autocorr_montecarlo(int N, std::span<const Cd> w, std::uint64_t seed, std::size_t count) {
  check_shifts(N, w.size(), 1);
  const GroupSpec g(Family::Symplectic, N);
  return monte_carlo_average(g, char_poly_product(g, {w.begin(), w.end()}), seed, count);
}

Cd sp_large_n_ratio(std::span<const Cd> b, long long N) {
  require(N >= 1, "N must be >= 1");
  require(!b.empty(), "at least one shift is required");
  const std::size_t k = b.size();
  const double n = static_cast<double>(N);
  require(N <= std::numeric_limits<int>::max(), "N is too large");
  Cd bsum{0.0, 0.0};
  for (const Cd& x : b) {
    if (std::abs(x) == 0.0) throw RouteError(ErrorKind::PoleHit, "the scaling form needs nonzero b");
    bsum += x;
  }

  // Exact side at 40 digits: the sign sum loses about log10(N^{k(k+1)/2}) digits.
  Cd exact;
  {
    ExtendedPrecisionScope scope(40);
    std::vector<MpComplex> wexact;
    for (const Cd& x : b) wexact.push_back(exp(from_cd<MpComplex>(x) / MpComplex(static_cast<double>(N))));
    exact = to_cd(sp_autocorr_eps<MpComplex>(static_cast<int>(N), std::span<const MpComplex>(wexact)));
  }

  Cd asym{0.0, 0.0};
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::vector<Cd> eb(k);
    Cd term{1.0, 0.0};
    for (std::size_t j = 0; j < k; ++j) {
      eb[j] = ((mask >> j) & 1U) ? -b[j] : b[j];
      term *= std::exp(eb[j]);
    }
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i; j < k; ++j) {
        const Cd d = eb[i] + eb[j];
        if (std::abs(d) < kSeparationThreshold) throw RouteError(ErrorKind::PoleHit, "eps_i b_i + eps_j b_j vanishes");
        term /= d;
      }
    }
    asym += term;
  }
  const double power = std::pow(n, static_cast<double>(k * k + k) / 2.0);
  return exact / (power * std::exp(bsum) * asym);
}

#define RMTAC_INSTANTIATE(C)                                 \
  template C sp_autocorr_det<C>(int, std::span<const C>);   \
  template C sp_autocorr_schur<C>(int, std::span<const C>); \
  template C sp_autocorr_eps<C>(int, std::span<const C>);

RMTAC_INSTANTIATE(Cd)
RMTAC_INSTANTIATE(MpComplex)
#undef RMTAC_INSTANTIATE

}  // namespace rmtac

// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "rmtac/contour.hpp"
#include "rmtac/haar.hpp"
#include "rmtac/identities.hpp"
#include "rmtac/orthogonal.hpp"
#include "rmtac/symplectic.hpp"
#include "rmtac/unitary.hpp"
#include "test_util.hpp"

using namespace rmtac;
using testutil::random_points;
using testutil::rel;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

struct Tracker {
  double worst = 0.0;
  bool ok = true;
  void bound(double value, double limit) {
    worst = std::max(worst, value);
    ok = ok && value <= limit;  // NaN fails
  }
};

char buf[256];

template <class... A>
std::string fmt(const char* f, A... a) {
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

// points with lo <= |z| <= hi, pairwise and from every -z_j at least sep apart
std::vector<Cd> reflection_safe(std::mt19937_64& rng, int k, double lo, double hi, double sep) {
  for (;;) {
    auto z = random_points(rng, k, lo, hi, sep);
    bool ok = true;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) ok = ok && std::abs(z[i] + z[j]) >= sep;
    if (ok) return z;
  }
}

Cd exp_pole(Cd x) { return 1.0 / (1.0 - std::exp(-x)); }
Cd inv(Cd x) { return 1.0 / x; }

Outcome c1_unitary_routes() {
  std::mt19937_64 rng(1001);
  Tracker t;
  for (int N = 1; N <= 4; ++N)
    for (int n = 1; n <= 4; ++n)
      for (int m = 0; m <= n; ++m)
        for (int s = 0; s < 25; ++s) {
          const auto w = random_points(rng, n, 0.5, 2.0);
          const Cd a = autocorr_schur<Cd>(N, m, w), b = autocorr_det<Cd>(N, m, w), c = autocorr_comb<Cd>(N, m, w);
          t.bound(std::max({rel(a, b), rel(a, c), rel(b, c)}), 1e-9);
        }
  return {t.ok, fmt("max pairwise deviation %.2e (limit 1e-9)", t.worst)};
}

Outcome c2_weyl_oracle() {
  std::mt19937_64 rng(1002);
  const QuadratureConfig cfg;
  Tracker t;
  for (int s = 0; s < 10; ++s)
    for (int N = 1; N <= 3; ++N) {
      for (int n = 1; n <= 3; ++n)
        for (int m = 0; m <= n; ++m) {
          const auto w = random_points(rng, n, 0.5, 1.5);
          t.bound(rel(autocorr_quadrature(N, m, w, cfg), autocorr_schur<Cd>(N, m, w)), 1e-8);
        }
      for (int k = 1; k <= 2; ++k) {
        const auto w = random_points(rng, k, 0.5, 1.5);
        t.bound(rel(sp_autocorr_quadrature(N, w, cfg), sp_autocorr_schur<Cd>(N, w)), 1e-8);
        t.bound(rel(orthogonal_quadrature(Family::SpecialOrthogonalEven, N, w, cfg), so_autocorr_schur<Cd>(N, w)),
                1e-8);
        t.bound(rel(orthogonal_quadrature(Family::OrthogonalMinus, N, w, cfg), ominus_autocorr_schur<Cd>(N, w)), 1e-8);
      }
    }
  return {t.ok, fmt("max relative deviation from quadrature %.2e (limit 1e-8)", t.worst)};
}

Outcome c3_closed_forms() {
  std::mt19937_64 rng(1003);
  Tracker t;
  for (int N = 1; N <= 5; ++N)
    for (int s = 0; s < 20; ++s) {
      const auto w = random_points(rng, 1, 0.5, 2.0);
      const Cd z = w[0], z2N = std::pow(z, 2 * N);
      const Cd sp = (1.0 - z2N * z * z) / (1.0 - z * z);
      for (const Cd v : {sp_autocorr_det<Cd>(N, w), sp_autocorr_schur<Cd>(N, w), sp_autocorr_eps<Cd>(N, w)})
        t.bound(rel(v, sp), 1e-12);
      for (const Cd v : {so_autocorr_det<Cd>(N, w), so_autocorr_schur<Cd>(N, w), so_autocorr_eps<Cd>(N, w)})
        t.bound(rel(v, 1.0 + z2N), 1e-12);
      for (const Cd v : {ominus_autocorr_det<Cd>(N, w), ominus_autocorr_schur<Cd>(N, w), ominus_autocorr_eps<Cd>(N, w)})
        t.bound(rel(v, z2N - 1.0), 1e-12);
    }
  return {t.ok, fmt("max relative deviation %.2e (limit 1e-12)", t.worst)};
}

Outcome c4_identity_suite() {
  IdentitySuiteConfig d;
  d.trials = 500;
  d.seed = 1004;
  d.max_n = 6;
  const auto rd = run_identity_suite(d);
  IdentitySuiteConfig x = d;
  x.trials = 50;
  x.digits = 40;
  const auto rx = run_identity_suite(x);
  double md = 0, mx = 0;
  for (const auto& [name, v] : rd.max_residual) md = std::max(md, v);
  for (const auto& [name, v] : rx.max_residual) mx = std::max(mx, v);
  return {rd.passed && rx.passed && rd.identity3_convention == rx.identity3_convention,
          fmt("double max %.2e (limit 1e-10), 40-digit max %.2e (limit 1e-30), vanishing exponent: %s", md, mx,
              rd.identity3_convention.c_str())};
}

Outcome c5_lemma_checks() {
  std::mt19937_64 rng(1005);
  std::uniform_real_distribution<double> c(-1.5, 1.5);
  ContourConfig coarse, fine;
  fine.nodes_per_dim = 256;
  Tracker t;
  bool monotone = true;
  auto record = [&](const LemmaCheck& a, const LemmaCheck& b) {
    t.bound(a.residual, 1e-6);
    monotone = monotone && b.residual <= std::max(a.residual, 1e-12);
  };
  for (int s = 0; s < 4; ++s) {
    for (int n = 1; n <= 2; ++n) {
      const auto u = testutil::random_disk(rng, n, 0.25, 0.05);
      const double p = c(rng), q = c(rng);
      const SplitKernel kernels[] = {
          {[](std::span<const Cd>, std::span<const Cd>) { return Cd(1); }, inv},
          {[p, q](std::span<const Cd> a, std::span<const Cd> b) {
             Cd e = 0;
             for (Cd x : a) e += p * x;
             for (Cd x : b) e += q * x;
             return std::exp(e);
           },
           exp_pole},
      };
      for (const SplitKernel& G : kernels)
        for (int m = 0; m <= n; ++m) record(lemma_unitary_check(G, u, m, coarse), lemma_unitary_check(G, u, m, fine));
    }
    for (int k = 1; k <= 2; ++k) {
      const auto a = reflection_safe(rng, k, 0.05, 0.3, 0.05);
      const double p = c(rng);
      const auto F = [p](std::span<const Cd> z) {
        Cd e = 0;
        for (Cd x : z) e += p * x;
        return std::exp(e);
      };
      const ReflectionKernel plain{F, exp_pole, true}, strict{F, exp_pole, false};
      record(lemma_sym_check(plain, a, SignVariant::Plain, coarse), lemma_sym_check(plain, a, SignVariant::Plain, fine));
      record(lemma_sym_check(strict, a, SignVariant::Plain, coarse),
             lemma_sym_check(strict, a, SignVariant::Plain, fine));
      record(lemma_sym_check(strict, a, SignVariant::Signed, coarse),
             lemma_sym_check(strict, a, SignVariant::Signed, fine));
    }
  }
  return {t.ok && monotone,
          fmt("max residual %.2e at 128 nodes (limit 1e-6), %s at 256", t.worst, monotone ? "no increase" : "increase")};
}

Outcome c6_contour_routes() {
  std::mt19937_64 rng(1006);
  const ContourConfig cfg;
  Tracker t;
  for (int s = 0; s < 3; ++s)
    for (int N = 1; N <= 3; ++N) {
      const auto a2 = reflection_safe(rng, 2, 0.05, 0.3, 0.05);
      const std::vector<Cd> wu = {std::exp(-a2[0]), std::exp(-a2[1])};
      for (int m = 0; m <= 2; ++m) t.bound(rel(autocorr_contour(N, m, a2, cfg), autocorr_comb<Cd>(N, m, wu)), 1e-6);
      for (int k = 1; k <= 2; ++k) {
        const auto a = reflection_safe(rng, k, 0.05, 0.3, 0.05);
        std::vector<Cd> minus, plus;
        for (Cd z : a) {
          minus.push_back(std::exp(-z));
          plus.push_back(std::exp(z));
        }
        t.bound(rel(sp_autocorr_contour(N, a, cfg), sp_autocorr_eps<Cd>(N, minus)), 1e-6);
        t.bound(rel(orthogonal_contour(Family::SpecialOrthogonalEven, N, a, cfg), so_autocorr_eps<Cd>(N, plus)), 1e-6);
        t.bound(rel(orthogonal_contour(Family::OrthogonalMinus, N, a, cfg), ominus_autocorr_eps<Cd>(N, plus)), 1e-6);
      }
    }
  return {t.ok, fmt("max relative deviation %.2e (limit 1e-6)", t.worst)};
}

Outcome c7_so_decomposition() {
  std::mt19937_64 rng(1007);
  Tracker sum, closed;
  for (int s = 0; s < 5; ++s)
    for (int N = 1; N <= 4; ++N) {
      const auto w2 = random_points(rng, 2, 0.5, 1.5);
      const auto M = so_partial_sums<Cd>(PartialVariant::M, 2 * N + 1, std::span<const Cd>(w2));
      const auto E = so_partial_sums<Cd>(PartialVariant::E, 2 * N + 1, std::span<const Cd>(w2));
      sum.bound(rel(M.value + E.value, so_autocorr_det<Cd>(N, w2)), 1e-10);
      closed.bound(std::max(M.residual, E.residual), 1e-10);
      for (int k : {1, 3}) {
        const auto w = random_points(rng, k, 0.5, 1.5);
        const auto R = so_partial_sums<Cd>(PartialVariant::R, 2 * N + k - 1, std::span<const Cd>(w));
        const auto L = so_partial_sums<Cd>(PartialVariant::L, 2 * N + k - 1, std::span<const Cd>(w));
        sum.bound(rel(R.value + L.value, so_autocorr_det<Cd>(N, w)), 1e-10);
        closed.bound(std::max(R.residual, L.residual), 1e-10);
      }
    }
  bool det_ok = true;
  for (int N = 1; N <= 10; ++N) det_ok = det_ok && pairing_determinant(N) == (std::int64_t{1} << (N - 1));
  return {sum.ok && closed.ok && det_ok,
          fmt("split sums %.2e, closed-form residual %.2e (limit 1e-10), pairing determinant %s", sum.worst,
              closed.worst, det_ok ? "2^(N-1) for N=1..10" : "MISMATCH")};
}

Outcome c8_monte_carlo() {
  std::mt19937_64 rng(1008);
  constexpr std::size_t samples = 100000;
  double worst = 0;
  std::string timing;
  for (int family = 0; family < 4; ++family) {
    const auto start = std::chrono::steady_clock::now();
    for (const auto& [N, k] : {std::pair{2, 1}, std::pair{8, 2}}) {
      const auto w = random_points(rng, k, 0.5, 1.0);
      const std::uint64_t seed = rng();
      MonteCarloEstimate est;
      Cd exact;
      switch (family) {
        case 0: {
          // two Lambda factors at w and one adjoint factor per extra shift
          std::vector<Cd> u = w;
          u.push_back(std::conj(w[0]));
          est = autocorr_montecarlo(N, 1, u, seed, samples);
          exact = autocorr_schur<Cd>(N, 1, u);
          break;
        }
        case 1:
          est = sp_autocorr_montecarlo(N, w, seed, samples);
          exact = sp_autocorr_schur<Cd>(N, w);
          break;
        case 2:
          est = orthogonal_montecarlo(Family::SpecialOrthogonalEven, N, w, seed, samples);
          exact = so_autocorr_schur<Cd>(N, w);
          break;
        default:
          est = orthogonal_montecarlo(Family::OrthogonalMinus, N, w, seed, samples);
          exact = ominus_autocorr_schur<Cd>(N, w);
      }
      worst = std::max(worst, std::abs(est.mean - exact) / est.std_error);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    timing += fmt("%s%.1fs", family ? "/" : "", secs);
  }
  return {worst <= 4.0, fmt("max |z| %.2f (limit 4), per-family time U/USp/SO/O- %s", worst, timing.c_str())};
}

Outcome c9_large_n() {
  const std::vector<std::vector<Cd>> bs = {{1.0}, {1.0, 0.5}, {Cd(0.5, 0.5)}, {Cd(0.8, -0.2), Cd(-0.3, 0.4)}};
  bool ok = true;
  double worst = 0;
  for (const auto& b : bs) {
    const double e3 = std::abs(sp_large_n_ratio(b, 1000) - 1.0), e4 = std::abs(sp_large_n_ratio(b, 10000) - 1.0);
    worst = std::max(worst, e3);
    ok = ok && e3 <= 5e-3 && e4 < e3;
  }
  return {ok, fmt("max |ratio-1| at N=1e3 %.2e (limit 5e-3), decreasing at N=1e4", worst)};
}

Outcome c10_functional_equations() {
  const Family families[] = {Family::Unitary, Family::Symplectic, Family::SpecialOrthogonalEven,
                             Family::OrthogonalMinus};
  std::mt19937_64 rng(1010);
  std::uniform_real_distribution<double> radius(0.5, 2.0), phase(0.0, 2.0 * std::numbers::pi);
  Tracker small, unit, scaled;
  for (Family f : families) {
    for (int i = 0; i < 1000; ++i) {
      const int N = 1 + i % 8;
      const GroupSpec g(f, N);
      EigenangleSampler sampler(g, rng());
      const auto angles = sampler.next();
      const Cd s = std::polar(radius(rng), phase(rng));
      const double fe = functional_equation_residual(g, angles, s);
      const double ze = z_functional_equation_residual(g, angles, s);
      const double lam = std::abs(char_poly(g, angles, s));
      if (N <= 4) {
        small.bound(fe, 1e-12);
        small.bound(ze, 1e-12);
      }
      scaled.bound(fe / std::max(1.0, lam), 1e-12);
      scaled.bound(ze / std::max(1.0, lam * std::pow(std::abs(s), -N)), 1e-12);
      const Cd e = std::polar(1.0, phase(rng));
      unit.bound(functional_equation_residual(g, angles, e), 1e-12);
      unit.bound(z_functional_equation_residual(g, angles, e), 1e-12);
    }
  }
  return {small.ok && unit.ok && scaled.ok,
          fmt("absolute %.2e (N<=4), %.2e (|s|=1, N<=8); relative %.2e (N<=8); limit 1e-12", small.worst, unit.worst,
              scaled.worst)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"C1 unitary route agreement", c1_unitary_routes},
      {"C2 Weyl-oracle equivalence", c2_weyl_oracle},
      {"C3 closed-form fixtures", c3_closed_forms},
      {"C4 identity suite", c4_identity_suite},
      {"C5 contour lemma checks", c5_lemma_checks},
      {"C6 contour-route equivalence", c6_contour_routes},
      {"C7 SO decomposition", c7_so_decomposition},
      {"C8 Monte Carlo consistency", c8_monte_carlo},
      {"C9 large-N scaling", c9_large_n},
      {"C10 functional equations", c10_functional_equations},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s: %s [%.1fs]\n", o.passed ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !o.passed;
  }
  std::printf("%d/10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}

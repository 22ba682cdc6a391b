#include "rmtac/identities.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <type_traits>

#include "rmtac/orthogonal.hpp"
#include "rmtac/symcore.hpp"

namespace rmtac {

namespace {

template <class C>
C vandermonde_with_zero(std::span<const C> w, std::size_t j) {
  std::vector<C> v(w.begin(), w.end());
  v[j] = C(0);
  return vandermonde(std::span<const C>(v));
}

template <class C>
C product_of(std::span<const C> w) {
  C p(1);
  for (const C& x : w) p *= x;
  return p;
}

template <class C>
Residual make_residual(const C& lhs, const C& rhs, double scale) {
  return {magnitude(C(lhs - rhs)), scale};
}

// Sum over ordered splits C | D of [n] with the common (-1)^{S(C,D)} Delta(C) Delta(D) part;
// `term` supplies the rest. Returns the sum and accumulates the term scale.
template <class C, class Term>
C signed_subset_sum(std::span<const C> w, bool even_c_only, double& scale, Term&& term) {
  const std::size_t n = w.size();
  C total(0);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<int> cs, ds;
    for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1U ? cs : ds).push_back(static_cast<int>(i));
    if (even_c_only && cs.size() % 2 != 0) continue;
    const SubsetStats<C> st = subset_stats<C>(cs, ds, w);
    C t = st.Delta_A * st.Delta_B * term(cs, ds);
    if (st.S % 2 != 0) t = -t;
    scale += magnitude(t);
    total += t;
  }
  return total;
}

template <class C>
C fn_sum(std::span<const C> w, const C& x, int r, double& scale) {
  require(!w.empty(), "F_n needs at least one shift");
  const long long n = static_cast<long long>(w.size());
  const C x2 = x * x;
  return signed_subset_sum(w, false, scale, [&](const std::vector<int>& cs, const std::vector<int>& ds) {
    C t(1);
    for (int a : cs) t *= ipow(w[static_cast<std::size_t>(a)], r);
    for (int a : cs)
      for (int b : ds) t *= x2 - w[static_cast<std::size_t>(a)] * w[static_cast<std::size_t>(b)];
    const long long d = static_cast<long long>(ds.size());
    return t * ipow(x, d * d + (r - n) * d);
  });
}

}  // namespace

double Residual::relative() const { return value / std::max(scale, 1.0); }

template <class C>
Residual identity1_residual(std::span<const C> w) {
  require(!w.empty(), "identity 1 needs at least one shift");
  double scale = 0.0;
  C lhs(0);
  for (std::size_t j = 0; j < w.size(); ++j) {
    C t = vandermonde_with_zero(w, j);
    for (const C& wm : w) t *= C(1) - w[j] * wm;
    scale += magnitude(t);
    lhs += t;
  }
  const C e = product_of(w);
  const C rhs = (C(1) - e * e) * vandermonde(w);
  return make_residual(lhs, rhs, scale + magnitude(rhs));
}

template <class C>
Residual lemma1_residual(std::span<const C> coeffs, std::span<const C> w) {
  const std::size_t n = w.size();
  require(n >= 1, "lemma 1 needs at least one shift");
  require(coeffs.size() == n + 1, "f must have order equal to the number of shifts");
  auto f = [&](const C& x) {
    C v(0);
    for (std::size_t i = coeffs.size(); i-- > 0;) v = v * x + coeffs[i];
    return v;
  };
  std::vector<C> m(n * n);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    m[i * n] = f(w[i]);
    for (std::size_t c = 1; c < n; ++c) m[i * n + c] = ipow(w[i], static_cast<long long>(c));
    scale += magnitude(C(vandermonde_with_zero(w, i) * f(w[i])));
  }
  const C lhs = determinant(std::move(m), n);
  const C sign = (n % 2 == 1) ? C(1) : C(-1);
  const C rhs = (coeffs[0] + sign * coeffs[n] * product_of(w)) * vandermonde(w);
  return make_residual(lhs, rhs, scale + magnitude(rhs));
}

template <class C>
Residual identity2_residual(std::span<const C> w) {
  require(w.size() >= 2, "identity 2 needs at least two shifts");
  const long long r = static_cast<long long>(w.size()) - 1;
  double scale = 0.0;
  const C total = signed_subset_sum(w, false, scale, [&](const std::vector<int>& cs, const std::vector<int>& ds) {
    C t(1);
    for (int a : cs) t *= ipow(w[static_cast<std::size_t>(a)], r);
    for (int a : cs)
      for (int b : ds) t *= C(1) - w[static_cast<std::size_t>(a)] * w[static_cast<std::size_t>(b)];
    return t;
  });
  return {magnitude(total), scale};
}

template <class C>
Residual fn_residual(std::span<const C> w, const C& x, int r) {
  double scale = 0.0;
  const C total = fn_sum(w, x, r, scale);
  return {magnitude(total), scale};
}

template <class C>
C fn_eval(std::span<const C> w, const C& x, int r) {
  double scale = 0.0;
  return fn_sum(w, x, r, scale);
}

template <class C>
Residual identity3_residual(std::span<const C> w, const C& x, Identity3Exponent exponent) {
  require(w.size() >= 2, "identity 3 needs at least two shifts");
  const long long r = static_cast<long long>(w.size()) - 2;
  const long long sign = exponent == Identity3Exponent::Printed ? -2 : 2;
  const C x2 = x * x;
  double scale = 0.0;
  const C total = signed_subset_sum(w, true, scale, [&](const std::vector<int>& cs, const std::vector<int>& ds) {
    C t(1);
    for (int a : cs) t *= ipow(w[static_cast<std::size_t>(a)], r);
    for (int a : cs)
      for (int b : ds) t *= x2 - w[static_cast<std::size_t>(a)] * w[static_cast<std::size_t>(b)];
    const long long d = static_cast<long long>(ds.size());
    return t * ipow(x, d * d + sign * d + 1);
  });
  return {magnitude(total), scale};
}

template <class C>
Residual identity4_residual(std::span<const C> w) {
  require(!w.empty(), "identity 4 needs at least one shift");
  double scale = 0.0;
  C lhs(0);
  for (std::size_t j = 0; j < w.size(); ++j) {
    C t = w[j] * w[j] * vandermonde_with_zero(w, j);
    for (std::size_t m = 0; m < w.size(); ++m)
      if (m != j) t *= C(1) - w[m] * w[j];
    scale += magnitude(t);
    lhs += t;
  }
  const C e = product_of(w);
  const C rhs = (w.size() % 2 == 1 ? e * e : e * e - e) * vandermonde(w);
  return make_residual(lhs, rhs, scale + magnitude(rhs));
}

template <class C>
std::vector<C> symmb_coeff_transform(std::span<const C> b, const C& wj) {
  require(b.size() >= 2, "g must have order at least 1");
  const std::size_t n = b.size() - 1;
  std::vector<C> a(n);
  a[0] = b[0];
  for (std::size_t i = 1; i < n; ++i) a[i] = b[i] + wj * a[i - 1];
  double scale = 0.0;
  for (const C& x : b) scale += magnitude(x);
  scale *= std::pow(std::max(1.0, magnitude(wj)), static_cast<double>(n));
  constexpr double tol = std::is_same_v<C, Cd> ? 1e-9 : 1e-25;
  if (magnitude(C(b[n] + wj * a[n - 1])) > tol * std::max(scale, 1.0))
    throw RouteError(ErrorKind::Inconsistent, "g is not divisible by (1 - w_j w)");
  return a;
}

template <class C>
C symmb_evaluate(std::span<const C> b, const C& wj) {
  require(b.size() >= 2, "g must have order at least 1");
  const long long n = static_cast<long long>(b.size()) - 1;
  const long long forward_top = (n % 2 == 1) ? (n - 1) / 2 : n / 2;
  C total(0);
  for (long long i = 0; i <= forward_top; ++i)
    for (long long q = 0; q <= i; ++q) total += ipow(wj, 2 * i - q) * b[static_cast<std::size_t>(q)];
  for (long long i = forward_top + 1; i <= n - 1; ++i)
    for (long long q = 0; q <= n - i - 1; ++q) total -= ipow(wj, 2 * i - n + q) * b[static_cast<std::size_t>(n - q)];
  return total;
}

template <class C>
std::vector<C> product_coefficients(std::span<const C> w) {
  std::vector<C> b(w.size() + 1, C(0));
  b[0] = C(1);
  for (std::size_t m = 0; m < w.size(); ++m)
    for (std::size_t i = m + 1; i >= 1; --i) b[i] -= w[m] * b[i - 1];
  return b;
}

double identity_suite_tolerance(unsigned digits) {
  return digits == 0 ? 1e-10 : std::pow(10.0, -static_cast<double>(digits) + 10.0);
}

namespace {

std::vector<Cd> random_shifts(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::vector<Cd> w;
  while (static_cast<int>(w.size()) < n) {
    const Cd z(u(rng), u(rng));
    if (std::abs(z) > 1.5) continue;
    bool ok = true;
    for (const Cd& p : w) ok = ok && std::abs(p - z) >= 1e-3;
    if (ok) w.push_back(z);
  }
  return w;
}

Cd random_annulus(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> radius(0.5, 1.5);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.141592653589793);
  return std::polar(radius(rng), angle(rng));
}

template <class C>
void run_trials(const IdentitySuiteConfig& cfg, IdentitySuiteReport& report) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  auto note = [&](const std::string& name, const Residual& r) {
    double& slot = report.max_residual[name];
    slot = std::max(slot, r.relative());
  };
  for (unsigned t = 0; t < cfg.trials; ++t) {
    const int n = 1 + static_cast<int>(t % static_cast<unsigned>(cfg.max_n));
    const int n2 = std::max(n, 2);
    const std::vector<Cd> wd = random_shifts(rng, n);
    const std::vector<Cd> wd2 = n2 == n ? wd : random_shifts(rng, n2);
    const std::vector<C> w = from_cd<C>(std::span<const Cd>(wd));
    const std::vector<C> w2 = from_cd<C>(std::span<const Cd>(wd2));
    const std::span<const C> ws(w), ws2(w2);

    note("identity1", identity1_residual<C>(ws));

    std::vector<C> c(static_cast<std::size_t>(n) + 1);
    for (C& v : c) v = from_cd<C>(Cd(coef(rng), coef(rng)));
    note("lemma1", lemma1_residual<C>(c, ws));

    note("identity2", identity2_residual<C>(ws2));

    const C x = from_cd<C>(random_annulus(rng));
    const Residual printed = identity3_residual<C>(ws2, x, Identity3Exponent::Printed);
    const Residual prose = identity3_residual<C>(ws2, x, Identity3Exponent::Prose);
    report.identity3_printed_max = std::max(report.identity3_printed_max, printed.relative());
    report.identity3_prose_max = std::max(report.identity3_prose_max, prose.relative());

    note("identity4", identity4_residual<C>(ws));

    const int r = n2 - 1;
    note("fn_zero", fn_residual<C>(ws2, C(0), r));
    for (std::size_t a = 0; a < w2.size(); ++a)
      for (std::size_t b = 0; b < w2.size(); ++b) {
        if (a == b) continue;
        const C root = sqrt(C(w2[a] * w2[b]));
        note("fn_witness", fn_residual<C>(ws2, root, r));
        note("fn_witness", fn_residual<C>(ws2, C(-root), r));
      }
    for (int i = 0; i < cfg.random_x_per_trial; ++i)
      note("fn_random", fn_residual<C>(ws2, from_cd<C>(random_annulus(rng)), r));

    const std::vector<C> b = product_coefficients<C>(ws);
    for (std::size_t j = 0; j < w.size(); ++j) {
      C expect(1);
      for (std::size_t m = 0; m < w.size(); ++m)
        if (m != j) expect *= C(1) - w[m] * w[j];
      const std::vector<C> a = symmb_coeff_transform<C>(b, w[j]);
      C via_a(0);
      for (std::size_t i = a.size(); i-- > 0;) via_a = via_a * w[j] + a[i];
      double scale = magnitude(expect);
      for (const C& v : b) scale += magnitude(v);
      note("symmb", Residual{magnitude(C(via_a - expect)), scale});
      note("symmb", Residual{magnitude(C(symmb_evaluate<C>(b, w[j]) - expect)), scale});
    }
  }
}

}  // namespace

IdentitySuiteReport run_identity_suite(const IdentitySuiteConfig& cfg) {
  require(cfg.trials >= 1, "the identity suite needs at least one trial");
  require(cfg.max_n >= 2, "the identity suite needs max_n >= 2");
  IdentitySuiteReport report;
  report.tolerance = identity_suite_tolerance(cfg.digits);
  if (cfg.digits == 0) {
    run_trials<Cd>(cfg, report);
  } else {
    ExtendedPrecisionScope scope(cfg.digits);
    run_trials<MpComplex>(cfg, report);
  }
  const bool printed_wins = report.identity3_printed_max <= report.identity3_prose_max;
  report.identity3_convention = printed_wins ? "printed" : "prose";
  report.max_residual["identity3"] = std::min(report.identity3_printed_max, report.identity3_prose_max);
  report.passed = true;
  for (const auto& [name, value] : report.max_residual) report.passed = report.passed && value <= report.tolerance;
  return report;
}

#define RMTAC_INSTANTIATE(C)                                                                \
  template Residual identity1_residual<C>(std::span<const C>);                             \
  template Residual lemma1_residual<C>(std::span<const C>, std::span<const C>);            \
  template Residual identity2_residual<C>(std::span<const C>);                             \
  template C fn_eval<C>(std::span<const C>, const C&, int);                                \
  template Residual fn_residual<C>(std::span<const C>, const C&, int);                     \
  template Residual identity3_residual<C>(std::span<const C>, const C&, Identity3Exponent); \
  template Residual identity4_residual<C>(std::span<const C>);                             \
  template std::vector<C> symmb_coeff_transform<C>(std::span<const C>, const C&);          \
  template C symmb_evaluate<C>(std::span<const C>, const C&);                              \
  template std::vector<C> product_coefficients<C>(std::span<const C>);

RMTAC_INSTANTIATE(Cd)
RMTAC_INSTANTIATE(MpComplex)
#undef RMTAC_INSTANTIATE

}  // namespace rmtac

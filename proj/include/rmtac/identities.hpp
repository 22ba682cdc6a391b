#pragma once

// Both sides of the determinant and subset-sum identities behind the
// symplectic and orthogonal closed forms. Each residual carries the sum of
// the magnitudes of the terms that produced it, so callers can judge it
// against the size of what cancelled.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rmtac/numeric.hpp"

namespace rmtac {

struct Residual {
  double value = 0.0;  // |LHS - RHS|, or |sum| for the vanishing sums
  double scale = 0.0;  // sum of |terms| on both sides

  /// value / max(scale, 1)
  double relative() const;
};

/// sum_j Delta(w)|_{w_j=0} prod_m (1 - w_j w_m) against (1 - w_1^2..w_n^2) Delta(w).
template <class C>
Residual identity1_residual(std::span<const C> w);

/// det[f(w_i), w_i, .., w_i^{n-1}] against (c_0 + (-1)^{n-1} c_n w_1..w_n) Delta(w)
/// for f of order n = w.size() given by c_0..c_n.
template <class C>
Residual lemma1_residual(std::span<const C> coeffs, std::span<const C> w);

/// The signed (C, D) subset sum with prod_C w^{n-1} and prod (1 - w_a w_b); vanishes.
template <class C>
Residual identity2_residual(std::span<const C> w);

/// F_n(w; x; r): the subset sum with prod (x^2 - w_a w_b) and x^{|D|^2 + (r-n)|D|}.
template <class C>
C fn_eval(std::span<const C> w, const C& x, int r);

/// |F_n(w; x; r)| with its term scale.
template <class C>
Residual fn_residual(std::span<const C> w, const C& x, int r);

/// Exponent on x in the |C|-even sum at r = n-2.
enum class Identity3Exponent {
  Printed,  // |D|^2 - 2|D| + 1
  Prose,    // |D|^2 + 2|D| + 1
};

template <class C>
Residual identity3_residual(std::span<const C> w, const C& x, Identity3Exponent exponent = Identity3Exponent::Printed);

/// sum_j w_j^2 Delta(w)|_{w_j=0} prod_{m != j} (1 - w_m w_j) against
/// e_n^2 Delta (n odd) or (e_n^2 - e_n) Delta (n even).
template <class C>
Residual identity4_residual(std::span<const C> w);

/// Solves g(w) = f(w) (1 - w_j w) for the coefficients a_0..a_{n-1} of f given
/// b_0..b_n of g. Throws Inconsistent when b_n != -w_j a_{n-1}.
template <class C>
std::vector<C> symmb_coeff_transform(std::span<const C> b, const C& wj);

/// f(w_j) = sum_i a_i w_j^i written directly in terms of b through the
/// split double sum over i <= n/2 and i > n/2.
template <class C>
C symmb_evaluate(std::span<const C> b, const C& wj);

/// Coefficients b_0..b_n of prod_m (1 - w_m w).
template <class C>
std::vector<C> product_coefficients(std::span<const C> w);

struct IdentitySuiteConfig {
  unsigned trials = 500;
  std::uint64_t seed = 1;
  int max_n = 6;
  unsigned digits = 0;        // 0: machine double, otherwise extended (>= 30)
  int random_x_per_trial = 20;
};

struct IdentitySuiteReport {
  std::map<std::string, double> max_residual;  // relative residual per identity
  double tolerance = 0.0;
  bool passed = false;
  std::string identity3_convention;  // the exponent convention that vanishes
  double identity3_printed_max = 0.0;
  double identity3_prose_max = 0.0;
};

/// Tolerance used by the suite: 1e-10 in double, 10^{-(digits-10)} extended.
double identity_suite_tolerance(unsigned digits);

/// Runs every identity on random shifts in the disk |w| <= 1.5 with pairwise
/// separation at least 1e-3, for n = 1..max_n in rotation.
IdentitySuiteReport run_identity_suite(const IdentitySuiteConfig& cfg);

}  // namespace rmtac

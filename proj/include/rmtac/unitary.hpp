#pragma once

// I_{m,n}(U(N); w): the average of prod_{r<=m} Lambda_{M^dagger}(w_r) times
// prod_{j>m} det(w_j - M) over Haar U(N), by every available route.

#include <span>
#include <vector>

#include "rmtac/contour.hpp"
#include "rmtac/haar.hpp"
#include "rmtac/numeric.hpp"

namespace rmtac {

struct UnitaryQuery {
  int N = 1;
  int m = 0;
  std::vector<Cd> shifts;  // w_1..w_n

  int n() const { return static_cast<int>(shifts.size()); }
  void validate() const;
};

/// Rectangular Schur polynomial S_{(N^{n-m}, 0^m)}(w). Total and confluent-safe.
template <class C>
C autocorr_schur(int N, int m, std::span<const C> w);

/// det[w_i^{e_j}] / Delta(w) with exponents {0..m-1, N+m..N+n-1}. Throws NearConfluent.
template <class C>
C autocorr_det(int N, int m, std::span<const C> w);

/// sum over split permutations of (prod_right w)^N / prod (1 - w_l / w_q).
/// Throws PoleHit on a zero shift or a vanishing denominator.
template <class C>
C autocorr_comb(int N, int m, std::span<const C> w);

/// Contour integral in the variables alpha with w_j = e^{-alpha_j}.
Cd autocorr_contour(int N, int m, std::span<const Cd> alphas, const ContourConfig& cfg);

/// Weyl-measure integrand of I_{m,n} as a function of the eigenangles.
AngleIntegrand unitary_integrand(int m, std::vector<Cd> w);

Cd autocorr_quadrature(int N, int m, std::span<const Cd> w, const QuadratureConfig& cfg);

MonteCarloEstimate autocorr_montecarlo(int N, int m, std::span<const Cd> w, std::uint64_t seed, std::size_t count);

/// Average of Lambda(s_1^{-1})..Lambda(s_m^{-1}) Lambda^dagger(s_{m+1})..Lambda^dagger(s_n),
/// rewritten as prod_{i<=m} s_i^{-N} I_{n-m,n}(s_{m+1..n}; s_{1..m}).
template <class C>
C shifted_product_average(int N, int m, std::span<const C> s);

/// Independent evaluation of the average of Lambda(e^{-a_1})..Lambda(e^{-a_k})
/// Lambda^dagger(e^{a_{k+1}})..Lambda^dagger(e^{a_{2k}}) as an exponential sum over
/// split permutations. Requires an even number of shifts.
Cd exponential_comparison_sum(int N, std::span<const Cd> alphas);

/// Integrand of the same average, for the Weyl oracle.
AngleIntegrand exponential_comparison_integrand(std::vector<Cd> alphas);

}  // namespace rmtac

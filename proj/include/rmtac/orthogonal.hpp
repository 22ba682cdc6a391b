#pragma once

// Autocorrelations of characteristic polynomials over SO(2N), the coset
// O-(2N) and the full group O(2N).
//   I(SO(2N); w)  = average of prod_j Lambda_M(w_j) over SO(2N)
//   I(O-(2N); w)  = (-1)^k times the average of prod_j Lambda_M(w_j) over O-(2N)

#include <cstdint>
#include <span>
#include <vector>

#include "rmtac/contour.hpp"
#include "rmtac/haar.hpp"
#include "rmtac/numeric.hpp"

namespace rmtac {

/// Statistics of an ordered disjoint pair (A, B) of 0-based indices into w.
template <class C>
struct SubsetStats {
  C wA;              // prod_{a in A} w_a
  long long S = 0;   // |A||B| + |A|(|A|+1)/2 + W
  long long W = 0;   // #{(a, b) in A x B : a > b}
  C E;               // prod_{a in A, b in B} (1 - w_a w_b)
  C D;               // prod_{a in A, b in B} (w_b - w_a)
  C Delta_A;         // prod_{i<j in A} (w_j - w_i)
  C Delta_B;
  C calE_A;          // prod_{i<j in A} (1 - w_i w_j)
};

template <class C>
SubsetStats<C> subset_stats(std::span<const int> A, std::span<const int> B, std::span<const C> w);

/// Sum of det[w_p^{i_q}] over the paired SO index sets, over Delta(w). Throws NearConfluent.
template <class C>
C so_autocorr_det(int N, std::span<const C> w);

/// Sum of S_lambda(w) over lambda whose conjugate is all odd with exactly 2N
/// parts <= k, or all even with at most 2N parts <= k. Total.
template <class C>
C so_autocorr_schur(int N, std::span<const C> w);

/// prod w_j^N sum_eps prod w_j^{N eps_j} prod_{i<j} (1 - w_i^{-eps_i} w_j^{-eps_j})^{-1}.
template <class C>
C so_autocorr_eps(int N, std::span<const C> w);

/// prod (w_m^2 - 1) times the symplectic determinant sum at size N-1.
template <class C>
C ominus_autocorr_det(int N, std::span<const C> w);

/// prod (w_m^2 - 1) times the even-partition Schur sum at size N-1. Total.
template <class C>
C ominus_autocorr_schur(int N, std::span<const C> w);

/// Same sign sum as SO with the extra weight prod eps_j.
template <class C>
C ominus_autocorr_eps(int N, std::span<const C> w);

enum class PartialVariant { M, E, R, L };

struct PartialSum {
  Cd value;        // index-sum side
  Cd closed_form;  // parity-restricted subset sum side
  double residual = 0.0;
};

/// Index-sum and closed-form sides of the partial sums I^M, I^E (even shift
/// count) and I^R, I^L (odd shift count) over {0..n_max}.
template <class C>
PartialSum so_partial_sums(PartialVariant variant, int n_max, std::span<const C> w);

/// Contour integral with w_j = e^{+alpha_j}. The strict pair product is used
/// for both families; O- takes the signed kernel.
Cd orthogonal_contour(Family family, int N, std::span<const Cd> alphas, const ContourConfig& cfg);

Cd orthogonal_quadrature(Family family, int N, std::span<const Cd> w, const QuadratureConfig& cfg);

MonteCarloEstimate orthogonal_montecarlo(Family family, int N, std::span<const Cd> w, std::uint64_t seed,
                                         std::size_t count);

/// Average over the full O(2N): (SO + (-1)^k I(O-))/2, which undoes the
/// definitional sign of the O- value. With `with_ominus_sign` set the O- value
/// enters as is: (SO + I(O-))/2.
template <class C>
C full_o2n_average(int N, std::span<const C> w, bool with_ominus_sign);

/// Monte Carlo over Haar O(2N): a fair coin picks the component of each sample.
MonteCarloEstimate full_o2n_montecarlo(int N, std::span<const Cd> w, std::uint64_t seed, std::size_t count);

/// Determinant of the N x N matrix with +1 on and above the diagonal and -1 below.
std::int64_t pairing_determinant(int N);

}  // namespace rmtac

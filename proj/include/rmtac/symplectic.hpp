#pragma once

// I(USp(2N); w_1..w_k) = average of prod_j Lambda_M(w_j) over Haar USp(2N).

#include <span>
#include <vector>

#include "rmtac/contour.hpp"
#include "rmtac/haar.hpp"
#include "rmtac/numeric.hpp"

namespace rmtac {

/// Sum of det[w_p^{i_q}] over i_j = j-1 (mod 2) in {0..2N+k-1}, over Delta(w).
/// N = 0 is accepted (value 1). Throws NearConfluent.
template <class C>
C sp_autocorr_det(int N, std::span<const C> w);

/// Sum of S_lambda(w) over even partitions with parts <= 2N. Total.
template <class C>
C sp_autocorr_schur(int N, std::span<const C> w);

/// prod w_j^N sum_eps prod w_j^{eps_j N} prod_{i<=j} (1 - w_i^{-eps_i} w_j^{-eps_j})^{-1}.
/// Throws PoleHit on a zero shift or a vanishing denominator.
template <class C>
C sp_autocorr_eps(int N, std::span<const C> w);

/// Contour integral with w_j = e^{-alpha_j}.
Cd sp_autocorr_contour(int N, std::span<const Cd> alphas, const ContourConfig& cfg);

Cd sp_autocorr_quadrature(int N, std::span<const Cd> w, const QuadratureConfig& cfg);

MonteCarloEstimate sp_autocorr_montecarlo(int N, std::span<const Cd> w, std::uint64_t seed, std::size_t count);

/// I(USp(2N), e^{b_1/N}, ..) divided by its large-N form
/// N^{(k^2+k)/2} e^{sum b} sum_eps prod e^{eps_j b_j} prod_{i<=j} (eps_i b_i + eps_j b_j)^{-1}.
Cd sp_large_n_ratio(std::span<const Cd> b, long long N);

}  // namespace rmtac

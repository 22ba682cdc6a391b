#pragma once

// Partitions, split permutations, Vandermonde products and Schur polynomials.

#include <cstdint>
#include <span>
#include <vector>

#include "rmtac/numeric.hpp"

namespace rmtac {

/// Weakly decreasing nonnegative parts. The length is explicit: trailing zeros
/// are kept because a Schur polynomial pairs one part with each variable.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  std::size_t length() const { return parts_.size(); }
  int size() const;  // |mu|, the sum of the parts
  int nonzero_parts() const;
  int operator[](std::size_t i) const { return parts_[i]; }

  /// Same partition padded with zeros (or trimmed of zeros) to `len` parts.
  Partition with_length(std::size_t len) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

/// A permutation of {0..n-1} increasing on its first `left.size()` slots and on
/// the remaining ones. `sign` is the parity of the one-line word left||right.
struct SplitPermutation {
  std::vector<int> left;
  std::vector<int> right;
  int sign = 1;
};

/// Pairwise-separation threshold below which the bialternant quotient is refused.
inline constexpr double kSeparationThreshold = 1e-6;

template <class C>
C vandermonde(std::span<const C> points);

/// True when some pair of points is closer than kSeparationThreshold * max(max|x|, 1).
template <class C>
bool near_confluent(std::span<const C> points);

/// Ratio of the alternant det[x_i^{mu_j+n-j}] to det[x_i^{n-j}]. Throws
/// NearConfluent when the points are too close for the quotient to be trusted.
template <class C>
C schur_bialternant(const Partition& mu, std::span<const C> points);

/// Jacobi-Trudi determinant det[h_{mu_i-i+j}] with the complete homogeneous
/// polynomials built by the generating-function recurrence. Defined everywhere,
/// including coincident points.
template <class C>
C schur_stable(const Partition& mu, std::span<const C> points);

/// h_0..h_degree of the given points.
template <class C>
std::vector<C> complete_homogeneous(std::span<const C> points, int degree);

std::vector<SplitPermutation> split_permutations(int n, int m);

/// All (lambda_1..lambda_k) with max_part >= lambda_1 >= ... >= lambda_k >= 0 and
/// every part even.
std::vector<Partition> even_partitions(int k, int max_part);

/// All partitions with at most `max_length` parts, each part <= `max_part`,
/// returned with explicit length `max_length`.
std::vector<Partition> bounded_partitions(int max_length, int max_part);

Partition conjugate(const Partition& lambda);

/// Strictly increasing index vectors over {0..top} made of an optional leading
/// 0, `pairs` runs of two consecutive indices, and an optional trailing `top`.
std::vector<std::vector<int>> paired_index_sets(bool leading_zero, int pairs, bool trailing_top, int top);

/// Strictly increasing index vectors over {0..2N+k-1} obeying the adjacency
/// pairing conditions of the even-orthogonal determinant sum.
std::vector<std::vector<int>> so_index_sets(int k, int N);

/// Strictly increasing index vectors over {0..2N+k-1} with i_j = j-1 (mod 2);
/// the symplectic determinant sum. N = 0 is allowed.
std::vector<std::vector<int>> sp_index_sets(int k, int N);

/// sum over index vectors of det[x_p^{i_q}] / Vandermonde(x).
template <class C>
C alternant_sum(const std::vector<std::vector<int>>& index_sets, std::span<const C> points);

std::uint64_t binomial(int n, int k);

}  // namespace rmtac

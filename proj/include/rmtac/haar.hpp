#pragma once

// Weyl eigenvalue measures of U(N), USp(2N), SO(2N) and O-(2N): densities,
// tensor trapezoid quadrature, characteristic polynomials and Haar sampling.

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "rmtac/numeric.hpp"

namespace rmtac {

enum class Family { Unitary, Symplectic, SpecialOrthogonalEven, OrthogonalMinus };

std::string_view family_name(Family f);

struct GroupSpec {
  Family family = Family::Unitary;
  int N = 1;  // matrix dimension is N for Unitary, 2N otherwise

  GroupSpec() = default;
  GroupSpec(Family f, int n);

  /// Number of free eigenangles: N, except N-1 for O-(2N).
  int free_angles() const;
  int matrix_dim() const { return family == Family::Unitary ? N : 2 * N; }
};

using Eigenangles = std::vector<double>;
using AngleIntegrand = std::function<Cd(std::span<const double>)>;

/// Normalized Weyl density on [0, 2pi)^free_angles.
///   U(N):    |Delta(e^{i theta})|^2 / (N! (2pi)^N)
///   USp(2N): 2^{N^2-N} / (pi^N N!) prod_{j<k} (cos t_j - cos t_k)^2 prod sin^2 t_j
///   SO(2N):  2^{N^2-3N+1} / (pi^N N!) prod_{j<k} (cos t_j - cos t_k)^2
///   O-(2N):  the USp(2N-2) density on the N-1 free angles
double weyl_density(const GroupSpec& g, std::span<const double> angles);

/// det(I - M s) from the eigenangles (including the forced +-1 of O-(2N)).
Cd char_poly(const GroupSpec& g, std::span<const double> angles, Cd s);

/// det(I - M^dagger s); differs from char_poly only for the unitary family.
Cd char_poly_adjoint(const GroupSpec& g, std::span<const double> angles, Cd s);

/// theta -> prod_j Lambda_M(w_j), the integrand of the symplectic and
/// orthogonal autocorrelation averages.
AngleIntegrand char_poly_product(const GroupSpec& g, std::vector<Cd> shifts);

/// |Lambda(s) - RHS(s)| for the family's functional equation.
double functional_equation_residual(const GroupSpec& g, std::span<const double> angles, Cd s);

/// |Z(s) - (+-) conj(Z(1/conj s))| with Z(s) = s^{-N} Lambda(s) (USp, SO) or
/// -s^{-N} Lambda(s) (O-). The unitary family has no Z normalization here and
/// falls back to functional_equation_residual.
double z_functional_equation_residual(const GroupSpec& g, std::span<const double> angles, Cd s);

struct QuadratureConfig {
  int nodes_per_dim = 0;  // 0 selects default_nodes(group, integrand_degree)
  int integrand_degree = 4;
  int max_free_angles = 3;
  unsigned threads = 1;
};

/// 4 (2N + degree): exact for trigonometric-polynomial integrands whose degree
/// in each e^{i theta} is at most `integrand_degree`.
int default_nodes(const GroupSpec& g, int integrand_degree);

/// Tensor periodic trapezoid of integrand * density over the angle cube; nodes
/// sit half a step off the origin. Throws DimensionCap above the free-angle cap.
Cd quadrature_average(const GroupSpec& g, const AngleIntegrand& integrand, const QuadratureConfig& cfg);

/// Stream of Haar eigenangle vectors built from Gram-Schmidt orthonormalized
/// Gaussian matrices (quaternionic structure for USp, column flip for SO/O-).
class EigenangleSampler {
 public:
  EigenangleSampler(const GroupSpec& g, std::uint64_t seed);

  Eigenangles next();
  const GroupSpec& group() const { return group_; }

 private:
  GroupSpec group_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> gauss_{0.0, 1.0};
};

std::vector<Eigenangles> sample_eigenangles(const GroupSpec& g, std::uint64_t seed, std::size_t count);

struct MonteCarloEstimate {
  Cd mean;
  double std_error = 0.0;
};

MonteCarloEstimate monte_carlo_average(const GroupSpec& g, const AngleIntegrand& integrand, std::uint64_t seed,
                                       std::size_t count);

}  // namespace rmtac

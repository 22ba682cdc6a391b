#pragma once

// Tensor periodic-trapezoid quadrature over products of circles, and both
// sides of the two sum-to-integral lemmas.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "rmtac/numeric.hpp"

namespace rmtac {

struct ContourConfig {
  int nodes_per_dim = 128;
  std::optional<double> radius;  // unset: auto rule from the enclosed points
  std::optional<Cd> center;      // unset: centroid (unitary) or 0 (symmetric)
  int dim_cap = 3;
  bool golden_rotation = true;
  unsigned threads = 1;

  void validate() const;
};

struct Circle {
  Cd center;
  double radius = 1.0;
};

/// Radius 2 max|p - c| + 0.1 around c, where c is the centroid of `enclosed`
/// or the origin when `about_origin` is set. Explicit config values win.
Circle resolve_circle(const ContourConfig& cfg, std::span<const Cd> enclosed, bool about_origin);

using ContourIntegrand = std::function<Cd(std::span<const Cd>)>;

/// (2 pi i)^{-dim} times the dim-fold integral over `circle`, each variable on
/// the same circle. Node i of dimension j sits at angle 2 pi (i + r_j) / nodes
/// with r_j = frac(j * 0.618...) under golden rotation.
Cd circular_integral(int dim, const ContourIntegrand& integrand, const Circle& circle, const ContourConfig& cfg);

/// Throws ContourTooTight when two points of the circle can differ (or sum) by
/// pi or more, which brings the 2 pi i periodic poles of an exponential kernel
/// too close to the contour.
void require_exponential_clearance(const Circle& circle);

/// Convenience overload taking the circle from cfg (radius must be set).
Cd circular_integral(int dim, const ContourIntegrand& integrand, const ContourConfig& cfg);

/// Throws InvalidArgument unless x f(x) -> 1 as x -> 0.
void require_unit_residue(const std::function<Cd(Cd)>& f);

/// G(a; b) = F(a; b) prod_{i,j} f(a_i - b_j).
struct SplitKernel {
  std::function<Cd(std::span<const Cd>, std::span<const Cd>)> F;
  std::function<Cd(Cd)> f;

  Cd operator()(std::span<const Cd> a, std::span<const Cd> b) const;
};

/// G(a) = F(a) prod f(a_i + a_j) over i <= j (inclusive) or i < j.
struct ReflectionKernel {
  std::function<Cd(std::span<const Cd>)> F;
  std::function<Cd(Cd)> f;
  bool inclusive = true;

  Cd operator()(std::span<const Cd> a) const;
};

enum class SignVariant { Plain, Signed };

struct LemmaCheck {
  Cd lhs;
  Cd rhs;
  double residual = 0.0;
};

/// sum over split permutations of G(u_left; u_right).
Cd split_sum(const SplitKernel& G, std::span<const Cd> u, int m);

/// (-1)^{n(n-1)/2} / ((2 pi i)^n m! (n-m)!) times the integral of
/// G(z_1..z_m; z_{m+1}..z_n) Delta(z)^2 / prod_{i,j} (z_i - u_j).
Cd split_integral(const SplitKernel& G, std::span<const Cd> u, int m, const ContourConfig& cfg);

LemmaCheck lemma_unitary_check(const SplitKernel& G, std::span<const Cd> u, int m, const ContourConfig& cfg);

/// sum over sign vectors of G(eps alpha), weighted by prod eps_j when Signed.
Cd reflection_sum(const ReflectionKernel& G, std::span<const Cd> alphas, SignVariant variant);

/// (-1)^{k(k-1)/2} 2^k / ((2 pi i)^k k!) times the integral of
/// G(z) Delta(z^2)^2 (prod z_j or prod alpha_j) / prod_{i,j} (z_i^2 - alpha_j^2).
Cd reflection_integral(const ReflectionKernel& G, std::span<const Cd> alphas, SignVariant variant,
                       const ContourConfig& cfg);

LemmaCheck lemma_sym_check(const ReflectionKernel& G, std::span<const Cd> alphas, SignVariant variant,
                           const ContourConfig& cfg);

}  // namespace rmtac

#pragma once

// Scalar plumbing shared by every evaluator: the two complex types the exact
// routes are instantiated for, integer powers, dense determinants and the
// extended-precision scope.

#include <complex>
#include <cstdint>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/complex_adaptor.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "rmtac/errors.hpp"

namespace rmtac {

namespace bmp = boost::multiprecision;

using Cd = std::complex<double>;
using MpReal = bmp::number<bmp::mpfr_float_backend<0>, bmp::et_off>;
using MpComplex = bmp::number<bmp::complex_adaptor<bmp::mpfr_float_backend<0>>, bmp::et_off>;

template <class C>
struct ScalarTraits;

template <>
struct ScalarTraits<Cd> {
  using Real = double;
};

template <>
struct ScalarTraits<MpComplex> {
  using Real = MpReal;
};

template <class C>
using RealOf = typename ScalarTraits<C>::Real;

inline double magnitude(const Cd& z) { return std::abs(z); }
inline double magnitude(const MpComplex& z) { return static_cast<double>(abs(z)); }

inline Cd to_cd(const Cd& z) { return z; }
inline Cd to_cd(const MpComplex& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

template <class C>
C from_cd(const Cd& z) {
  return C(RealOf<C>(z.real()), RealOf<C>(z.imag()));
}

template <class C>
std::vector<C> from_cd(std::span<const Cd> zs) {
  std::vector<C> out;
  out.reserve(zs.size());
  for (const Cd& z : zs) out.push_back(from_cd<C>(z));
  return out;
}

/// Decimal rendering with `digits` significant digits.
std::string to_decimal(const MpReal& x, unsigned digits);

/// base^e by repeated squaring; negative e inverts (0^negative throws PoleHit).
template <class C>
C ipow(C base, long long e) {
  if (e < 0) {
    if (base == C(0)) throw RouteError(ErrorKind::PoleHit, "zero raised to a negative power");
    base = C(1) / base;
    e = -e;
  }
  C result(1);
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

/// Determinant of an n x n row-major matrix by LU with partial pivoting.
template <class C>
C determinant(std::vector<C> a, std::size_t n);

/// Exact integer determinant (Bareiss fraction-free elimination).
std::int64_t integer_determinant(std::vector<std::int64_t> a, std::size_t n);

/// Fixed-order pairwise summation; result is independent of how `terms` was filled.
Cd pairwise_sum(std::span<const Cd> terms);

/// Sets the working precision of MpReal/MpComplex for its lifetime. The MPFR
/// default precision is process-global, so scopes are serialized.
class ExtendedPrecisionScope {
 public:
  explicit ExtendedPrecisionScope(unsigned digits);
  ~ExtendedPrecisionScope();
  ExtendedPrecisionScope(const ExtendedPrecisionScope&) = delete;
  ExtendedPrecisionScope& operator=(const ExtendedPrecisionScope&) = delete;

  unsigned digits() const { return digits_; }

 private:
  std::unique_lock<std::recursive_mutex> lock_;
  unsigned digits_;
  unsigned previous_;
};

struct PrecisionConfig {
  enum class Mode { MachineDouble, Extended };
  Mode mode = Mode::MachineDouble;
  unsigned digits = 0;  // meaningful when mode == Extended; must be >= 30
  double agreement_tol = 1e-9;

  static PrecisionConfig machine(double tol = 1e-9) { return {Mode::MachineDouble, 0, tol}; }
  static PrecisionConfig extended(unsigned digits, double tol);
};

}  // namespace rmtac

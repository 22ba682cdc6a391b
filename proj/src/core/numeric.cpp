#include "rmtac/numeric.hpp"

#include <sstream>

namespace rmtac {

std::string to_decimal(const MpReal& x, unsigned digits) {
  std::ostringstream os;
  os << std::setprecision(static_cast<int>(digits)) << std::scientific << x;
  return os.str();
}

template <class C>
C determinant(std::vector<C> a, std::size_t n) {
  using std::abs;
  if (n == 0) return C(1);
  C det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    RealOf<C> best = abs(a[col * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      RealOf<C> v = abs(a[r * n + col]);
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best == RealOf<C>(0)) return C(0);
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
      det = -det;
    }
    const C p = a[col * n + col];
    det *= p;
    for (std::size_t r = col + 1; r < n; ++r) {
      const C factor = a[r * n + col] / p;
      if (factor == C(0)) continue;
      for (std::size_t c = col + 1; c < n; ++c) a[r * n + c] -= factor * a[col * n + c];
    }
  }
  return det;
}

template Cd determinant<Cd>(std::vector<Cd>, std::size_t);
template MpComplex determinant<MpComplex>(std::vector<MpComplex>, std::size_t);

std::int64_t integer_determinant(std::vector<std::int64_t> a, std::size_t n) {
  if (n == 0) return 1;
  int sign = 1;
  std::int64_t prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row * n + k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a[k * n + c], a[swap_row * n + c]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        // Bareiss: the division is exact.
        a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
      }
    }
    prev = a[k * n + k];
  }
  return sign * a[(n - 1) * n + (n - 1)];
}

Cd pairwise_sum(std::span<const Cd> terms) {
  if (terms.empty()) return {0.0, 0.0};
  if (terms.size() <= 8) {
    Cd s{0.0, 0.0};
    for (const Cd& t : terms) s += t;
    return s;
  }
  const std::size_t half = terms.size() / 2;
  return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

namespace {
std::recursive_mutex& precision_mutex() {
  static std::recursive_mutex m;
  return m;
}
}  // namespace

ExtendedPrecisionScope::ExtendedPrecisionScope(unsigned digits)
    : lock_(precision_mutex()), digits_(digits), previous_(MpReal::default_precision()) {
  require(digits >= 30, "extended precision needs at least 30 digits");
  MpReal::default_precision(digits);
}

ExtendedPrecisionScope::~ExtendedPrecisionScope() { MpReal::default_precision(previous_); }

PrecisionConfig PrecisionConfig::extended(unsigned digits, double tol) {
  require(digits >= 30, "extended precision needs at least 30 digits");
  require(tol > 0.0, "agreement tolerance must be positive");
  return {Mode::Extended, digits, tol};
}

}  // namespace rmtac

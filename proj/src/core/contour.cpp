#include "rmtac/contour.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rmtac/parallel.hpp"
#include "rmtac/symcore.hpp"

namespace rmtac {

namespace {

constexpr double kGoldenFraction = 0.6180339887498949;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double parity_sign(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

std::vector<std::vector<int>> sign_vectors(std::size_t k) {
  std::vector<std::vector<int>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::vector<int> eps(k);
    for (std::size_t j = 0; j < k; ++j) eps[j] = ((mask >> j) & 1U) ? -1 : 1;
    out.push_back(std::move(eps));
  }
  return out;
}

}  // namespace

void ContourConfig::validate() const {
  require(nodes_per_dim >= 16, "contour needs at least 16 nodes per dimension");
  require(dim_cap >= 1 && dim_cap <= 4, "contour dimension cap must lie in [1, 4]");
  require(!radius || *radius > 0.0, "contour radius must be positive");
}

Circle resolve_circle(const ContourConfig& cfg, std::span<const Cd> enclosed, bool about_origin) {
  Circle c;
  if (cfg.center) {
    c.center = *cfg.center;
  } else if (!about_origin && !enclosed.empty()) {
    Cd sum{0.0, 0.0};
    for (const Cd& p : enclosed) sum += p;
    c.center = sum / static_cast<double>(enclosed.size());
  }
  if (cfg.radius) {
    c.radius = *cfg.radius;
  } else {
    double far = 0.0;
    for (const Cd& p : enclosed) far = std::max(far, std::abs(p - c.center));
    c.radius = 2.0 * far + 0.1;
  }
  return c;
}

void require_exponential_clearance(const Circle& circle) {
  if (2.0 * circle.radius >= std::numbers::pi)
    throw RouteError(ErrorKind::ContourTooTight,
                     "contour radius " + std::to_string(circle.radius) +
                         " cannot separate the shifts from the periodic poles of the kernel");
}

Cd circular_integral(int dim, const ContourIntegrand& integrand, const Circle& circle, const ContourConfig& cfg) {
  cfg.validate();
  require(dim >= 1, "contour dimension must be positive");
  if (dim > cfg.dim_cap)
    throw RouteError(ErrorKind::DimensionCap, "contour dimension " + std::to_string(dim) + " exceeds the cap of " +
                                                  std::to_string(cfg.dim_cap));
  const auto nodes = static_cast<std::size_t>(cfg.nodes_per_dim);
  const auto d = static_cast<std::size_t>(dim);

  // Per-dimension node positions and the dz / (2 pi i) = (z - c) dphi / (2 pi) weights.
  std::vector<std::vector<Cd>> z(d, std::vector<Cd>(nodes));
  for (std::size_t j = 0; j < d; ++j) {
    double shift = 0.0;
    if (cfg.golden_rotation) shift = std::fmod(static_cast<double>(j) * kGoldenFraction, 1.0);
    for (std::size_t i = 0; i < nodes; ++i) {
      const double phi = 2.0 * std::numbers::pi * (static_cast<double>(i) + shift) / static_cast<double>(nodes);
      z[j][i] = circle.center + std::polar(circle.radius, phi);
    }
  }

  std::size_t inner_count = 1;
  for (std::size_t j = 1; j < d; ++j) inner_count *= nodes;

  std::vector<Cd> partial(nodes);
  parallel_for(nodes, cfg.threads, [&](std::size_t outer) {
    std::vector<Cd> point(d);
    std::vector<Cd> row(inner_count);
    point[0] = z[0][outer];
    for (std::size_t inner = 0; inner < inner_count; ++inner) {
      std::size_t rest = inner;
      for (std::size_t j = d - 1; j >= 1; --j) {
        point[j] = z[j][rest % nodes];
        rest /= nodes;
      }
      Cd jac{1.0, 0.0};
      for (const Cd& p : point) jac *= p - circle.center;
      row[inner] = integrand(point) * jac;
    }
    partial[outer] = pairwise_sum(row);
  });
  return pairwise_sum(partial) / std::pow(static_cast<double>(nodes), dim);
}

Cd circular_integral(int dim, const ContourIntegrand& integrand, const ContourConfig& cfg) {
  require(cfg.radius.has_value(), "circular_integral needs an explicit radius");
  return circular_integral(dim, integrand, Circle{cfg.center.value_or(Cd{}), *cfg.radius}, cfg);
}

void require_unit_residue(const std::function<Cd(Cd)>& f) {
  for (const Cd x : {Cd(1e-5, 0.0), Cd(0.0, 1e-5), Cd(-1e-5, 0.0)}) {
    const Cd r = x * f(x);
    require(std::abs(r - 1.0) < 1e-3, "pole factor must have a simple pole of residue 1 at the origin");
  }
}

Cd SplitKernel::operator()(std::span<const Cd> a, std::span<const Cd> b) const {
  Cd v = F(a, b);
  for (const Cd& ai : a)
    for (const Cd& bj : b) v *= f(ai - bj);
  return v;
}

Cd ReflectionKernel::operator()(std::span<const Cd> a) const {
  Cd v = F(a);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = inclusive ? i : i + 1; j < a.size(); ++j) v *= f(a[i] + a[j]);
  return v;
}

Cd split_sum(const SplitKernel& G, std::span<const Cd> u, int m) {
  const int n = static_cast<int>(u.size());
  std::vector<Cd> terms;
  for (const SplitPermutation& sp : split_permutations(n, m)) {
    std::vector<Cd> a, b;
    for (int i : sp.left) a.push_back(u[static_cast<std::size_t>(i)]);
    for (int i : sp.right) b.push_back(u[static_cast<std::size_t>(i)]);
    terms.push_back(G(a, b));
  }
  return pairwise_sum(terms);
}

Cd split_integral(const SplitKernel& G, std::span<const Cd> u, int m, const ContourConfig& cfg) {
  const int n = static_cast<int>(u.size());
  require(n >= 1 && m >= 0 && m <= n, "split integral needs 0 <= m <= n and n >= 1");
  if (near_confluent(u)) throw RouteError(ErrorKind::NearConfluent, "contour shifts must be distinct");
  const Circle circle = resolve_circle(cfg, u, false);
  const std::vector<Cd> us(u.begin(), u.end());
  auto integrand = [&](std::span<const Cd> z) {
    const Cd delta = vandermonde(z);
    Cd denom{1.0, 0.0};
    for (const Cd& zi : z)
      for (const Cd& uj : us) denom *= zi - uj;
    return G(z.first(static_cast<std::size_t>(m)), z.subspan(static_cast<std::size_t>(m))) * delta * delta / denom;
  };
  const double pref = parity_sign(n * (n - 1) / 2) / (factorial(m) * factorial(n - m));
  return pref * circular_integral(n, integrand, circle, cfg);
}

LemmaCheck lemma_unitary_check(const SplitKernel& G, std::span<const Cd> u, int m, const ContourConfig& cfg) {
  require_unit_residue(G.f);
  LemmaCheck out;
  out.lhs = split_sum(G, u, m);
  out.rhs = split_integral(G, u, m, cfg);
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

Cd reflection_sum(const ReflectionKernel& G, std::span<const Cd> alphas, SignVariant variant) {
  std::vector<Cd> terms;
  std::vector<Cd> point(alphas.size());
  for (const auto& eps : sign_vectors(alphas.size())) {
    double weight = 1.0;
    for (std::size_t j = 0; j < alphas.size(); ++j) {
      point[j] = static_cast<double>(eps[j]) * alphas[j];
      if (variant == SignVariant::Signed) weight *= eps[j];
    }
    terms.push_back(weight * G(point));
  }
  return pairwise_sum(terms);
}

Cd reflection_integral(const ReflectionKernel& G, std::span<const Cd> alphas, SignVariant variant,
                       const ContourConfig& cfg) {
  const int k = static_cast<int>(alphas.size());
  require(k >= 1, "reflection integral needs at least one shift");
  std::vector<Cd> enclosed;
  for (const Cd& a : alphas) {
    enclosed.push_back(a);
    enclosed.push_back(-a);
  }
  if (near_confluent(std::span<const Cd>(enclosed)))
    throw RouteError(ErrorKind::NearConfluent, "the points +-alpha must be distinct");
  const Circle circle = resolve_circle(cfg, enclosed, true);
  Cd alpha_prod{1.0, 0.0};
  for (const Cd& a : alphas) alpha_prod *= a;
  const std::vector<Cd> as(alphas.begin(), alphas.end());
  auto integrand = [&](std::span<const Cd> z) {
    std::vector<Cd> sq(z.size());
    Cd numer = variant == SignVariant::Signed ? alpha_prod : Cd{1.0, 0.0};
    Cd denom{1.0, 0.0};
    for (std::size_t i = 0; i < z.size(); ++i) {
      sq[i] = z[i] * z[i];
      if (variant == SignVariant::Plain) numer *= z[i];
      for (const Cd& a : as) denom *= sq[i] - a * a;
    }
    const Cd delta = vandermonde(std::span<const Cd>(sq));
    return G(z) * delta * delta * numer / denom;
  };
  const double pref = parity_sign(k * (k - 1) / 2) * std::ldexp(1.0, k) / factorial(k);
  return pref * circular_integral(k, integrand, circle, cfg);
}

LemmaCheck lemma_sym_check(const ReflectionKernel& G, std::span<const Cd> alphas, SignVariant variant,
                           const ContourConfig& cfg) {
  require_unit_residue(G.f);
  LemmaCheck out;
  out.lhs = reflection_sum(G, alphas, variant);
  out.rhs = reflection_integral(G, alphas, variant, cfg);
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

}  // namespace rmtac

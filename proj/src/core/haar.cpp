#include "rmtac/haar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "rmtac/parallel.hpp"

namespace rmtac {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double cos_vandermonde_sq(std::span<const double> angles) {
  double prod = 1.0;
  for (std::size_t j = 0; j < angles.size(); ++j)
    for (std::size_t k = j + 1; k < angles.size(); ++k) {
      const double d = std::cos(angles[j]) - std::cos(angles[k]);
      prod *= d * d;
    }
  return prod;
}

double symplectic_density(int n, std::span<const double> angles) {
  double sin_sq = 1.0;
  for (double t : angles) sin_sq *= std::sin(t) * std::sin(t);
  const double norm = std::ldexp(1.0, n * n - n) / (std::pow(kPi, n) * factorial(n));
  return norm * cos_vandermonde_sq(angles) * sin_sq;
}

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0) t += kTwoPi;
  return t;
}

// Angles of the conjugate-pair eigenvalues: keep the `count` eigenvalues with
// the largest imaginary part, which are the upper-half-plane members.
Eigenangles pair_angles(std::vector<Cd> eig, int count) {
  std::sort(eig.begin(), eig.end(), [](const Cd& a, const Cd& b) { return a.imag() > b.imag(); });
  Eigenangles out;
  for (int i = 0; i < count; ++i) out.push_back(std::abs(std::arg(eig[static_cast<std::size_t>(i)])));
  return out;
}

template <class Matrix>
void gram_schmidt_column(Matrix& q, Eigen::Index col, const std::vector<Eigen::Index>& previous) {
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index p : previous) {
      const auto proj = q.col(p).dot(q.col(col));  // conj(q_p) . q_col
      q.col(col) -= proj * q.col(p);
    }
  }
  q.col(col) /= q.col(col).norm();
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::Unitary: return "U";
    case Family::Symplectic: return "USp";
    case Family::SpecialOrthogonalEven: return "SO";
    case Family::OrthogonalMinus: return "O-";
  }
  return "?";
}

GroupSpec::GroupSpec(Family f, int n) : family(f), N(n) { require(n >= 1, "group size parameter must be >= 1"); }

int GroupSpec::free_angles() const { return family == Family::OrthogonalMinus ? N - 1 : N; }

double weyl_density(const GroupSpec& g, std::span<const double> angles) {
  require(static_cast<int>(angles.size()) == g.free_angles(), "eigenangle count does not match the group");
  const int n = g.N;
  switch (g.family) {
    case Family::Unitary: {
      double prod = 1.0;
      for (std::size_t j = 0; j < angles.size(); ++j)
        for (std::size_t k = j + 1; k < angles.size(); ++k)
          prod *= std::norm(std::polar(1.0, angles[k]) - std::polar(1.0, angles[j]));
      return prod / (factorial(n) * std::pow(kTwoPi, n));
    }
    case Family::Symplectic:
      return symplectic_density(n, angles);
    case Family::SpecialOrthogonalEven: {
      const double norm = std::ldexp(1.0, n * n - 3 * n + 1) / (std::pow(kPi, n) * factorial(n));
      return norm * cos_vandermonde_sq(angles);
    }
    case Family::OrthogonalMinus:
      return n == 1 ? 1.0 : symplectic_density(n - 1, angles);
  }
  return 0.0;
}

Cd char_poly(const GroupSpec& g, std::span<const double> angles, Cd s) {
  require(static_cast<int>(angles.size()) == g.free_angles(), "eigenangle count does not match the group");
  Cd prod{1.0, 0.0};
  if (g.family == Family::Unitary) {
    for (double t : angles) prod *= 1.0 - std::polar(1.0, t) * s;
    return prod;
  }
  for (double t : angles) prod *= (1.0 - std::polar(1.0, t) * s) * (1.0 - std::polar(1.0, -t) * s);
  if (g.family == Family::OrthogonalMinus) prod *= (1.0 - s) * (1.0 + s);
  return prod;
}

Cd char_poly_adjoint(const GroupSpec& g, std::span<const double> angles, Cd s) {
  if (g.family != Family::Unitary) return char_poly(g, angles, s);
  Cd prod{1.0, 0.0};
  for (double t : angles) prod *= 1.0 - std::polar(1.0, -t) * s;
  return prod;
}

AngleIntegrand char_poly_product(const GroupSpec& g, std::vector<Cd> shifts) {
  return [g, shifts = std::move(shifts)](std::span<const double> angles) {
    Cd prod{1.0, 0.0};
    for (const Cd& w : shifts) prod *= char_poly(g, angles, w);
    return prod;
  };
}

double functional_equation_residual(const GroupSpec& g, std::span<const double> angles, Cd s) {
  require(s != Cd(0.0), "functional equation needs s != 0");
  const Cd lhs = char_poly(g, angles, s);
  Cd rhs;
  if (g.family == Family::Unitary) {
    Cd det{1.0, 0.0};
    for (double t : angles) det *= std::polar(1.0, t);
    const double sign = (g.N % 2 == 0) ? 1.0 : -1.0;
    rhs = sign * det * std::pow(s, g.N) * char_poly_adjoint(g, angles, 1.0 / s);
  } else {
    const Cd reflected = std::conj(char_poly(g, angles, std::conj(1.0 / s)));
    rhs = std::pow(s, 2 * g.N) * reflected;
    if (g.family == Family::OrthogonalMinus) rhs = -rhs;
  }
  return std::abs(lhs - rhs);
}

double z_functional_equation_residual(const GroupSpec& g, std::span<const double> angles, Cd s) {
  if (g.family == Family::Unitary) return functional_equation_residual(g, angles, s);
  require(s != Cd(0.0), "functional equation needs s != 0");
  const double sign = g.family == Family::OrthogonalMinus ? -1.0 : 1.0;
  auto z = [&](Cd x) { return sign * std::pow(x, -g.N) * char_poly(g, angles, x); };
  const Cd lhs = z(s);
  const Cd rhs = sign * std::conj(z(std::conj(1.0 / s)));
  return std::abs(lhs - rhs);
}

int default_nodes(const GroupSpec& g, int integrand_degree) { return 4 * (2 * g.N + integrand_degree); }

Cd quadrature_average(const GroupSpec& g, const AngleIntegrand& integrand, const QuadratureConfig& cfg) {
  const int dim = g.free_angles();
  if (dim > cfg.max_free_angles)
    throw RouteError(ErrorKind::DimensionCap, "tensor quadrature over " + std::to_string(dim) +
                                                  " angles exceeds the cap of " +
                                                  std::to_string(cfg.max_free_angles));
  if (dim == 0) return integrand({});
  const int nodes = cfg.nodes_per_dim > 0 ? cfg.nodes_per_dim : default_nodes(g, cfg.integrand_degree);
  require(nodes >= 2, "quadrature needs at least two nodes per dimension");
  const double step = kTwoPi / nodes;
  const double weight = std::pow(step, dim);

  std::size_t inner_count = 1;
  for (int d = 1; d < dim; ++d) inner_count *= static_cast<std::size_t>(nodes);

  std::vector<Cd> partial(static_cast<std::size_t>(nodes));
  parallel_for(partial.size(), cfg.threads, [&](std::size_t outer) {
    std::vector<double> angles(static_cast<std::size_t>(dim));
    std::vector<Cd> row(inner_count);
    angles[0] = (static_cast<double>(outer) + 0.5) * step;
    for (std::size_t inner = 0; inner < inner_count; ++inner) {
      std::size_t rest = inner;
      for (int d = dim - 1; d >= 1; --d) {
        angles[static_cast<std::size_t>(d)] = (static_cast<double>(rest % static_cast<std::size_t>(nodes)) + 0.5) * step;
        rest /= static_cast<std::size_t>(nodes);
      }
      row[inner] = integrand(angles) * weyl_density(g, angles);
    }
    partial[outer] = pairwise_sum(row);
  });
  return pairwise_sum(partial) * weight;
}

EigenangleSampler::EigenangleSampler(const GroupSpec& g, std::uint64_t seed) : group_(g), rng_(seed) {}

Eigenangles EigenangleSampler::next() {
  const int n = group_.N;
  switch (group_.family) {
    case Family::Unitary: {
      Eigen::MatrixXcd q(n, n);
      const double scale = std::sqrt(0.5);
      for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) q(r, c) = Cd(gauss_(rng_), gauss_(rng_)) * scale;
      std::vector<Eigen::Index> previous;
      for (int c = 0; c < n; ++c) {
        gram_schmidt_column(q, c, previous);
        previous.push_back(c);
      }
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(q, false);
      Eigenangles out;
      for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(wrap_angle(std::arg(es.eigenvalues()(i))));
      std::sort(out.begin(), out.end());
      return out;
    }
    case Family::Symplectic: {
      // Columns u_j and their partners u_{N+j} = -J conj(u_j) with J = [[0, I], [-I, 0]].
      const int dim = 2 * n;
      Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(dim, dim);
      const double scale = std::sqrt(0.5);
      std::vector<Eigen::Index> previous;
      for (int j = 0; j < n; ++j) {
        for (int r = 0; r < dim; ++r) q(r, j) = Cd(gauss_(rng_), gauss_(rng_)) * scale;
        gram_schmidt_column(q, j, previous);
        for (int r = 0; r < n; ++r) {
          // (J x)_r = x_{r+N}, (J x)_{r+N} = -x_r
          q(r, n + j) = -std::conj(q(r + n, j));
          q(r + n, n + j) = std::conj(q(r, j));
        }
        previous.push_back(j);
        previous.push_back(n + j);
      }
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(q, false);
      std::vector<Cd> eig(es.eigenvalues().data(), es.eigenvalues().data() + dim);
      return pair_angles(std::move(eig), n);
    }
    case Family::SpecialOrthogonalEven:
    case Family::OrthogonalMinus: {
      const int dim = 2 * n;
      Eigen::MatrixXd q(dim, dim);
      for (int c = 0; c < dim; ++c)
        for (int r = 0; r < dim; ++r) q(r, c) = gauss_(rng_);
      std::vector<Eigen::Index> previous;
      for (int c = 0; c < dim; ++c) {
        gram_schmidt_column(q, c, previous);
        previous.push_back(c);
      }
      const double det = q.determinant();
      const bool want_plus = group_.family == Family::SpecialOrthogonalEven;
      // Right multiplication by diag(-1, 1, ..., 1) swaps the two cosets and preserves Haar measure.
      if ((det > 0) != want_plus) q.col(0) = -q.col(0);
      Eigen::EigenSolver<Eigen::MatrixXd> es(q, false);
      std::vector<Cd> eig(es.eigenvalues().data(), es.eigenvalues().data() + dim);
      if (want_plus) return pair_angles(std::move(eig), n);
      auto drop_closest = [&eig](double target) {
        auto it = std::min_element(eig.begin(), eig.end(), [target](const Cd& a, const Cd& b) {
          return std::abs(a - target) < std::abs(b - target);
        });
        eig.erase(it);
      };
      drop_closest(1.0);
      drop_closest(-1.0);
      return pair_angles(std::move(eig), n - 1);
    }
  }
  return {};
}

std::vector<Eigenangles> sample_eigenangles(const GroupSpec& g, std::uint64_t seed, std::size_t count) {
  EigenangleSampler sampler(g, seed);
  std::vector<Eigenangles> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sampler.next());
  return out;
}

MonteCarloEstimate monte_carlo_average(const GroupSpec& g, const AngleIntegrand& integrand, std::uint64_t seed,
                                       std::size_t count) {
  require(count >= 2, "Monte Carlo needs at least two samples");
  EigenangleSampler sampler(g, seed);
  std::vector<Cd> values(count);
  for (std::size_t i = 0; i < count; ++i) values[i] = integrand(sampler.next());
  const Cd mean = pairwise_sum(values) / static_cast<double>(count);
  double ss = 0.0;
  for (const Cd& v : values) ss += std::norm(v - mean);
  const double variance = ss / static_cast<double>(count - 1);
  return {mean, std::sqrt(variance / static_cast<double>(count))};
}

}  // namespace rmtac

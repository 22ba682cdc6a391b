#include "rmtac/rmtac.h"

#include <cmath>
#include <algorithm>
#include <exception>
#include <memory>
#include <numbers>
#include <new>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rmtac/haar.hpp"
#include "rmtac/identities.hpp"
#include "rmtac/orthogonal.hpp"
#include "rmtac/symplectic.hpp"
#include "rmtac/unitary.hpp"

using namespace rmtac;

struct rmtac_context {
  unsigned digits = 0;
  unsigned threads = 1;
  int quadrature_nodes = 0;
  int contour_nodes = 128;
  std::uint64_t seed = 1;
  std::size_t samples = 100000;
  bool with_ominus_sign = false;
};

struct rmtac_result {
  Cd value;
  rmtac_method method = RMTAC_METHOD_SCHUR;
  std::optional<double> error_estimate;
  unsigned digits = 0;
  std::string re_decimal;
  std::string im_decimal;
};

struct rmtac_identity_report {
  IdentitySuiteReport report;
  std::vector<std::string> names;
  std::vector<double> residuals;
};

namespace {

thread_local std::string last_error;

rmtac_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return RMTAC_ERR_INVALID_ARGUMENT;
    case ErrorKind::NearConfluent: return RMTAC_ERR_NEAR_CONFLUENT;
    case ErrorKind::PoleHit: return RMTAC_ERR_POLE_HIT;
    case ErrorKind::DimensionCap: return RMTAC_ERR_DIMENSION_CAP;
    case ErrorKind::ContourTooTight: return RMTAC_ERR_CONTOUR_TOO_TIGHT;
    case ErrorKind::Inconsistent: return RMTAC_ERR_INCONSISTENT;
  }
  return RMTAC_ERR_INTERNAL;
}

rmtac_status fail(rmtac_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <class Fn>
rmtac_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return RMTAC_OK;
  } catch (const RouteError& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(RMTAC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RMTAC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RMTAC_ERR_INTERNAL, "unknown exception");
  }
}

std::vector<Cd> to_vector(const rmtac_complex* z, std::size_t count) {
  std::vector<Cd> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.emplace_back(z[i].re, z[i].im);
  return out;
}

bool alpha_is_negated(rmtac_group g) { return g == RMTAC_GROUP_U || g == RMTAC_GROUP_USP; }

Family family_of(rmtac_group g) {
  switch (g) {
    case RMTAC_GROUP_U: return Family::Unitary;
    case RMTAC_GROUP_USP: return Family::Symplectic;
    case RMTAC_GROUP_SO: return Family::SpecialOrthogonalEven;
    case RMTAC_GROUP_OMINUS: return Family::OrthogonalMinus;
    default: break;
  }
  throw RouteError(ErrorKind::InvalidArgument, "group has no single family");
}

// Exact routes at precision C.
template <class C>
C exact_value(const rmtac_context& ctx, const rmtac_query& q, rmtac_method method, std::span<const Cd> w_cd) {
  const std::vector<C> wv = from_cd<C>(w_cd);
  const std::span<const C> w(wv);
  const int N = q.N;
  const int k = static_cast<int>(w.size());
  const C sign = (k % 2) ? C(-1) : C(1);
  switch (q.group) {
    case RMTAC_GROUP_U:
      if (method == RMTAC_METHOD_SCHUR) return autocorr_schur<C>(N, q.m, w);
      if (method == RMTAC_METHOD_DET) return autocorr_det<C>(N, q.m, w);
      return autocorr_comb<C>(N, q.m, w);
    case RMTAC_GROUP_USP:
      if (method == RMTAC_METHOD_SCHUR) return sp_autocorr_schur<C>(N, w);
      if (method == RMTAC_METHOD_DET) return sp_autocorr_det<C>(N, w);
      return sp_autocorr_eps<C>(N, w);
    case RMTAC_GROUP_SO:
      if (method == RMTAC_METHOD_SCHUR) return so_autocorr_schur<C>(N, w);
      if (method == RMTAC_METHOD_DET) return so_autocorr_det<C>(N, w);
      return so_autocorr_eps<C>(N, w);
    case RMTAC_GROUP_OMINUS:
      if (method == RMTAC_METHOD_SCHUR) return ominus_autocorr_schur<C>(N, w);
      if (method == RMTAC_METHOD_DET) return ominus_autocorr_det<C>(N, w);
      return ominus_autocorr_eps<C>(N, w);
    case RMTAC_GROUP_O: {
      if (method == RMTAC_METHOD_SCHUR) return full_o2n_average<C>(N, w, ctx.with_ominus_sign);
      C so, om;
      if (method == RMTAC_METHOD_DET) {
        so = so_autocorr_det<C>(N, w);
        om = ominus_autocorr_det<C>(N, w);
      } else {
        so = so_autocorr_eps<C>(N, w);
        om = ominus_autocorr_eps<C>(N, w);
      }
      return (so + (ctx.with_ominus_sign ? om : sign * om)) / C(2);
    }
  }
  throw RouteError(ErrorKind::InvalidArgument, "unknown group");
}

Cd contour_value(const rmtac_context& ctx, const rmtac_query& q, std::span<const Cd> alphas) {
  ContourConfig cfg;
  cfg.nodes_per_dim = ctx.contour_nodes;
  cfg.threads = ctx.threads;
  switch (q.group) {
    case RMTAC_GROUP_U: return autocorr_contour(q.N, q.m, alphas, cfg);
    case RMTAC_GROUP_USP: return sp_autocorr_contour(q.N, alphas, cfg);
    case RMTAC_GROUP_SO:
    case RMTAC_GROUP_OMINUS: return orthogonal_contour(family_of(q.group), q.N, alphas, cfg);
    case RMTAC_GROUP_O: {
      const Cd so = orthogonal_contour(Family::SpecialOrthogonalEven, q.N, alphas, cfg);
      const Cd om = orthogonal_contour(Family::OrthogonalMinus, q.N, alphas, cfg);
      const double sign = (alphas.size() % 2 && !ctx.with_ominus_sign) ? -1.0 : 1.0;
      return (so + sign * om) / 2.0;
    }
  }
  throw RouteError(ErrorKind::InvalidArgument, "unknown group");
}

Cd quadrature_value(const rmtac_context& ctx, const rmtac_query& q, std::span<const Cd> w) {
  QuadratureConfig cfg;
  cfg.nodes_per_dim = ctx.quadrature_nodes;
  cfg.threads = ctx.threads;
  cfg.integrand_degree = static_cast<int>(w.size()) + 2;
  switch (q.group) {
    case RMTAC_GROUP_U: return autocorr_quadrature(q.N, q.m, w, cfg);
    case RMTAC_GROUP_USP: return sp_autocorr_quadrature(q.N, w, cfg);
    case RMTAC_GROUP_SO:
    case RMTAC_GROUP_OMINUS: return orthogonal_quadrature(family_of(q.group), q.N, w, cfg);
    case RMTAC_GROUP_O: {
      const Cd so = orthogonal_quadrature(Family::SpecialOrthogonalEven, q.N, w, cfg);
      const Cd om = orthogonal_quadrature(Family::OrthogonalMinus, q.N, w, cfg);
      const double sign = (w.size() % 2 && !ctx.with_ominus_sign) ? -1.0 : 1.0;
      return (so + sign * om) / 2.0;
    }
  }
  throw RouteError(ErrorKind::InvalidArgument, "unknown group");
}

MonteCarloEstimate montecarlo_value(const rmtac_context& ctx, const rmtac_query& q, std::span<const Cd> w) {
  require(ctx.samples >= 2, "Monte Carlo needs at least 2 samples");
  switch (q.group) {
    case RMTAC_GROUP_U: return autocorr_montecarlo(q.N, q.m, w, ctx.seed, ctx.samples);
    case RMTAC_GROUP_USP: return sp_autocorr_montecarlo(q.N, w, ctx.seed, ctx.samples);
    case RMTAC_GROUP_SO:
    case RMTAC_GROUP_OMINUS: return orthogonal_montecarlo(family_of(q.group), q.N, w, ctx.seed, ctx.samples);
    case RMTAC_GROUP_O:
      if (ctx.with_ominus_sign && w.size() % 2)
        throw RouteError(ErrorKind::InvalidArgument, "Monte Carlo over O(2N) samples the unsigned average only");
      return full_o2n_montecarlo(q.N, w, ctx.seed, ctx.samples);
  }
  throw RouteError(ErrorKind::InvalidArgument, "unknown group");
}

void validate_query(const rmtac_query& q) {
  require(q.group >= RMTAC_GROUP_U && q.group <= RMTAC_GROUP_O, "unknown group");
  require(q.N >= 1, "N must be positive");
  require(q.shift_count >= 1, "at least one shift is required");
  require(q.shifts != nullptr, "shift array is null");
  require(q.shift_kind == RMTAC_SHIFT_W || q.shift_kind == RMTAC_SHIFT_ALPHA, "unknown shift kind");
  if (q.group == RMTAC_GROUP_U)
    require(q.m >= 0 && static_cast<std::size_t>(q.m) <= q.shift_count, "m must lie in [0, n]");
  for (std::size_t i = 0; i < q.shift_count; ++i)
    require(std::isfinite(q.shifts[i].re) && std::isfinite(q.shifts[i].im), "shifts must be finite");
}

}  // namespace

extern "C" {

const char* rmtac_version(void) { return "1.0.0"; }

const char* rmtac_status_name(rmtac_status status) {
  switch (status) {
    case RMTAC_OK: return "Ok";
    case RMTAC_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case RMTAC_ERR_NEAR_CONFLUENT: return "NearConfluent";
    case RMTAC_ERR_POLE_HIT: return "PoleHit";
    case RMTAC_ERR_DIMENSION_CAP: return "DimensionCap";
    case RMTAC_ERR_CONTOUR_TOO_TIGHT: return "ContourTooTight";
    case RMTAC_ERR_INCONSISTENT: return "Inconsistent";
    case RMTAC_ERR_NULL_HANDLE: return "NullHandle";
    case RMTAC_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* rmtac_last_error_message(void) { return last_error.c_str(); }

const char* rmtac_group_name(rmtac_group group) {
  switch (group) {
    case RMTAC_GROUP_U: return "u";
    case RMTAC_GROUP_USP: return "usp";
    case RMTAC_GROUP_SO: return "so";
    case RMTAC_GROUP_OMINUS: return "ominus";
    case RMTAC_GROUP_O: return "o";
  }
  return "unknown";
}

const char* rmtac_method_name(rmtac_method method) {
  switch (method) {
    case RMTAC_METHOD_SCHUR: return "schur";
    case RMTAC_METHOD_DET: return "det";
    case RMTAC_METHOD_COMB: return "comb";
    case RMTAC_METHOD_CONTOUR: return "contour";
    case RMTAC_METHOD_QUADRATURE: return "quadrature";
    case RMTAC_METHOD_MONTECARLO: return "montecarlo";
  }
  return "unknown";
}

rmtac_status rmtac_context_create(rmtac_context** out) {
  if (!out) return fail(RMTAC_ERR_NULL_HANDLE, "null output pointer");
  return guarded([&] { *out = new rmtac_context(); });
}

void rmtac_context_destroy(rmtac_context* ctx) { delete ctx; }

rmtac_status rmtac_context_set_digits(rmtac_context* ctx, unsigned digits) {
  if (!ctx) return fail(RMTAC_ERR_NULL_HANDLE, "null context");
  if (digits != 0 && digits < 30) return fail(RMTAC_ERR_INVALID_ARGUMENT, "extended precision needs >= 30 digits");
  ctx->digits = digits;
  return RMTAC_OK;
}

rmtac_status rmtac_context_set_threads(rmtac_context* ctx, unsigned threads) {
  if (!ctx) return fail(RMTAC_ERR_NULL_HANDLE, "null context");
  if (threads == 0) return fail(RMTAC_ERR_INVALID_ARGUMENT, "threads must be positive");
  ctx->threads = threads;
  return RMTAC_OK;
}

rmtac_status rmtac_context_set_quadrature_nodes(rmtac_context* ctx, int nodes_per_dim) {
  if (!ctx) return fail(RMTAC_ERR_NULL_HANDLE, "null context");
  if (nodes_per_dim < 0) return fail(RMTAC_ERR_INVALID_ARGUMENT, "node count must be nonnegative");
  ctx->quadrature_nodes = nodes_per_dim;
  return RMTAC_OK;
}

rmtac_status rmtac_context_set_contour_nodes(rmtac_context* ctx, int nodes_per_dim) {
  if (!ctx) return fail(RMTAC_ERR_NULL_HANDLE, "null context");
  if (nodes_per_dim == 0) nodes_per_dim = 128;
  if (nodes_per_dim < 16) return fail(RMTAC_ERR_INVALID_ARGUMENT, "contour needs >= 16 nodes per dimension");
  ctx->contour_nodes = nodes_per_dim;
  return RMTAC_OK;
}

rmtac_status rmtac_context_set_seed(rmtac_context* ctx, uint64_t seed) {
  if (!ctx) return fail(RMTAC_ERR_NULL_HANDLE, "null context");
  ctx->seed = seed;
  return RMTAC_OK;
}

rmtac_status rmtac_context_set_samples(rmtac_context* ctx, size_t samples) {
  if (!ctx) return fail(RMTAC_ERR_NULL_HANDLE, "null context");
  if (samples < 2) return fail(RMTAC_ERR_INVALID_ARGUMENT, "samples must be >= 2");
  ctx->samples = samples;
  return RMTAC_OK;
}

rmtac_status rmtac_context_set_ominus_sign(rmtac_context* ctx, int with_ominus_sign) {
  if (!ctx) return fail(RMTAC_ERR_NULL_HANDLE, "null context");
  ctx->with_ominus_sign = with_ominus_sign != 0;
  return RMTAC_OK;
}

rmtac_status rmtac_evaluate(const rmtac_context* ctx, const rmtac_query* query, rmtac_method method,
                            rmtac_result** out) {
  if (!ctx || !query || !out) return fail(RMTAC_ERR_NULL_HANDLE, "null handle");
  *out = nullptr;
  return guarded([&] {
    const rmtac_query& q = *query;
    validate_query(q);
    require(method >= RMTAC_METHOD_SCHUR && method <= RMTAC_METHOD_MONTECARLO, "unknown method");

    const std::vector<Cd> given = to_vector(q.shifts, q.shift_count);
    const double dir = alpha_is_negated(q.group) ? -1.0 : 1.0;
    std::vector<Cd> w = given, alphas = given;
    if (q.shift_kind == RMTAC_SHIFT_ALPHA) {
      for (Cd& z : w) z = std::exp(dir * z);
    } else if (method == RMTAC_METHOD_CONTOUR) {
      for (Cd& z : alphas) {
        if (z == Cd(0)) throw RouteError(ErrorKind::PoleHit, "w = 0 has no alpha for the contour route");
        z = dir * std::log(z);
      }
    }

    auto result = std::make_unique<rmtac_result>();
    result->method = method;
    switch (method) {
      case RMTAC_METHOD_SCHUR:
      case RMTAC_METHOD_DET:
      case RMTAC_METHOD_COMB:
        if (ctx->digits == 0) {
          result->value = exact_value<Cd>(*ctx, q, method, w);
        } else {
          ExtendedPrecisionScope scope(ctx->digits);
          const MpComplex v = exact_value<MpComplex>(*ctx, q, method, w);
          result->value = to_cd(v);
          result->digits = ctx->digits;
          result->re_decimal = to_decimal(v.real(), ctx->digits);
          result->im_decimal = to_decimal(v.imag(), ctx->digits);
        }
        break;
      case RMTAC_METHOD_CONTOUR:
        result->value = contour_value(*ctx, q, alphas);
        break;
      case RMTAC_METHOD_QUADRATURE:
        result->value = quadrature_value(*ctx, q, w);
        break;
      case RMTAC_METHOD_MONTECARLO: {
        const MonteCarloEstimate est = montecarlo_value(*ctx, q, w);
        result->value = est.mean;
        result->error_estimate = est.std_error;
        break;
      }
    }
    *out = result.release();
  });
}

void rmtac_result_destroy(rmtac_result* result) { delete result; }

rmtac_status rmtac_result_value(const rmtac_result* result, rmtac_complex* out) {
  if (!result || !out) return fail(RMTAC_ERR_NULL_HANDLE, "null handle");
  *out = {result->value.real(), result->value.imag()};
  return RMTAC_OK;
}

rmtac_status rmtac_result_method(const rmtac_result* result, rmtac_method* out) {
  if (!result || !out) return fail(RMTAC_ERR_NULL_HANDLE, "null handle");
  *out = result->method;
  return RMTAC_OK;
}

rmtac_status rmtac_result_error_estimate(const rmtac_result* result, int* has_estimate, double* out) {
  if (!result || !has_estimate || !out) return fail(RMTAC_ERR_NULL_HANDLE, "null handle");
  *has_estimate = result->error_estimate.has_value() ? 1 : 0;
  *out = result->error_estimate.value_or(0.0);
  return RMTAC_OK;
}

rmtac_status rmtac_result_digits(const rmtac_result* result, unsigned* out) {
  if (!result || !out) return fail(RMTAC_ERR_NULL_HANDLE, "null handle");
  *out = result->digits;
  return RMTAC_OK;
}

const char* rmtac_result_real_decimal(const rmtac_result* result) {
  if (!result || result->digits == 0) return nullptr;
  return result->re_decimal.c_str();
}

const char* rmtac_result_imag_decimal(const rmtac_result* result) {
  if (!result || result->digits == 0) return nullptr;
  return result->im_decimal.c_str();
}

rmtac_status rmtac_identity_suite(const rmtac_context* ctx, unsigned trials, uint64_t seed, int max_n,
                                  rmtac_identity_report** out) {
  if (!ctx || !out) return fail(RMTAC_ERR_NULL_HANDLE, "null handle");
  *out = nullptr;
  return guarded([&] {
    require(trials >= 1, "trials must be >= 1");
    require(max_n >= 1, "max_n must be >= 1");
    IdentitySuiteConfig cfg;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.max_n = max_n;
    cfg.digits = ctx->digits;
    auto report = std::make_unique<rmtac_identity_report>();
    report->report = run_identity_suite(cfg);
    for (const auto& [name, value] : report->report.max_residual) {
      report->names.push_back(name);
      report->residuals.push_back(value);
    }
    *out = report.release();
  });
}

void rmtac_identity_report_destroy(rmtac_identity_report* report) { delete report; }

size_t rmtac_identity_report_count(const rmtac_identity_report* report) { return report ? report->names.size() : 0; }

const char* rmtac_identity_report_name(const rmtac_identity_report* report, size_t index) {
  if (!report || index >= report->names.size()) return nullptr;
  return report->names[index].c_str();
}

double rmtac_identity_report_residual(const rmtac_identity_report* report, size_t index) {
  if (!report || index >= report->residuals.size()) return NAN;
  return report->residuals[index];
}

double rmtac_identity_report_tolerance(const rmtac_identity_report* report) {
  return report ? report->report.tolerance : NAN;
}

int rmtac_identity_report_passed(const rmtac_identity_report* report) {
  return report && report->report.passed ? 1 : 0;
}

const char* rmtac_identity_report_identity3_convention(const rmtac_identity_report* report) {
  return report ? report->report.identity3_convention.c_str() : nullptr;
}

double rmtac_identity_report_identity3_printed(const rmtac_identity_report* report) {
  return report ? report->report.identity3_printed_max : NAN;
}

double rmtac_identity_report_identity3_prose(const rmtac_identity_report* report) {
  return report ? report->report.identity3_prose_max : NAN;
}

rmtac_status rmtac_sp_large_n_ratio(const rmtac_complex* b, size_t k, long long N, rmtac_complex* out) {
  if (!b || !out) return fail(RMTAC_ERR_NULL_HANDLE, "null handle");
  return guarded([&] {
    const std::vector<Cd> bv = to_vector(b, k);
    const Cd r = sp_large_n_ratio(bv, N);
    *out = {r.real(), r.imag()};
  });
}

rmtac_status rmtac_so_partial_sum(const rmtac_context* ctx, rmtac_partial_variant variant, int n_max,
                                  const rmtac_complex* w, size_t count, rmtac_complex* value,
                                  rmtac_complex* closed_form, double* residual) {
  if (!ctx || !w || !value || !closed_form || !residual) return fail(RMTAC_ERR_NULL_HANDLE, "null handle");
  return guarded([&] {
    require(variant >= RMTAC_PARTIAL_M && variant <= RMTAC_PARTIAL_L, "unknown partial-sum variant");
    const auto v = static_cast<PartialVariant>(variant);
    const std::vector<Cd> wv = to_vector(w, count);
    PartialSum ps;
    if (ctx->digits == 0) {
      ps = so_partial_sums<Cd>(v, n_max, std::span<const Cd>(wv));
    } else {
      ExtendedPrecisionScope scope(ctx->digits);
      const std::vector<MpComplex> wm = from_cd<MpComplex>(wv);
      ps = so_partial_sums<MpComplex>(v, n_max, std::span<const MpComplex>(wm));
    }
    *value = {ps.value.real(), ps.value.imag()};
    *closed_form = {ps.closed_form.real(), ps.closed_form.imag()};
    *residual = ps.residual;
  });
}

rmtac_status rmtac_pairing_determinant(int N, int64_t* out) {
  if (!out) return fail(RMTAC_ERR_NULL_HANDLE, "null handle");
  return guarded([&] { *out = pairing_determinant(N); });
}

rmtac_status rmtac_functional_equation_check(rmtac_group group, int N, uint64_t seed, size_t trials,
                                             double* residual, double* z_residual) {
  if (!residual || !z_residual) return fail(RMTAC_ERR_NULL_HANDLE, "null handle");
  return guarded([&] {
    require(trials >= 1, "trials must be >= 1");
    const GroupSpec g(family_of(group), N);
    EigenangleSampler sampler(g, seed);
    std::mt19937_64 rng(seed ^ 0x5bd1e995ULL);
    std::uniform_real_distribution<double> radius(0.5, 2.0), phase(0.0, 2.0 * std::numbers::pi);
    double worst = 0.0, worst_z = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      const Eigenangles angles = sampler.next();
      const Cd s = std::polar(radius(rng), phase(rng));
      worst = std::max(worst, functional_equation_residual(g, angles, s));
      worst_z = std::max(worst_z, z_functional_equation_residual(g, angles, s));
    }
    *residual = worst;
    *z_residual = worst_z;
  });
}

}  // extern "C"

#ifndef RMTAC_RMTAC_H
#define RMTAC_RMTAC_H

/* C interface to the autocorrelation library. All handles are opaque; every
 * call returns an rmtac_status and writes results through out-parameters.
 * The message behind the most recent failure on the calling thread is
 * available from rmtac_last_error_message(). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(RMTAC_BUILDING_LIBRARY)
#    define RMTAC_API __declspec(dllexport)
#  else
#    define RMTAC_API __declspec(dllimport)
#  endif
#else
#  define RMTAC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rmtac_status {
  RMTAC_OK = 0,
  RMTAC_ERR_INVALID_ARGUMENT = 1,
  RMTAC_ERR_NEAR_CONFLUENT = 2,
  RMTAC_ERR_POLE_HIT = 3,
  RMTAC_ERR_DIMENSION_CAP = 4,
  RMTAC_ERR_CONTOUR_TOO_TIGHT = 5,
  RMTAC_ERR_INCONSISTENT = 6,
  RMTAC_ERR_NULL_HANDLE = 7,
  RMTAC_ERR_INTERNAL = 8
} rmtac_status;

typedef enum rmtac_group {
  RMTAC_GROUP_U = 0,      /* U(N) */
  RMTAC_GROUP_USP = 1,    /* USp(2N) */
  RMTAC_GROUP_SO = 2,     /* SO(2N) */
  RMTAC_GROUP_OMINUS = 3, /* O-(2N), carrying the (-1)^k sign */
  RMTAC_GROUP_O = 4       /* full O(2N) */
} rmtac_group;

typedef enum rmtac_method {
  RMTAC_METHOD_SCHUR = 0,
  RMTAC_METHOD_DET = 1,
  RMTAC_METHOD_COMB = 2, /* comb for U, eps for the other families */
  RMTAC_METHOD_CONTOUR = 3,
  RMTAC_METHOD_QUADRATURE = 4,
  RMTAC_METHOD_MONTECARLO = 5
} rmtac_method;

/* Shifts are given either as w directly or as alpha, with w = e^{-alpha} for
 * U and USp and w = e^{+alpha} for SO, O- and O. */
typedef enum rmtac_shift_kind {
  RMTAC_SHIFT_W = 0,
  RMTAC_SHIFT_ALPHA = 1
} rmtac_shift_kind;

typedef enum rmtac_partial_variant {
  RMTAC_PARTIAL_M = 0,
  RMTAC_PARTIAL_E = 1,
  RMTAC_PARTIAL_R = 2,
  RMTAC_PARTIAL_L = 3
} rmtac_partial_variant;

typedef struct rmtac_complex {
  double re;
  double im;
} rmtac_complex;

typedef struct rmtac_query {
  rmtac_group group;
  int N;
  int m; /* unitary only: number of Lambda factors; ignored elsewhere */
  const rmtac_complex* shifts;
  size_t shift_count;
  rmtac_shift_kind shift_kind;
} rmtac_query;

typedef struct rmtac_context rmtac_context;
typedef struct rmtac_result rmtac_result;
typedef struct rmtac_identity_report rmtac_identity_report;

RMTAC_API const char* rmtac_version(void);
RMTAC_API const char* rmtac_status_name(rmtac_status status);
RMTAC_API const char* rmtac_last_error_message(void);
RMTAC_API const char* rmtac_group_name(rmtac_group group);
RMTAC_API const char* rmtac_method_name(rmtac_method method);

/* Context: precision and route settings shared by evaluations. */
RMTAC_API rmtac_status rmtac_context_create(rmtac_context** out);
RMTAC_API void rmtac_context_destroy(rmtac_context* ctx);
/* 0 selects machine double; otherwise at least 30 decimal digits. */
RMTAC_API rmtac_status rmtac_context_set_digits(rmtac_context* ctx, unsigned digits);
RMTAC_API rmtac_status rmtac_context_set_threads(rmtac_context* ctx, unsigned threads);
/* 0 selects the default node count. */
RMTAC_API rmtac_status rmtac_context_set_quadrature_nodes(rmtac_context* ctx, int nodes_per_dim);
RMTAC_API rmtac_status rmtac_context_set_contour_nodes(rmtac_context* ctx, int nodes_per_dim);
RMTAC_API rmtac_status rmtac_context_set_seed(rmtac_context* ctx, uint64_t seed);
RMTAC_API rmtac_status rmtac_context_set_samples(rmtac_context* ctx, size_t samples);
/* Full O(2N) only: take the O- value with its (-1)^k sign instead of undoing it. */
RMTAC_API rmtac_status rmtac_context_set_ominus_sign(rmtac_context* ctx, int with_ominus_sign);

/* Evaluates the autocorrelation of `query` by `method`. */
RMTAC_API rmtac_status rmtac_evaluate(const rmtac_context* ctx, const rmtac_query* query, rmtac_method method,
                                      rmtac_result** out);

RMTAC_API void rmtac_result_destroy(rmtac_result* result);
RMTAC_API rmtac_status rmtac_result_value(const rmtac_result* result, rmtac_complex* out);
RMTAC_API rmtac_status rmtac_result_method(const rmtac_result* result, rmtac_method* out);
/* Monte Carlo results carry a standard error; *has_estimate is 0 otherwise. */
RMTAC_API rmtac_status rmtac_result_error_estimate(const rmtac_result* result, int* has_estimate, double* out);
/* Digits the value was computed with (0 for machine double). */
RMTAC_API rmtac_status rmtac_result_digits(const rmtac_result* result, unsigned* out);
/* Decimal strings of the extended value; NULL for double results. The
 * strings live as long as the result. */
RMTAC_API const char* rmtac_result_real_decimal(const rmtac_result* result);
RMTAC_API const char* rmtac_result_imag_decimal(const rmtac_result* result);

/* Identity suite: trials random configurations at the context's precision. */
RMTAC_API rmtac_status rmtac_identity_suite(const rmtac_context* ctx, unsigned trials, uint64_t seed, int max_n,
                                            rmtac_identity_report** out);
RMTAC_API void rmtac_identity_report_destroy(rmtac_identity_report* report);
RMTAC_API size_t rmtac_identity_report_count(const rmtac_identity_report* report);
RMTAC_API const char* rmtac_identity_report_name(const rmtac_identity_report* report, size_t index);
RMTAC_API double rmtac_identity_report_residual(const rmtac_identity_report* report, size_t index);
RMTAC_API double rmtac_identity_report_tolerance(const rmtac_identity_report* report);
RMTAC_API int rmtac_identity_report_passed(const rmtac_identity_report* report);
/* "printed" or "prose": the exponent convention whose sum vanishes. */
RMTAC_API const char* rmtac_identity_report_identity3_convention(const rmtac_identity_report* report);
RMTAC_API double rmtac_identity_report_identity3_printed(const rmtac_identity_report* report);
RMTAC_API double rmtac_identity_report_identity3_prose(const rmtac_identity_report* report);

/* Exact USp(2N) value at w_j = e^{b_j/N} over its large-N asymptotic form. */
RMTAC_API rmtac_status rmtac_sp_large_n_ratio(const rmtac_complex* b, size_t k, long long N, rmtac_complex* out);

/* Index-sum side, closed-form side and their residual of a partial SO sum. */
RMTAC_API rmtac_status rmtac_so_partial_sum(const rmtac_context* ctx, rmtac_partial_variant variant, int n_max,
                                            const rmtac_complex* w, size_t count, rmtac_complex* value,
                                            rmtac_complex* closed_form, double* residual);

/* Determinant of the N x N matrix with +1 on and above the diagonal, -1 below. */
RMTAC_API rmtac_status rmtac_pairing_determinant(int N, int64_t* out);

/* Largest functional-equation residual over `trials` sampled matrices and
 * random s with |s| in [0.5, 2]; z_residual uses the Z normalization. */
RMTAC_API rmtac_status rmtac_functional_equation_check(rmtac_group group, int N, uint64_t seed, size_t trials,
                                                       double* residual, double* z_residual);

#ifdef __cplusplus
}
#endif

#endif

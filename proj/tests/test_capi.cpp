#include <doctest.h>

#include <cmath>
#include <complex>
#include <string>
#include <thread>
#include <vector>

#include "rmtac/rmtac.h"

extern "C" int capi_c_usage(double* re, double* im);

namespace {

struct Ctx {
  rmtac_context* p = nullptr;
  Ctx() { REQUIRE(rmtac_context_create(&p) == RMTAC_OK); }
  ~Ctx() { rmtac_context_destroy(p); }
};

struct Res {
  rmtac_result* p = nullptr;
  ~Res() { rmtac_result_destroy(p); }
};

rmtac_query query(rmtac_group g, int N, const std::vector<rmtac_complex>& w, int m = 0,
                  rmtac_shift_kind kind = RMTAC_SHIFT_W) {
  return rmtac_query{g, N, m, w.data(), w.size(), kind};
}

std::complex<double> value_of(const rmtac_context* ctx, const rmtac_query& q, rmtac_method method,
                              rmtac_status expect = RMTAC_OK) {
  Res r;
  const rmtac_status s = rmtac_evaluate(ctx, &q, method, &r.p);
  CHECK(s == expect);
  if (s != RMTAC_OK) {
    CHECK(r.p == nullptr);
    return {NAN, NAN};
  }
  rmtac_complex v{};
  REQUIRE(rmtac_result_value(r.p, &v) == RMTAC_OK);
  return {v.re, v.im};
}

}  // namespace

TEST_CASE("names and version") {
  CHECK(std::string(rmtac_version()).size() > 0);
  CHECK(std::string(rmtac_status_name(RMTAC_OK)) == "Ok");
  CHECK(std::string(rmtac_status_name(RMTAC_ERR_NEAR_CONFLUENT)) == "NearConfluent");
  CHECK(std::string(rmtac_status_name(RMTAC_ERR_NULL_HANDLE)) == "NullHandle");
  CHECK(std::string(rmtac_group_name(RMTAC_GROUP_OMINUS)) == "ominus");
  CHECK(std::string(rmtac_method_name(RMTAC_METHOD_QUADRATURE)) == "quadrature");
}

TEST_CASE("null handles") {
  CHECK(rmtac_context_create(nullptr) == RMTAC_ERR_NULL_HANDLE);
  CHECK(std::string(rmtac_last_error_message()).size() > 0);
  CHECK(rmtac_context_set_digits(nullptr, 40) == RMTAC_ERR_NULL_HANDLE);
  CHECK(rmtac_context_set_threads(nullptr, 2) == RMTAC_ERR_NULL_HANDLE);
  rmtac_result* r = nullptr;
  CHECK(rmtac_evaluate(nullptr, nullptr, RMTAC_METHOD_SCHUR, &r) == RMTAC_ERR_NULL_HANDLE);
  rmtac_complex v;
  CHECK(rmtac_result_value(nullptr, &v) == RMTAC_ERR_NULL_HANDLE);
  CHECK(rmtac_result_real_decimal(nullptr) == nullptr);
  CHECK(rmtac_pairing_determinant(3, nullptr) == RMTAC_ERR_NULL_HANDLE);
  CHECK(rmtac_identity_report_count(nullptr) == 0);
  rmtac_context_destroy(nullptr);
  rmtac_result_destroy(nullptr);
  rmtac_identity_report_destroy(nullptr);
}

TEST_CASE("context settings are validated") {
  Ctx c;
  CHECK(rmtac_context_set_digits(c.p, 20) == RMTAC_ERR_INVALID_ARGUMENT);
  CHECK(rmtac_context_set_digits(c.p, 40) == RMTAC_OK);
  CHECK(rmtac_context_set_digits(c.p, 0) == RMTAC_OK);
  CHECK(rmtac_context_set_threads(c.p, 0) == RMTAC_ERR_INVALID_ARGUMENT);
  CHECK(rmtac_context_set_contour_nodes(c.p, 8) == RMTAC_ERR_INVALID_ARGUMENT);
  CHECK(rmtac_context_set_contour_nodes(c.p, 0) == RMTAC_OK);
  CHECK(rmtac_context_set_samples(c.p, 1) == RMTAC_ERR_INVALID_ARGUMENT);
  CHECK(rmtac_context_set_quadrature_nodes(c.p, -3) == RMTAC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("evaluate the worked examples") {
  Ctx c;
  const std::vector<rmtac_complex> w23 = {{2, 0}, {3, 0}};
  for (rmtac_method m : {RMTAC_METHOD_SCHUR, RMTAC_METHOD_DET, RMTAC_METHOD_COMB})
    CHECK(std::abs(value_of(c.p, query(RMTAC_GROUP_U, 2, w23, 1), m) - 19.0) < 1e-12);
  CHECK(std::abs(value_of(c.p, query(RMTAC_GROUP_USP, 1, w23), RMTAC_METHOD_SCHUR) - 56.0) < 1e-12);

  const std::vector<rmtac_complex> two = {{2, 0}};
  CHECK(std::abs(value_of(c.p, query(RMTAC_GROUP_USP, 1, two), RMTAC_METHOD_COMB) - 5.0) < 1e-13);
  CHECK(std::abs(value_of(c.p, query(RMTAC_GROUP_SO, 1, two), RMTAC_METHOD_COMB) - 5.0) < 1e-13);
  const std::vector<rmtac_complex> three = {{3, 0}};
  CHECK(std::abs(value_of(c.p, query(RMTAC_GROUP_OMINUS, 1, three), RMTAC_METHOD_COMB) - 8.0) < 1e-13);
  const std::vector<rmtac_complex> zero = {{0, 0}};
  CHECK(std::abs(value_of(c.p, query(RMTAC_GROUP_SO, 3, zero), RMTAC_METHOD_SCHUR) - 1.0) < 1e-15);
  CHECK(std::abs(value_of(c.p, query(RMTAC_GROUP_O, 3, zero), RMTAC_METHOD_SCHUR) - 1.0) < 1e-15);

  double re = 0, im = 0;
  CHECK(capi_c_usage(&re, &im) == RMTAC_OK);
  CHECK(std::abs(re - 19.0) < 1e-12);
  CHECK(im == 0.0);
}

TEST_CASE("shift kinds follow each family's sign convention") {
  Ctx c;
  const std::vector<rmtac_complex> a = {{0.2, 0}};
  const auto so = value_of(c.p, query(RMTAC_GROUP_SO, 1, a, 0, RMTAC_SHIFT_ALPHA), RMTAC_METHOD_DET);
  CHECK(std::abs(so - (1.0 + std::exp(0.4))) < 1e-13);
  const auto cont = value_of(c.p, query(RMTAC_GROUP_SO, 1, a, 0, RMTAC_SHIFT_ALPHA), RMTAC_METHOD_CONTOUR);
  CHECK(std::abs(cont - so) < 1e-6);
  const auto sp = value_of(c.p, query(RMTAC_GROUP_USP, 1, a, 0, RMTAC_SHIFT_ALPHA), RMTAC_METHOD_DET);
  CHECK(std::abs(sp - (1.0 + std::exp(-0.4))) < 1e-13);
  const std::vector<rmtac_complex> w = {{std::exp(-0.2), 0}};
  const auto spc = value_of(c.p, query(RMTAC_GROUP_USP, 1, w), RMTAC_METHOD_CONTOUR);
  CHECK(std::abs(spc - sp) < 1e-6);
}

TEST_CASE("route failures map to status codes") {
  Ctx c;
  const std::vector<rmtac_complex> same = {{0.5, 0}, {0.5, 0}};
  value_of(c.p, query(RMTAC_GROUP_U, 2, same, 1), RMTAC_METHOD_DET, RMTAC_ERR_NEAR_CONFLUENT);
  CHECK(std::string(rmtac_last_error_message()).size() > 0);
  value_of(c.p, query(RMTAC_GROUP_U, 2, same, 1), RMTAC_METHOD_COMB, RMTAC_ERR_POLE_HIT);
  const std::vector<rmtac_complex> w = {{0.5, 0}, {0.7, 0}};
  value_of(c.p, query(RMTAC_GROUP_U, 2, w, 3), RMTAC_METHOD_SCHUR, RMTAC_ERR_INVALID_ARGUMENT);
  value_of(c.p, query(RMTAC_GROUP_U, 0, w, 1), RMTAC_METHOD_SCHUR, RMTAC_ERR_INVALID_ARGUMENT);
  const std::vector<rmtac_complex> four = {{0.1, 0}, {0.2, 0}, {0.3, 0}, {0.4, 0}};
  value_of(c.p, query(RMTAC_GROUP_USP, 1, four, 0, RMTAC_SHIFT_ALPHA), RMTAC_METHOD_CONTOUR,
           RMTAC_ERR_DIMENSION_CAP);
  rmtac_query bad = query(RMTAC_GROUP_U, 2, w, 1);
  bad.shifts = nullptr;
  value_of(c.p, bad, RMTAC_METHOD_SCHUR, RMTAC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("extended precision results") {
  Ctx c;
  REQUIRE(rmtac_context_set_digits(c.p, 40) == RMTAC_OK);
  const std::vector<rmtac_complex> w23 = {{2, 0}, {3, 0}};
  const rmtac_query q = query(RMTAC_GROUP_U, 2, w23, 1);
  Res r;
  REQUIRE(rmtac_evaluate(c.p, &q, RMTAC_METHOD_COMB, &r.p) == RMTAC_OK);
  unsigned digits = 0;
  CHECK(rmtac_result_digits(r.p, &digits) == RMTAC_OK);
  CHECK(digits == 40);
  const std::string re = rmtac_result_real_decimal(r.p);
  CHECK(re.rfind("1.9000000000000000000000000000000000000", 0) == 0);
  CHECK(std::abs(std::stod(re) - 19.0) < 1e-14);
  CHECK(rmtac_result_imag_decimal(r.p) != nullptr);

  // quadrature stays in double whatever the context asks for
  Res q2;
  REQUIRE(rmtac_evaluate(c.p, &q, RMTAC_METHOD_QUADRATURE, &q2.p) == RMTAC_OK);
  CHECK(rmtac_result_digits(q2.p, &digits) == RMTAC_OK);
  CHECK(digits == 0);
  CHECK(rmtac_result_real_decimal(q2.p) == nullptr);
}

TEST_CASE("Monte Carlo results carry a standard error") {
  Ctx c;
  REQUIRE(rmtac_context_set_samples(c.p, 20000) == RMTAC_OK);
  REQUIRE(rmtac_context_set_seed(c.p, 5) == RMTAC_OK);
  const std::vector<rmtac_complex> w = {{0.6, 0.2}};
  const rmtac_query q = query(RMTAC_GROUP_SO, 2, w);
  Res a, b;
  REQUIRE(rmtac_evaluate(c.p, &q, RMTAC_METHOD_MONTECARLO, &a.p) == RMTAC_OK);
  REQUIRE(rmtac_context_set_threads(c.p, 3) == RMTAC_OK);
  REQUIRE(rmtac_evaluate(c.p, &q, RMTAC_METHOD_MONTECARLO, &b.p) == RMTAC_OK);
  int has = 0;
  double se = 0;
  CHECK(rmtac_result_error_estimate(a.p, &has, &se) == RMTAC_OK);
  CHECK(has == 1);
  CHECK(se > 0.0);
  rmtac_complex va, vb;
  rmtac_result_value(a.p, &va);
  rmtac_result_value(b.p, &vb);
  CHECK(va.re == vb.re);
  CHECK(va.im == vb.im);
  const std::complex<double> z(0.6, 0.2);
  CHECK(std::abs(std::complex<double>(va.re, va.im) - (1.0 + std::pow(z, 4))) <= 4 * se);
  rmtac_method m;
  rmtac_result_method(a.p, &m);
  CHECK(m == RMTAC_METHOD_MONTECARLO);

  Res d;
  REQUIRE(rmtac_evaluate(c.p, &q, RMTAC_METHOD_DET, &d.p) == RMTAC_OK);
  CHECK(rmtac_result_error_estimate(d.p, &has, &se) == RMTAC_OK);
  CHECK(has == 0);
}

TEST_CASE("full O with the signed O- convention") {
  Ctx c;
  const std::vector<rmtac_complex> w = {{0.6, 0.2}};
  const rmtac_query q = query(RMTAC_GROUP_O, 1, w);
  CHECK(std::abs(value_of(c.p, q, RMTAC_METHOD_DET) - 1.0) < 1e-14);
  REQUIRE(rmtac_context_set_ominus_sign(c.p, 1) == RMTAC_OK);
  const std::complex<double> z(0.6, 0.2);
  CHECK(std::abs(value_of(c.p, q, RMTAC_METHOD_SCHUR) - z * z) < 1e-14);
  value_of(c.p, q, RMTAC_METHOD_MONTECARLO, RMTAC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("identity report") {
  Ctx c;
  rmtac_identity_report* rep = nullptr;
  CHECK(rmtac_identity_suite(c.p, 0, 1, 6, &rep) == RMTAC_ERR_INVALID_ARGUMENT);
  CHECK(rep == nullptr);
  REQUIRE(rmtac_identity_suite(c.p, 20, 1, 5, &rep) == RMTAC_OK);
  CHECK(rmtac_identity_report_passed(rep) == 1);
  CHECK(rmtac_identity_report_tolerance(rep) == 1e-10);
  const std::size_t n = rmtac_identity_report_count(rep);
  CHECK(n >= 7);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(rmtac_identity_report_name(rep, i) != nullptr);
    CHECK(rmtac_identity_report_residual(rep, i) <= 1e-10);
  }
  CHECK(rmtac_identity_report_name(rep, n) == nullptr);
  CHECK(std::string(rmtac_identity_report_identity3_convention(rep)) == "printed");
  CHECK(rmtac_identity_report_identity3_printed(rep) < rmtac_identity_report_identity3_prose(rep));
  rmtac_identity_report_destroy(rep);
}

TEST_CASE("auxiliary entry points") {
  for (int N = 1; N <= 10; ++N) {
    int64_t d = 0;
    CHECK(rmtac_pairing_determinant(N, &d) == RMTAC_OK);
    CHECK(d == (int64_t{1} << (N - 1)));
  }
  int64_t d;
  CHECK(rmtac_pairing_determinant(0, &d) == RMTAC_ERR_INVALID_ARGUMENT);

  const rmtac_complex b[] = {{1, 0}};
  rmtac_complex r;
  CHECK(rmtac_sp_large_n_ratio(b, 1, 1000, &r) == RMTAC_OK);
  CHECK(std::hypot(r.re - 1.0, r.im) <= 5e-3);

  Ctx c;
  const rmtac_complex w2[] = {{0.6, 0.1}, {-0.4, 0.3}};
  rmtac_complex m, e, closed;
  double res_m = 1, res_e = 1;
  CHECK(rmtac_so_partial_sum(c.p, RMTAC_PARTIAL_M, 2 * 2 + 1, w2, 2, &m, &closed, &res_m) == RMTAC_OK);
  CHECK(rmtac_so_partial_sum(c.p, RMTAC_PARTIAL_E, 2 * 2 + 1, w2, 2, &e, &closed, &res_e) == RMTAC_OK);
  CHECK(res_m <= 1e-10);
  CHECK(res_e <= 1e-10);
  const std::vector<rmtac_complex> wv(w2, w2 + 2);
  const auto det = value_of(c.p, query(RMTAC_GROUP_SO, 2, wv), RMTAC_METHOD_DET);
  CHECK(std::abs(std::complex<double>(m.re + e.re, m.im + e.im) - det) <= 1e-10 * std::abs(det));

  double fe = 1, zfe = 1;
  CHECK(rmtac_functional_equation_check(RMTAC_GROUP_USP, 3, 1, 100, &fe, &zfe) == RMTAC_OK);
  CHECK(fe <= 1e-12);
  CHECK(zfe <= 1e-12);
  CHECK(rmtac_functional_equation_check(RMTAC_GROUP_O, 3, 1, 100, &fe, &zfe) == RMTAC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("contexts can be shared across threads") {
  Ctx c;
  const std::vector<rmtac_complex> w = {{0.3, 0.2}, {-0.5, 0.6}, {1.1, -0.1}};
  const rmtac_query q = query(RMTAC_GROUP_U, 3, w, 1);
  const auto ref = value_of(c.p, q, RMTAC_METHOD_SCHUR);
  std::vector<std::complex<double>> got(4);
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t)
    pool.emplace_back([&, t] {
      rmtac_result* r = nullptr;
      if (rmtac_evaluate(c.p, &q, RMTAC_METHOD_COMB, &r) == RMTAC_OK) {
        rmtac_complex v;
        rmtac_result_value(r, &v);
        got[t] = {v.re, v.im};
      }
      rmtac_result_destroy(r);
    });
  for (auto& th : pool) th.join();
  for (const auto& g : got) CHECK(std::abs(g - ref) <= 1e-10 * std::abs(ref));
}

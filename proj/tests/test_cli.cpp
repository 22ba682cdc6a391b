#include <doctest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_support.hpp"

using cli::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " RMT_AUTOCORR_BIN " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json parsed(const Run& r) {
  INFO(r.out);
  REQUIRE(!r.out.empty());
  return json::parse(r.out);
}

double re_of(const json& v) { return v.at("re").get<double>(); }

}  // namespace

TEST_CASE("complex literal grammar") {
  auto eq = [](rmtac_complex z, double re, double im) { return z.re == re && z.im == im; };
  CHECK(eq(cli::parse_complex("2"), 2, 0));
  CHECK(eq(cli::parse_complex("0.5+1.5i"), 0.5, 1.5));
  CHECK(eq(cli::parse_complex("-i"), 0, -1));
  CHECK(eq(cli::parse_complex("3j"), 0, 3));
  CHECK(eq(cli::parse_complex("1e-3-2.5e-1i"), 1e-3, -0.25));
  CHECK(eq(cli::parse_complex(" 1.25 "), 1.25, 0));
  CHECK_THROWS_AS(cli::parse_complex(""), cli::UsageError);
  CHECK_THROWS_AS(cli::parse_complex("1+"), cli::UsageError);
  CHECK_THROWS_AS(cli::parse_complex("abc"), cli::UsageError);
  const auto list = cli::parse_complex_list("2,3-1i,0");
  REQUIRE(list.size() == 3);
  CHECK(eq(list[1], 3, -1));
  CHECK(cli::parse_integer_list("10,100,1000") == std::vector<long long>{10, 100, 1000});
  CHECK_THROWS_AS(cli::parse_integer_list("10,x"), cli::UsageError);
}

TEST_CASE("group and method names") {
  CHECK(cli::parse_group("usp") == RMTAC_GROUP_USP);
  CHECK(cli::parse_group("o-") == RMTAC_GROUP_OMINUS);
  CHECK(cli::parse_method("eps") == RMTAC_METHOD_COMB);
  CHECK_THROWS_AS(cli::parse_group("gl"), cli::UsageError);
  CHECK_THROWS_AS(cli::parse_method("magic"), cli::UsageError);
}

TEST_CASE("thread resolution") {
  ::unsetenv("RMT_AUTOCORR_THREADS");
  CHECK(cli::resolve_threads(std::nullopt) == 1);
  ::setenv("RMT_AUTOCORR_THREADS", "3", 1);
  CHECK(cli::resolve_threads(std::nullopt) == 3);
  CHECK(cli::resolve_threads(2u) == 2);
  ::setenv("RMT_AUTOCORR_THREADS", "zero", 1);
  CHECK(cli::resolve_threads(std::nullopt) == 1);
  ::unsetenv("RMT_AUTOCORR_THREADS");
}

TEST_CASE("random shifts are seeded and separated") {
  const auto a = cli::random_shifts(4, 9), b = cli::random_shifts(4, 9);
  REQUIRE(a.size() == 4);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].re == b[i].re);
    const double r = std::hypot(a[i].re, a[i].im);
    CHECK(r >= 0.5);
    CHECK(r <= 2.0);
    for (std::size_t j = 0; j < i; ++j) CHECK(std::hypot(a[i].re - a[j].re, a[i].im - a[j].im) >= 0.05);
  }
}

TEST_CASE("compute examples") {
  const Run usp = run("compute --group usp --N 1 --shifts 2 --method eps");
  CHECK(usp.code == 0);
  const json j = parsed(usp);
  CHECK(re_of(j.at("value")) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(j.at("method") == "eps");
  CHECK(j.at("error_estimate").is_null());
  CHECK(j.at("query").at("group") == "usp");

  const Run so = run("compute --group so --N 1 --shifts 0 --method schur");
  CHECK(so.code == 0);
  CHECK(re_of(parsed(so).at("value")) == 1.0);

  const Run u = run("compute --group u --N 2 --m 1 --n 2 --shifts 1,1 --method schur");
  CHECK(u.code == 0);
  CHECK(re_of(parsed(u).at("value")) == doctest::Approx(3.0).epsilon(1e-14));

  const Run fix = run("compute --group u --N 2 --m 1 --shifts 2,3 --method comb --digits 40");
  CHECK(fix.code == 0);
  const json f = parsed(fix);
  CHECK(f.at("value_decimal").at("re").get<std::string>().rfind("1.900000000000000000000000000000000000", 0) == 0);
  CHECK(f.at("precision").at("digits") == 40);
}

TEST_CASE("alpha input uses each family's convention") {
  const json so = parsed(run("compute --group so --N 1 --alpha 0.2 --method det"));
  CHECK(re_of(so.at("value")) == doctest::Approx(1.0 + std::exp(0.4)).epsilon(1e-13));
  const json om = parsed(run("compute --group ominus --N 1 --alpha 0.2 --method contour"));
  CHECK(re_of(om.at("value")) == doctest::Approx(std::exp(0.4) - 1.0).epsilon(1e-6));
  const json sp = parsed(run("compute --group usp --N 1 --alpha 0.2 --method det"));
  CHECK(re_of(sp.at("value")) == doctest::Approx(1.0 + std::exp(-0.4)).epsilon(1e-13));
}

TEST_CASE("exit codes") {
  CHECK(run("compute --group u --N 2 --m 1 --shifts 0.5,0.5 --method det").code == 3);
  const Run pole = run("compute --group usp --N 2 --shifts 1 --method eps");
  CHECK(pole.code == 3);
  CHECK(parsed(pole).at("error") == "PoleHit");
  CHECK(run("compute --group u --N 2 --m 1 --shifts 1,2 --method schur --nodes -4").code == 2);
  CHECK(run("compute --group xyz --N 2 --shifts 1 --method schur").code == 2);
  CHECK(run("compute --group u --N 2 --m 1 --shifts 1,2 --alpha 0.1 --method schur").code == 2);
  CHECK(run("compute --group u --N 2 --m 1 --n 3 --shifts 1,2 --method schur").code == 2);
  CHECK(run("identity-suite --trials 0").code == 2);
  CHECK(run("montecarlo --group so --N 1 --shifts 0.5 --samples 10").code == 2);
  CHECK(run("no-such-command").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("crosscheck") {
  const Run a = run("crosscheck --group usp --N 2 --random 2 --seed 4 --routes det,schur,eps");
  CHECK(a.code == 0);
  const json j = parsed(a);
  CHECK(j.at("passed") == true);
  CHECK(j.at("max_deviation").get<double>() <= 1e-9);
  CHECK(j.at("routes").size() == 3);
  CHECK(j.at("routes").at("det").contains("wall_time_ms"));
  CHECK(j.at("deviations").size() == 3);

  const Run b = run("crosscheck --group u --N 3 --m 1 --random 3 --seed 2 --routes schur,comb,quadrature --tol 1e-8");
  CHECK(b.code == 0);
  CHECK(parsed(b).at("passed") == true);

  const Run c = run("crosscheck --group u --N 3 --m 1 --shifts 0.5,0.5,0.7 --routes schur,det");
  CHECK(c.code == 3);
  CHECK(parsed(c).at("error") == "NearConfluent");

  // a Monte Carlo route cannot meet a 1e-9 agreement, so the check fails with 4
  const Run d = run("crosscheck --group so --N 1 --shifts 0.5 --routes schur,montecarlo --samples 1000");
  CHECK(d.code == 4);
  CHECK(parsed(d).at("passed") == false);
}

TEST_CASE("JSON output round-trips byte for byte") {
  for (const char* args : {"compute --group u --N 3 --m 1 --shifts 0.3+0.1i,-0.7+0.2i,1.1 --method det",
                           "compute --group so --N 2 --random 2 --seed 7 --method montecarlo --samples 2000",
                           "identity-suite --trials 5 --max-n 4",
                           "montecarlo --group so --N 1 --shifts 0.5 --samples 1000"}) {
    INFO(args);
    const Run r = run(args);
    CHECK((r.code == 0 || r.code == 4));
    std::string text = r.out;
    while (!text.empty() && text.back() == '\n') text.pop_back();
    CHECK(json::parse(text).dump() == text);
  }
}

TEST_CASE("identity suite") {
  const Run r = run("identity-suite --trials 30 --seed 3");
  CHECK(r.code == 0);
  const json j = parsed(r);
  CHECK(j.at("passed") == true);
  CHECK(j.at("identity3").at("convention") == "printed");
  CHECK(j.at("identity3").at("prose_max").get<double>() > 1e-3);
  for (const auto& [name, v] : j.at("max_residual").items()) {
    INFO(name);
    CHECK(v.get<double>() <= 1e-10);
  }
  const Run x = run("identity-suite --trials 3 --digits 40 --max-n 3");
  CHECK(x.code == 0);
  CHECK(parsed(x).at("tolerance").get<double>() == doctest::Approx(1e-30));
}

TEST_CASE("Monte Carlo comparison") {
  const Run so = run("montecarlo --group so --N 1 --shifts 0.5 --samples 100000 --seed 1");
  CHECK(so.code == 0);
  const json j = parsed(so);
  CHECK(re_of(j.at("exact")) == doctest::Approx(1.25).epsilon(1e-14));
  CHECK(std::abs(j.at("z_score").get<double>()) <= 4.0);

  const Run sp = run("montecarlo --group usp --N 2 --shifts 0.9 --samples 100000 --seed 2");
  CHECK(sp.code == 0);
  CHECK(std::abs(parsed(sp).at("z_score").get<double>()) <= 4.0);

  const std::string args = "montecarlo --group usp --N 3 --shifts 0.9,0.4+0.3i --samples 20000 --seed 5";
  const Run one = run(args + " --threads 1");
  const Run four = run(args + " --threads 4");
  const Run env = run(args, "RMT_AUTOCORR_THREADS=3");
  CHECK(one.out == four.out);
  CHECK(one.out == env.out);
  CHECK(run(args).out == one.out);
}

TEST_CASE("scaling table") {
  const Run r = run("scaling --b 1 --Ns 10,100,1000,10000");
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "N,ratio_re,ratio_im,abs_err");
  double prev = INFINITY;
  int rows = 0;
  while (std::getline(in, line)) {
    const double err = std::stod(line.substr(line.rfind(',') + 1));
    CHECK(err < prev);
    prev = err;
    ++rows;
  }
  CHECK(rows == 4);

  const Run two = run("scaling --b 1,0.5 --Ns 10000");
  std::istringstream in2(two.out);
  std::getline(in2, line);
  std::getline(in2, line);
  CHECK(std::stod(line.substr(line.rfind(',') + 1)) <= 2e-3);

  CHECK(run("scaling --b 1,-1 --Ns 100").code == 3);
}

TEST_CASE("--out writes the report to a file") {
  const auto path = std::filesystem::temp_directory_path() / "rmt_autocorr_cli_out.json";
  std::filesystem::remove(path);
  const Run r = run("compute --group usp --N 1 --shifts 2 --method eps --out " + path.string());
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == run("compute --group usp --N 1 --shifts 2 --method eps").out);
  std::filesystem::remove(path);
}

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "cli_support.hpp"

using namespace cli;

namespace {

struct QueryArgs {
  std::string group = "u";
  int N = 1;
  int m = 0;
  std::optional<int> n;
  std::optional<std::string> shifts;
  std::optional<std::string> alpha;
  std::optional<std::size_t> random;
  std::uint64_t seed = 1;
  unsigned digits = 0;
  std::optional<unsigned> threads;
  int nodes = 0;
  int contour_nodes = 128;
  bool with_ominus_sign = false;
  std::optional<std::string> out;
};

void add_query_options(CLI::App* cmd, QueryArgs& a) {
  cmd->add_option("--group", a.group, "u, usp, so, ominus or o")->capture_default_str();
  cmd->add_option("--N", a.N, "size parameter (U(N), USp(2N), SO(2N), O-(2N))")->capture_default_str();
  cmd->add_option("--m", a.m, "unitary: number of Lambda factors")->capture_default_str();
  cmd->add_option("--n", a.n, "number of shifts (checked against the list)");
  auto* sh = cmd->add_option("--shifts", a.shifts, "comma-separated w values, e.g. 0.5,1+2i");
  auto* al = cmd->add_option("--alpha", a.alpha, "comma-separated alpha values: w = e^{-alpha} (u, usp), e^{+alpha} (so, ominus, o)");
  auto* rn = cmd->add_option("--random", a.random, "draw this many seed-pinned shifts with 0.5 <= |w| <= 2");
  sh->excludes(al)->excludes(rn);
  al->excludes(rn);
  cmd->add_option("--seed", a.seed, "random seed")->capture_default_str();
  cmd->add_option("--digits", a.digits, "decimal digits for the exact routes (0: machine double)")->capture_default_str();
  cmd->add_option("--threads", a.threads, "thread cap (default: RMT_AUTOCORR_THREADS or 1)");
  cmd->add_option("--nodes", a.nodes, "quadrature nodes per angle (0: default)")->capture_default_str();
  cmd->add_option("--contour-nodes", a.contour_nodes, "contour nodes per dimension")->capture_default_str();
  cmd->add_flag("--with-ominus-sign", a.with_ominus_sign, "full O(2N): keep the (-1)^k sign on the O- half");
  cmd->add_option("--out", a.out, "write the output to this file instead of stdout");
}

struct PreparedQuery {
  rmtac_query q{};
  std::vector<rmtac_complex> shifts;
  json echo;
};

PreparedQuery prepare(const QueryArgs& a) {
  PreparedQuery p;
  p.q.group = parse_group(a.group);
  p.q.N = a.N;
  p.q.m = a.m;
  p.q.shift_kind = a.alpha ? RMTAC_SHIFT_ALPHA : RMTAC_SHIFT_W;
  if (a.shifts) p.shifts = parse_complex_list(*a.shifts);
  else if (a.alpha) p.shifts = parse_complex_list(*a.alpha);
  else if (a.random) p.shifts = random_shifts(*a.random, a.seed);
  else throw UsageError("one of --shifts, --alpha or --random is required");
  if (p.shifts.empty()) throw UsageError("at least one shift is required");
  if (a.n && static_cast<std::size_t>(*a.n) != p.shifts.size())
    throw UsageError("--n does not match the number of shifts");
  if (a.N < 1) throw UsageError("--N must be positive");
  if (p.q.group == RMTAC_GROUP_U && (a.m < 0 || static_cast<std::size_t>(a.m) > p.shifts.size()))
    throw UsageError("--m must lie in [0, n]");
  p.q.shifts = p.shifts.data();
  p.q.shift_count = p.shifts.size();

  json list = json::array();
  for (const rmtac_complex& z : p.shifts) list.push_back(complex_json(z));
  p.echo = {{"group", rmtac_group_name(p.q.group)},
            {"N", a.N},
            {"n", p.shifts.size()},
            {"shift_kind", a.alpha ? "alpha" : "w"},
            {"shifts", list}};
  if (p.q.group == RMTAC_GROUP_U) p.echo["m"] = a.m;
  if (p.q.group == RMTAC_GROUP_O) p.echo["with_ominus_sign"] = a.with_ominus_sign;
  return p;
}

void configure(const Context& ctx, const QueryArgs& a) {
  check(rmtac_context_set_digits(ctx.get(), a.digits));
  check(rmtac_context_set_threads(ctx.get(), resolve_threads(a.threads)));
  check(rmtac_context_set_quadrature_nodes(ctx.get(), a.nodes));
  check(rmtac_context_set_contour_nodes(ctx.get(), a.contour_nodes));
  check(rmtac_context_set_seed(ctx.get(), a.seed));
  check(rmtac_context_set_ominus_sign(ctx.get(), a.with_ominus_sign ? 1 : 0));
}

std::string method_label(rmtac_method method, rmtac_group group) {
  if (method == RMTAC_METHOD_COMB) return group == RMTAC_GROUP_U ? "comb" : "eps";
  return rmtac_method_name(method);
}

json precision_json(unsigned digits, double tol) {
  return {{"mode", digits ? "extended" : "double"}, {"digits", digits}, {"agreement_tol", tol}};
}

json value_json(const Evaluation& e) {
  json j = {{"value", complex_json(e.value)}};
  j["error_estimate"] = e.error_estimate ? json(*e.error_estimate) : json(nullptr);
  if (e.digits) j["value_decimal"] = {{"re", e.re_decimal}, {"im", e.im_decimal}};
  return j;
}

double deviation(const rmtac_complex& a, const rmtac_complex& b) {
  const double diff = std::hypot(a.re - b.re, a.im - b.im);
  const double scale = std::max(std::hypot(a.re, a.im), std::hypot(b.re, b.im));
  return scale > 0.0 ? diff / scale : 0.0;
}

int run_compute(const QueryArgs& a, const std::string& method_name, std::size_t samples) {
  const PreparedQuery p = prepare(a);
  const rmtac_method method = parse_method(method_name);
  Context ctx;
  configure(ctx, a);
  check(rmtac_context_set_samples(ctx.get(), samples));
  const Evaluation e = evaluate(ctx, p.q, method);
  json out = value_json(e);
  out["method"] = method_label(method, p.q.group);
  out["query"] = p.echo;
  out["precision"] = precision_json(a.digits, 1e-9);
  if (method == RMTAC_METHOD_MONTECARLO) out["samples"] = samples;
  emit(out.dump(), a.out);
  return kOk;
}

int run_crosscheck(const QueryArgs& a, const std::string& routes_text, double tol, std::size_t samples) {
  const PreparedQuery p = prepare(a);
  std::vector<std::pair<std::string, rmtac_method>> routes;
  std::set<rmtac_method> seen;
  std::stringstream ss(routes_text);
  for (std::string item; std::getline(ss, item, ',');) {
    const rmtac_method m = parse_method(item);
    if (!seen.insert(m).second) throw UsageError("route '" + item + "' listed twice");
    routes.emplace_back(method_label(m, p.q.group), m);
  }
  if (routes.size() < 2) throw UsageError("--routes needs at least two routes");
  if (!(tol > 0.0)) throw UsageError("--tol must be positive");

  Context ctx;
  configure(ctx, a);
  check(rmtac_context_set_samples(ctx.get(), samples));
  json per_route = json::object();
  std::vector<std::pair<std::string, rmtac_complex>> values;
  for (const auto& [label, method] : routes) {
    const auto start = std::chrono::steady_clock::now();
    const Evaluation e = evaluate(ctx, p.q, method);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    json r = value_json(e);
    r["wall_time_ms"] = ms;
    per_route[label] = r;
    values.emplace_back(label, e.value);
  }
  json devs = json::object();
  double worst = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      const double d = deviation(values[i].second, values[j].second);
      devs[values[i].first + "~" + values[j].first] = d;
      worst = std::max(worst, d);
    }
  const bool passed = worst <= tol;
  json out = {{"query", p.echo},
              {"precision", precision_json(a.digits, tol)},
              {"routes", per_route},
              {"deviations", devs},
              {"max_deviation", worst},
              {"agreement_tol", tol},
              {"passed", passed}};
  emit(out.dump(), a.out);
  return passed ? kOk : kCheckFailed;
}

int run_identity_suite(long long trials, std::uint64_t seed, unsigned digits, int max_n,
                       const std::optional<std::string>& out_path) {
  if (trials < 1) throw UsageError("--trials must be >= 1");
  if (max_n < 1) throw UsageError("--max-n must be >= 1");
  Context ctx;
  check(rmtac_context_set_digits(ctx.get(), digits));
  rmtac_identity_report* report = nullptr;
  check(rmtac_identity_suite(ctx.get(), static_cast<unsigned>(trials), seed, max_n, &report));
  json residuals = json::object();
  for (std::size_t i = 0; i < rmtac_identity_report_count(report); ++i)
    residuals[rmtac_identity_report_name(report, i)] = rmtac_identity_report_residual(report, i);
  const bool passed = rmtac_identity_report_passed(report) != 0;
  json out = {{"trials", trials},
              {"seed", seed},
              {"max_n", max_n},
              {"precision", precision_json(digits, rmtac_identity_report_tolerance(report))},
              {"max_residual", residuals},
              {"tolerance", rmtac_identity_report_tolerance(report)},
              {"identity3",
               {{"convention", rmtac_identity_report_identity3_convention(report)},
                {"printed_max", rmtac_identity_report_identity3_printed(report)},
                {"prose_max", rmtac_identity_report_identity3_prose(report)}}},
              {"passed", passed}};
  rmtac_identity_report_destroy(report);
  emit(out.dump(), out_path);
  return passed ? kOk : kCheckFailed;
}

int run_montecarlo(const QueryArgs& a, std::size_t samples) {
  if (samples < 100) throw UsageError("--samples must be >= 100");
  const PreparedQuery p = prepare(a);
  Context ctx;
  configure(ctx, a);
  check(rmtac_context_set_samples(ctx.get(), samples));
  const Evaluation exact = evaluate(ctx, p.q, RMTAC_METHOD_SCHUR);
  const Evaluation mc = evaluate(ctx, p.q, RMTAC_METHOD_MONTECARLO);
  const double se = mc.error_estimate.value_or(0.0);
  const double diff = std::hypot(mc.value.re - exact.value.re, mc.value.im - exact.value.im);
  double z;
  if (se > 0.0) z = diff / se;
  else z = diff <= 1e-12 * std::max(1.0, std::hypot(exact.value.re, exact.value.im)) ? 0.0 : INFINITY;
  const bool passed = z <= 4.0;
  json out = {{"query", p.echo},
              {"samples", samples},
              {"seed", a.seed},
              {"exact", complex_json(exact.value)},
              {"exact_method", "schur"},
              {"mean", complex_json(mc.value)},
              {"std_error", se},
              {"z_score", std::isfinite(z) ? json(z) : json(nullptr)},
              {"z_limit", 4.0},
              {"passed", passed}};
  emit(out.dump(), a.out);
  return passed ? kOk : kCheckFailed;
}

std::string format_row(long long N, const rmtac_complex& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g,%.17g", N, r.re, r.im, std::hypot(r.re - 1.0, r.im));
  return buf;
}

int run_scaling(const std::string& b_text, std::optional<int> k, const std::string& ns_text,
                const std::optional<std::string>& out_path) {
  const std::vector<rmtac_complex> b = parse_complex_list(b_text);
  if (k && static_cast<std::size_t>(*k) != b.size()) throw UsageError("--k does not match the number of b values");
  const std::vector<long long> ns = parse_integer_list(ns_text);
  std::string csv = "N,ratio_re,ratio_im,abs_err";
  for (long long N : ns) {
    if (N < 1) throw UsageError("N values must be positive");
    rmtac_complex r{};
    check(rmtac_sp_large_n_ratio(b.data(), b.size(), N, &r));
    csv += "\n" + format_row(N, r);
  }
  emit(csv, out_path);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact autocorrelations of characteristic polynomials over U(N), USp(2N), SO(2N) and O-(2N)"};
  app.require_subcommand(1);

  QueryArgs compute_args;
  std::string compute_method = "schur";
  std::size_t compute_samples = 100000;
  auto* compute = app.add_subcommand("compute", "evaluate one route; prints a JSON line");
  add_query_options(compute, compute_args);
  compute->add_option("--method", compute_method, "schur, det, comb, eps, contour, quadrature or montecarlo")
      ->capture_default_str();
  compute->add_option("--samples", compute_samples, "Monte Carlo samples")->capture_default_str();

  QueryArgs cross_args;
  std::string cross_routes = "schur,det,comb";
  double cross_tol = 1e-9;
  std::size_t cross_samples = 100000;
  auto* cross = app.add_subcommand("crosscheck", "evaluate several routes and compare them");
  add_query_options(cross, cross_args);
  cross->add_option("--routes", cross_routes, "comma-separated routes")->capture_default_str();
  cross->add_option("--tol", cross_tol, "largest accepted pairwise relative deviation")->capture_default_str();
  cross->add_option("--samples", cross_samples, "Monte Carlo samples")->capture_default_str();

  long long id_trials = 500;
  std::uint64_t id_seed = 1;
  unsigned id_digits = 0;
  int id_max_n = 6;
  std::optional<std::string> id_out;
  auto* ids = app.add_subcommand("identity-suite", "check the supporting identities on random inputs");
  ids->add_option("--trials", id_trials, "random trials")->capture_default_str();
  ids->add_option("--seed", id_seed, "random seed")->capture_default_str();
  ids->add_option("--digits", id_digits, "decimal digits (0: machine double)")->capture_default_str();
  ids->add_option("--max-n", id_max_n, "largest number of variables")->capture_default_str();
  ids->add_option("--out", id_out, "write the output to this file instead of stdout");

  QueryArgs mc_args;
  std::size_t mc_samples = 100000;
  auto* mc = app.add_subcommand("montecarlo", "compare a Haar Monte Carlo mean with the exact value");
  add_query_options(mc, mc_args);
  mc->add_option("--samples", mc_samples, "number of sampled matrices")->capture_default_str();

  std::string sc_b;
  std::optional<int> sc_k;
  std::string sc_ns = "10,100,1000,10000";
  std::optional<std::string> sc_out;
  auto* sc = app.add_subcommand("scaling", "USp(2N) large-N ratios as CSV");
  sc->add_option("--b", sc_b, "comma-separated b values")->required();
  sc->add_option("--k", sc_k, "number of b values (checked)");
  sc->add_option("--Ns", sc_ns, "comma-separated N values")->capture_default_str();
  sc->add_option("--out", sc_out, "write the output to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  std::string command = app.get_subcommands().front()->get_name();
  std::optional<std::string> out_path;
  try {
    if (compute->parsed()) {
      out_path = compute_args.out;
      return run_compute(compute_args, compute_method, compute_samples);
    }
    if (cross->parsed()) {
      out_path = cross_args.out;
      return run_crosscheck(cross_args, cross_routes, cross_tol, cross_samples);
    }
    if (ids->parsed()) {
      out_path = id_out;
      return run_identity_suite(id_trials, id_seed, id_digits, id_max_n, id_out);
    }
    if (mc->parsed()) {
      out_path = mc_args.out;
      return run_montecarlo(mc_args, mc_samples);
    }
    out_path = sc_out;
    return run_scaling(sc_b, sc_k, sc_ns, sc_out);
  } catch (const UsageError& e) {
    std::cerr << command << ": " << e.what() << '\n';
    return kUsage;
  } catch (const RouteFailure& e) {
    std::cerr << command << ": " << e.what() << '\n';
    const json err = {{"command", command}, {"error", rmtac_status_name(e.status)}, {"message", e.what()}};
    try {
      emit(err.dump(), out_path);
    } catch (const UsageError&) {
      std::cout << err.dump() << '\n';
    }
    return e.status == RMTAC_ERR_INTERNAL ? 1 : kNumerical;
  }
}

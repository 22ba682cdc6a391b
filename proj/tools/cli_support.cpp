#include "cli_support.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

namespace cli {

namespace {

std::string strip(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

double parse_real(const std::string& s, const std::string& whole) {
  if (s.empty()) throw UsageError("malformed complex literal '" + whole + "'");
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + s.size() || !std::isfinite(v)) throw UsageError("malformed complex literal '" + whole + "'");
  return v;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (!text.empty() && text.back() == ',') parts.emplace_back();
  return parts;
}

}  // namespace

rmtac_complex parse_complex(const std::string& text) {
  const std::string s = strip(text);
  if (s.empty()) throw UsageError("empty complex literal");
  const char last = s.back();
  if (last != 'i' && last != 'j') return {parse_real(s, text), 0.0};

  const std::string body = s.substr(0, s.size() - 1);
  // The imaginary part starts at the last sign that is not an exponent sign.
  std::size_t cut = std::string::npos;
  for (std::size_t p = body.size(); p-- > 0;) {
    if ((body[p] == '+' || body[p] == '-') && !(p > 0 && (body[p - 1] == 'e' || body[p - 1] == 'E'))) {
      cut = p;
      break;
    }
  }
  std::string re_part, im_part;
  if (cut == std::string::npos || cut == 0) {
    im_part = body;
  } else {
    re_part = body.substr(0, cut);
    im_part = body.substr(cut);
  }
  double im;
  if (im_part.empty() || im_part == "+") im = 1.0;
  else if (im_part == "-") im = -1.0;
  else im = parse_real(im_part, text);
  const double re = re_part.empty() ? 0.0 : parse_real(re_part, text);
  return {re, im};
}

std::vector<rmtac_complex> parse_complex_list(const std::string& text) {
  std::vector<rmtac_complex> out;
  for (const std::string& item : split_commas(text)) out.push_back(parse_complex(item));
  if (out.empty()) throw UsageError("empty shift list");
  return out;
}

std::vector<long long> parse_integer_list(const std::string& text) {
  std::vector<long long> out;
  for (const std::string& raw : split_commas(text)) {
    const std::string item = strip(raw);
    char* end = nullptr;
    const long long v = std::strtoll(item.c_str(), &end, 10);
    if (item.empty() || end != item.c_str() + item.size()) throw UsageError("malformed integer '" + raw + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

rmtac_group parse_group(const std::string& name) {
  static const std::map<std::string, rmtac_group> names = {
      {"u", RMTAC_GROUP_U},           {"usp", RMTAC_GROUP_USP},    {"so", RMTAC_GROUP_SO},
      {"ominus", RMTAC_GROUP_OMINUS}, {"o-", RMTAC_GROUP_OMINUS}, {"o", RMTAC_GROUP_O}};
  std::string key;
  for (char c : name) key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  const auto it = names.find(key);
  if (it == names.end()) throw UsageError("unknown group '" + name + "' (u, usp, so, ominus, o)");
  return it->second;
}

rmtac_method parse_method(const std::string& name) {
  static const std::map<std::string, rmtac_method> names = {
      {"schur", RMTAC_METHOD_SCHUR},         {"det", RMTAC_METHOD_DET},
      {"comb", RMTAC_METHOD_COMB},           {"eps", RMTAC_METHOD_COMB},
      {"contour", RMTAC_METHOD_CONTOUR},     {"quadrature", RMTAC_METHOD_QUADRATURE},
      {"montecarlo", RMTAC_METHOD_MONTECARLO}};
  const auto it = names.find(name);
  if (it == names.end())
    throw UsageError("unknown method '" + name + "' (schur, det, comb, eps, contour, quadrature, montecarlo)");
  return it->second;
}

void check(rmtac_status status) {
  if (status == RMTAC_OK) return;
  if (status == RMTAC_ERR_INVALID_ARGUMENT) throw UsageError(rmtac_last_error_message());
  throw RouteFailure(status, rmtac_last_error_message());
}

unsigned resolve_threads(std::optional<unsigned> flag) {
  if (flag) {
    if (*flag == 0) throw UsageError("--threads must be positive");
    return *flag;
  }
  if (const char* env = std::getenv("RMT_AUTOCORR_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    std::cerr << "ignoring malformed RMT_AUTOCORR_THREADS='" << env << "'\n";
  }
  return 1;
}

std::vector<rmtac_complex> random_shifts(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.5, 2.0), phase(0.0, 2.0 * std::numbers::pi);
  std::vector<rmtac_complex> out;
  while (out.size() < count) {
    const double r = radius(rng), t = phase(rng);
    const rmtac_complex z{r * std::cos(t), r * std::sin(t)};
    bool far = true;
    for (const rmtac_complex& o : out) far = far && std::hypot(o.re - z.re, o.im - z.im) >= 0.05;
    if (far) out.push_back(z);
  }
  return out;
}

json complex_json(const rmtac_complex& z) { return json{{"re", z.re}, {"im", z.im}}; }

void emit(const std::string& text, const std::optional<std::string>& out_path) {
  if (!out_path) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream f(*out_path, std::ios::trunc);
  if (!f) throw UsageError("cannot open output file '" + *out_path + "'");
  f << text << '\n';
}

Context::Context() { check(rmtac_context_create(&ctx_)); }
Context::~Context() { rmtac_context_destroy(ctx_); }

Evaluation evaluate(const Context& ctx, const rmtac_query& q, rmtac_method method) {
  rmtac_result* r = nullptr;
  check(rmtac_evaluate(ctx.get(), &q, method, &r));
  Evaluation e;
  rmtac_result_value(r, &e.value);
  int has = 0;
  double se = 0.0;
  rmtac_result_error_estimate(r, &has, &se);
  if (has) e.error_estimate = se;
  rmtac_result_digits(r, &e.digits);
  if (e.digits) {
    e.re_decimal = rmtac_result_real_decimal(r);
    e.im_decimal = rmtac_result_imag_decimal(r);
  }
  rmtac_result_destroy(r);
  return e;
}

}  // namespace cli

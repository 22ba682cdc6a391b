#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rmtac/rmtac.h"

namespace cli {

using nlohmann::json;

/// Bad command-line input; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A failed library call; carries the status name for the JSON error record.
struct RouteFailure : std::runtime_error {
  rmtac_status status;
  RouteFailure(rmtac_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

enum ExitCode { kOk = 0, kUsage = 2, kNumerical = 3, kCheckFailed = 4 };

/// Parses "a+bi", "a", "bi", "-i", "1e-3-2.5e-1i" (j accepted for i).
rmtac_complex parse_complex(const std::string& text);

/// Comma-separated complex literals.
std::vector<rmtac_complex> parse_complex_list(const std::string& text);

std::vector<long long> parse_integer_list(const std::string& text);

rmtac_group parse_group(const std::string& name);
rmtac_method parse_method(const std::string& name);

/// Throws RouteFailure when status != RMTAC_OK.
void check(rmtac_status status);

/// Threads from --threads, else RMT_AUTOCORR_THREADS, else 1.
unsigned resolve_threads(std::optional<unsigned> flag);

/// Deterministic shifts in the annulus 0.5 <= |w| <= 2 with separation >= 0.05.
std::vector<rmtac_complex> random_shifts(std::size_t count, std::uint64_t seed);

json complex_json(const rmtac_complex& z);

/// Writes `text` (a trailing newline is added) to --out when given, else stdout.
void emit(const std::string& text, const std::optional<std::string>& out_path);

/// RAII owner of a context.
class Context {
 public:
  Context();
  ~Context();
  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;
  rmtac_context* get() const { return ctx_; }

 private:
  rmtac_context* ctx_ = nullptr;
};

struct Evaluation {
  rmtac_complex value{};
  std::optional<double> error_estimate;
  unsigned digits = 0;
  std::string re_decimal, im_decimal;
};

Evaluation evaluate(const Context& ctx, const rmtac_query& q, rmtac_method method);

}  // namespace cli

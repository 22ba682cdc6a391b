#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rmtac {

enum class ErrorKind {
  InvalidArgument,
  NearConfluent,
  PoleHit,
  DimensionCap,
  ContourTooTight,
  Inconsistent,
};

constexpr std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NearConfluent: return "NearConfluent";
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::DimensionCap: return "DimensionCap";
    case ErrorKind::ContourTooTight: return "ContourTooTight";
    case ErrorKind::Inconsistent: return "Inconsistent";
  }
  return "Unknown";
}

/// Raised by an evaluation route that cannot produce a trustworthy value for
/// its input (a singular configuration, an infeasible grid, bad arguments).
class RouteError : public std::runtime_error {
 public:
  RouteError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw RouteError(ErrorKind::InvalidArgument, what);
}

}  // namespace rmtac

#pragma once

#include <stdexcept>
#include <string>

namespace h3 {

enum class ErrorKind {
  InvalidParams,
  SingularConformalFactor,
  UnsupportedKappa,
  SingularMetric,
  DegeneratePlane,
  BaseMismatch,
  OutOfDomain,
  DegenerateInducedMetric,
  DegenerateAdaptedFrame,
  DegenerateFrame,
  InvalidCombination,
  InvalidProfile,
  QuadratureFailure,
  NotAHelixPatch,
  StencilTooCoarse,
};

const char* to_string(ErrorKind kind) noexcept;

// Configuration-class errors are caller mistakes; the rest are geometric
// failures at a specific point.
bool is_configuration_error(ErrorKind kind) noexcept;

class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace h3

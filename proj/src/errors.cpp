#include "h3geom/errors.hpp"

namespace h3 {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::SingularConformalFactor: return "SingularConformalFactor";
    case ErrorKind::UnsupportedKappa: return "UnsupportedKappa";
    case ErrorKind::SingularMetric: return "SingularMetric";
    case ErrorKind::DegeneratePlane: return "DegeneratePlane";
    case ErrorKind::BaseMismatch: return "BaseMismatch";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::DegenerateInducedMetric: return "DegenerateInducedMetric";
    case ErrorKind::DegenerateAdaptedFrame: return "DegenerateAdaptedFrame";
    case ErrorKind::DegenerateFrame: return "DegenerateFrame";
    case ErrorKind::InvalidCombination: return "InvalidCombination";
    case ErrorKind::InvalidProfile: return "InvalidProfile";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::NotAHelixPatch: return "NotAHelixPatch";
    case ErrorKind::StencilTooCoarse: return "StencilTooCoarse";
  }
  return "Unknown";
}

bool is_configuration_error(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParams:
    case ErrorKind::UnsupportedKappa:
    case ErrorKind::InvalidCombination:
    case ErrorKind::InvalidProfile:
    case ErrorKind::StencilTooCoarse:
      return true;
    default:
      return false;
  }
}

}  // namespace h3

#include "crosshull/errors.hpp"

namespace crosshull {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidBase: return "InvalidBase";
    case ErrorKind::OutsideDomain: return "OutsideDomain";
    case ErrorKind::UnsupportedMap: return "UnsupportedMap";
    case ErrorKind::NoClosedForm: return "NoClosedForm";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::BadOrder: return "BadOrder";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::OutsideAmbient: return "OutsideAmbient";
    case ErrorKind::NotMember: return "NotMember";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::UnsupportedSigmaKind: return "UnsupportedSigmaKind";
    case ErrorKind::NotInHull: return "NotInHull";
    case ErrorKind::SamplingExhausted: return "SamplingExhausted";
    case ErrorKind::UndefinedValue: return "UndefinedValue";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::DenominatorVanishesIdentically: return "DenominatorVanishesIdentically";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace crosshull

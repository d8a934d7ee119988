#include "ucp/error.hpp"

namespace ucp {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::InvalidValue: return "InvalidValue";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotProjection: return "NotProjection";
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::NotOrthogonal: return "NotOrthogonal";
    case ErrorKind::NotAtom: return "NotAtom";
    case ErrorKind::ZeroEvent: return "ZeroEvent";
    case ErrorKind::ZeroProbabilityCondition: return "ZeroProbabilityCondition";
    case ErrorKind::ImpossibleSequence: return "ImpossibleSequence";
    case ErrorKind::NotPredictable: return "NotPredictable";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::EmptyChain: return "EmptyChain";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace ucp

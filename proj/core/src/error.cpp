#include "shellgap/error.hpp"

namespace shellgap {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidGap: return "invalid-gap";
    case ErrorCode::InvalidSequence: return "invalid-sequence";
    case ErrorCode::DegenerateSequence: return "degenerate-sequence";
    case ErrorCode::InvalidParameters: return "invalid-parameters";
    case ErrorCode::StructuralAssumption: return "structural-assumption";
    case ErrorCode::UnknownSequence: return "unknown-sequence";
    case ErrorCode::InvalidConfig: return "invalid-config";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

}  // namespace shellgap

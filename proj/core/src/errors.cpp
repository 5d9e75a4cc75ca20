#include "hdrrt/errors.hpp"

namespace hdrrt {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyStack: return "EmptyStack";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DecodeError: return "DecodeError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ImageTooSmall: return "ImageTooSmall";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::WidthTooSmall: return "WidthTooSmall";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::TooManySeams: return "TooManySeams";
    case ErrorCode::TooManyLevels: return "TooManyLevels";
    case ErrorCode::InconsistentTraces: return "InconsistentTraces";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace hdrrt

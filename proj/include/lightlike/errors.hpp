#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lightlike {

enum class ErrorCode {
    DegenerateMetric,
    OutOfDomain,
    StencilOutOfDomain,
    InvalidParam,
    OutOfRange,
    NoConvergence,
    NonFinite,
    InvalidDescriptor,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::DegenerateMetric: return "DEGENERATE_METRIC";
    case ErrorCode::OutOfDomain: return "OUT_OF_DOMAIN";
    case ErrorCode::StencilOutOfDomain: return "STENCIL_OUT_OF_DOMAIN";
    case ErrorCode::InvalidParam: return "INVALID_PARAM";
    case ErrorCode::OutOfRange: return "OUT_OF_RANGE";
    case ErrorCode::NoConvergence: return "NO_CONVERGENCE";
    case ErrorCode::NonFinite: return "NON_FINITE";
    case ErrorCode::InvalidDescriptor: return "INVALID_DESCRIPTOR";
    }
    return "UNKNOWN";
}

/// Exception carrying a machine-readable code; what() is prefixed with the code name.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace lightlike

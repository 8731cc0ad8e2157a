#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace causalflow {

enum class ErrorCode {
    InvalidInput,
    DimensionMismatch,
    NonStationary,
    SingularCovariance,
    UnknownChannel,
    NoConvergence,
    InsufficientData,
    TopologyMismatch,
};

std::string_view to_string(ErrorCode code);

// Numerical failures (exit code 2 in the CLI) as opposed to input errors.
bool is_numerical(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace causalflow

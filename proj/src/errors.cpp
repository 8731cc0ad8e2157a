#include "causalflow/errors.hpp"

namespace causalflow {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidInput: return "InvalidInput";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NonStationary: return "NonStationary";
        case ErrorCode::SingularCovariance: return "SingularCovariance";
        case ErrorCode::UnknownChannel: return "UnknownChannel";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::InsufficientData: return "InsufficientData";
        case ErrorCode::TopologyMismatch: return "TopologyMismatch";
    }
    return "Unknown";
}

bool is_numerical(ErrorCode code) {
    return code == ErrorCode::SingularCovariance || code == ErrorCode::NoConvergence;
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace causalflow

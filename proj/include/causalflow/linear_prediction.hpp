#pragma once

#include "causalflow/core_model.hpp"

#include <vector>

namespace causalflow {

/// Which channels are predicted, which are observed over the whole past, and which
/// are additionally observed at the prediction instant. Indices refer to spec channels.
struct PredictionSets {
    std::vector<std::size_t> target;
    std::vector<std::size_t> past;
    std::vector<std::size_t> present;
};

struct RiccatiOptions {
    double tolerance = 1e-14;
    int max_iterations = 200000;
};

/// log det of the asymptotic one-step prediction error covariance of the target channels,
/// obtained from the steady state of the Kalman filter that observes `past` channels.
/// Throws NoConvergence if the Riccati recursion does not settle.
double asymptotic_log_prediction_variance(const ARProcessSpec& spec, const PredictionSets& sets,
                                          const RiccatiOptions& options = {});

}  // namespace causalflow

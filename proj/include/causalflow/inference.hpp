#pragma once

#include "causalflow/core_model.hpp"
#include "causalflow/measures.hpp"

#include <cstdint>

namespace causalflow {

struct AnalyticInferenceOptions {
    double edge_threshold = 1e-7;
    RateOptions rate;
};

/// Edge i -> j when I_inf(Di -> j || Dz) exceeds the threshold, edge {i, j} when
/// I_inf(i -> j || Di, Dz) does. z is every other channel under the causally conditioned
/// policy and empty under the pairwise policy.
CausalGraph infer_graph(const ARProcessSpec& spec, ConditioningPolicy policy, const AnalyticInferenceOptions& options = {});

struct EmpiricalInferenceOptions {
    double alpha = 0.05;
    int surrogate_count = 99;
    int lag = 5;
    std::uint64_t seed = 0;
};

struct SurrogateNull {
    double observed = 0.0;
    std::vector<double> null_values;
    std::vector<std::size_t> offsets;

    /// (1 + #{null >= observed}) / (1 + surrogate count).
    double p_value() const;
    bool significant(double alpha) const { return p_value() <= alpha; }
};

/// Distribution of the least-squares Geweke index of x on y (given cond, causally) when x is
/// circularly shifted by a uniform offset in [lag, n - lag]. Needs surrogate_count >= 19.
SurrogateNull surrogate_null(const TimeSeriesPanel& panel, const std::string& x, const std::string& y,
                             const std::vector<std::string>& cond, GewekeKind kind, int surrogate_count,
                             std::uint64_t seed, int lag = 5);

/// Same edge rules on data, with each edge kept when its surrogate p-value is <= alpha.
CausalGraph infer_graph(const TimeSeriesPanel& panel, ConditioningPolicy policy, const EmpiricalInferenceOptions& options);

}  // namespace causalflow

#include "causalflow/inference.hpp"

#include "causalflow/errors.hpp"

#include <algorithm>
#include <random>

namespace causalflow {

namespace {

std::vector<std::string> others(const std::vector<std::string>& names, const std::string& a, const std::string& b) {
    std::vector<std::string> out;
    for (const auto& n : names) {
        if (n != a && n != b) out.push_back(n);
    }
    return out;
}

std::vector<Conditioner> delayed(const std::vector<std::string>& names) {
    std::vector<Conditioner> out;
    for (const auto& n : names) out.push_back({n, ConditioningMode::Delayed});
    return out;
}

// Stream per (seed, edge, kind), keyed by channel names so the draws follow the channels
// rather than their order in the panel.
std::uint64_t edge_seed(std::uint64_t seed, const std::string& from, const std::string& to, int kind) {
    std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                                     static_cast<std::uint32_t>(kind)};
    for (char ch : from) words.push_back(static_cast<unsigned char>(ch));
    words.push_back(0x100);
    for (char ch : to) words.push_back(static_cast<unsigned char>(ch));
    std::seed_seq seq(words.begin(), words.end());
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

}  // namespace

CausalGraph infer_graph(const ARProcessSpec& spec, ConditioningPolicy policy, const AnalyticInferenceOptions& options) {
    const auto& names = spec.channel_names();
    if (names.size() < 2) throw Error(ErrorCode::InvalidInput, "inference needs at least two channels");
    require_stationary(spec);

    CausalGraph graph(names, policy);
    for (std::size_t i = 0; i < names.size(); ++i) {
        for (std::size_t j = 0; j < names.size(); ++j) {
            if (i == j) continue;
            const auto cond = policy == ConditioningPolicy::CausallyConditioned ? delayed(others(names, names[i], names[j]))
                                                                                : std::vector<Conditioner>{};
            const double dynamic = measure_rate(spec, MeasureKind::TE, names[i], names[j], cond, options.rate).value_nats;
            if (dynamic > options.edge_threshold) graph.add_dynamic_edge(names[i], names[j], dynamic);
            if (i < j) {
                const double inst = measure_rate(spec, MeasureKind::IIE, names[i], names[j], cond, options.rate).value_nats;
                if (inst > options.edge_threshold) graph.add_instantaneous_edge(names[i], names[j], inst);
            }
        }
    }
    return graph;
}

double SurrogateNull::p_value() const {
    std::size_t at_least = 0;
    for (double v : null_values) {
        if (v >= observed) ++at_least;
    }
    return static_cast<double>(1 + at_least) / static_cast<double>(1 + null_values.size());
}

SurrogateNull surrogate_null(const TimeSeriesPanel& panel, const std::string& x, const std::string& y,
                             const std::vector<std::string>& cond, GewekeKind kind, int surrogate_count,
                             std::uint64_t seed, int lag) {
    if (surrogate_count < 19) throw Error(ErrorCode::InvalidInput, "surrogate_count must be >= 19");
    const EmpiricalOptions options{lag};
    const auto n = panel.sample_count();
    if (n < static_cast<std::size_t>(2 * lag + 1)) throw Error(ErrorCode::InsufficientData, "panel too short for shifts");

    SurrogateNull out;
    out.observed = geweke_index(panel, kind, x, y, cond, ConditioningMode::Causal, options).value_nats;

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> offset(static_cast<std::size_t>(lag), n - static_cast<std::size_t>(lag));
    out.null_values.reserve(static_cast<std::size_t>(surrogate_count));
    for (int s = 0; s < surrogate_count; ++s) {
        const auto shift = offset(rng);
        out.offsets.push_back(shift);
        const auto shifted = panel.circularly_shifted(x, shift);
        out.null_values.push_back(geweke_index(shifted, kind, x, y, cond, ConditioningMode::Causal, options).value_nats);
    }
    return out;
}

CausalGraph infer_graph(const TimeSeriesPanel& panel, ConditioningPolicy policy, const EmpiricalInferenceOptions& options) {
    const auto& names = panel.channels();
    if (names.size() < 2) throw Error(ErrorCode::InvalidInput, "inference needs at least two channels");
    if (!(options.alpha > 0.0 && options.alpha < 1.0)) throw Error(ErrorCode::InvalidInput, "alpha must be in (0, 1)");

    CausalGraph graph(names, policy);
    for (std::size_t i = 0; i < names.size(); ++i) {
        for (std::size_t j = 0; j < names.size(); ++j) {
            if (i == j) continue;
            const auto cond = policy == ConditioningPolicy::CausallyConditioned ? others(names, names[i], names[j])
                                                                                : std::vector<std::string>{};
            const auto dynamic = surrogate_null(panel, names[i], names[j], cond, GewekeKind::Forward,
                                                options.surrogate_count, edge_seed(options.seed, names[i], names[j], 0), options.lag);
            if (dynamic.significant(options.alpha)) graph.add_dynamic_edge(names[i], names[j], dynamic.observed);
            if (i < j) {
                const auto& a = std::min(names[i], names[j]);
                const auto& b = std::max(names[i], names[j]);
                const auto inst = surrogate_null(panel, a, b, cond, GewekeKind::Instantaneous, options.surrogate_count,
                                                 edge_seed(options.seed, a, b, 1), options.lag);
                if (inst.significant(options.alpha)) graph.add_instantaneous_edge(a, b, inst.observed);
            }
        }
    }
    return graph;
}

}  // namespace causalflow

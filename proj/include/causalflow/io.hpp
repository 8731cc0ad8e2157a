#pragma once

#include "causalflow/core_model.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace causalflow {

inline constexpr std::string_view kSchema = "causalflow/v1";

/// {"channels": [...], "coupling": [[...]], "noise_cov": [[...]]}, matrices row-major,
/// coupling in the X_n = C X_{n-1} + W_n convention (row = receiving channel).
ARProcessSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const ARProcessSpec& spec);
ARProcessSpec load_spec(const std::filesystem::path& path);

/// Header row of channel names, one row per time step, '.' decimal separator.
TimeSeriesPanel read_csv(std::istream& in);
TimeSeriesPanel load_csv(const std::filesystem::path& path);
/// Values are written in shortest round-trip form, so reading them back is exact.
void write_csv(std::ostream& out, const TimeSeriesPanel& panel);
void save_csv(const std::filesystem::path& path, const TimeSeriesPanel& panel);

/// Values are nats unless `bits`, in which case they are divided by ln 2.
nlohmann::json report_to_json(const MeasureReport& report, bool bits = false);
nlohmann::json graph_to_json(const CausalGraph& graph, bool bits = false);
/// Dynamic edges as `a -> b`, instantaneous edges as `a -> b [dir=none]`.
std::string graph_to_dot(const CausalGraph& graph, bool bits = false);

}  // namespace causalflow

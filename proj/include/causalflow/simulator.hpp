#pragma once

#include "causalflow/core_model.hpp"

#include <cstdint>
#include <span>

namespace causalflow {

struct SimulationConfig {
    int path_length = 512;
    int ensemble_size = 1;
    std::uint64_t seed = 0;
    /// When false, paths start at zero and the first burn_in samples are discarded.
    bool stationary_init = true;
    int burn_in = 0;
};

/// R paths of equal length stored contiguously: rows [r * n, (r + 1) * n) belong to path r.
class Ensemble {
public:
    Ensemble(std::vector<std::string> channels, int path_length, Matrix data);

    const std::vector<std::string>& channels() const { return channels_; }
    int path_length() const { return path_length_; }
    int size() const { return static_cast<int>(data_.rows() / path_length_); }
    const Matrix& data() const { return data_; }

    auto path(int r) const { return data_.middleRows(static_cast<Eigen::Index>(r) * path_length_, path_length_); }
    TimeSeriesPanel panel(int r) const;

private:
    std::vector<std::string> channels_;
    int path_length_;
    Matrix data_;
};

/// Number of worker threads: CAUSALFLOW_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

/// Paths of X_n = C X_{n-1} + W_n. Deterministic in (spec, config) regardless of thread count.
Ensemble simulate_ensemble(const ARProcessSpec& spec, const SimulationConfig& config);

/// A single path (ensemble_size is ignored).
TimeSeriesPanel simulate(const ARProcessSpec& spec, const SimulationConfig& config);

/// Pooled covariance over every length-m window of every path, centered on the pooled
/// channel means and normalized by the window count. Windows overlap within a path.
/// Throws InsufficientData when there are fewer than 10 * m * d windows.
GaussianJointModel estimate_window_covariance(const Ensemble& ensemble, int m);
GaussianJointModel estimate_window_covariance(std::span<const TimeSeriesPanel> panels, int m);

}  // namespace causalflow

#include "causalflow/simulator.hpp"

#include "causalflow/ar_analytic.hpp"
#include "causalflow/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <thread>

namespace causalflow {

namespace {

// Paths are generated in fixed blocks, one PRNG stream per block, so results do not
// depend on how blocks are spread over threads.
constexpr int kPathsPerStream = 64;

std::mt19937_64 stream_for(std::uint64_t seed, std::uint64_t block) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
    return std::mt19937_64(seq);
}

void parallel_for(int count, const std::function<void(int)>& body) {
    const int workers = std::min<int>(count, static_cast<int>(worker_count()));
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int i = w; i < count; i += workers) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

using PathAccessor = std::function<Eigen::Ref<const Matrix>(int)>;

GaussianJointModel pooled_window_covariance(const std::vector<std::string>& channels, int path_count,
                                            const PathAccessor& path, int m) {
    if (m < 1) throw Error(ErrorCode::InvalidInput, "window length must be >= 1");
    const auto d = static_cast<Eigen::Index>(channels.size());
    const Eigen::Index width = m * d;

    std::size_t windows = 0;
    Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero(d);
    std::size_t samples = 0;
    for (int r = 0; r < path_count; ++r) {
        const auto p = path(r);
        if (p.cols() != d) throw Error(ErrorCode::DimensionMismatch, "panels must share the same channels");
        if (p.rows() < m) {
            throw Error(ErrorCode::InsufficientData, "path " + std::to_string(r) + " is shorter than the window");
        }
        windows += static_cast<std::size_t>(p.rows() - m + 1);
        samples += static_cast<std::size_t>(p.rows());
        sum += p.colwise().sum();
    }
    if (windows < static_cast<std::size_t>(10 * width)) {
        throw Error(ErrorCode::InsufficientData, std::to_string(windows) + " windows available, " +
                                                     std::to_string(10 * width) + " required");
    }
    const Eigen::RowVectorXd mean = sum / static_cast<double>(samples);

    const int blocks = (path_count + kPathsPerStream - 1) / kPathsPerStream;
    std::vector<Matrix> partial(static_cast<std::size_t>(blocks), Matrix::Zero(width, width));
    parallel_for(blocks, [&](int b) {
        Matrix& acc = partial[static_cast<std::size_t>(b)];
        const int end = std::min(path_count, (b + 1) * kPathsPerStream);
        for (int r = b * kPathsPerStream; r < end; ++r) {
            const auto p = path(r);
            const Eigen::Index count = p.rows() - m + 1;
            Matrix stacked(count, width);
            for (int t = 0; t < m; ++t) {
                stacked.middleCols(t * d, d) = p.middleRows(t, count).rowwise() - mean;
            }
            acc.selfadjointView<Eigen::Lower>().rankUpdate(stacked.transpose());
        }
    });

    Matrix cov = Matrix::Zero(width, width);
    for (const auto& acc : partial) cov += acc;
    cov = cov.selfadjointView<Eigen::Lower>();
    cov /= static_cast<double>(windows);

    std::vector<Variable> variables;
    for (int t = 1; t <= m; ++t) {
        for (const auto& name : channels) variables.push_back({name, t});
    }
    GaussianJointModel model(std::move(variables), std::move(cov));
    model.set_estimate_info({windows, true});
    return model;
}

}  // namespace

Ensemble::Ensemble(std::vector<std::string> channels, int path_length, Matrix data)
    : channels_(std::move(channels)), path_length_(path_length), data_(std::move(data)) {
    if (path_length_ < 1) throw Error(ErrorCode::InvalidInput, "path length must be >= 1");
    if (data_.cols() != static_cast<Eigen::Index>(channels_.size())) {
        throw Error(ErrorCode::DimensionMismatch, "ensemble data width does not match its channels");
    }
    if (data_.rows() % path_length_ != 0) {
        throw Error(ErrorCode::DimensionMismatch, "ensemble rows are not a multiple of the path length");
    }
}

TimeSeriesPanel Ensemble::panel(int r) const {
    if (r < 0 || r >= size()) throw Error(ErrorCode::InvalidInput, "path index out of range");
    return TimeSeriesPanel(channels_, path(r));
}

unsigned worker_count() {
    if (const char* env = std::getenv("CAUSALFLOW_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

Ensemble simulate_ensemble(const ARProcessSpec& spec, const SimulationConfig& config) {
    if (config.path_length < 2) throw Error(ErrorCode::InvalidInput, "path_length must be >= 2");
    if (config.ensemble_size < 1) throw Error(ErrorCode::InvalidInput, "ensemble_size must be >= 1");
    if (config.burn_in < 0) throw Error(ErrorCode::InvalidInput, "burn_in must be >= 0");
    require_stationary(spec);

    const auto d = static_cast<Eigen::Index>(spec.dimension());
    const Matrix chol_stationary = solve_lyapunov(spec).gamma0.llt().matrixL();
    const Matrix chol_noise = spec.noise_cov().llt().matrixL();
    const Matrix& c = spec.coupling();
    const int n = config.path_length;
    const int discard = config.stationary_init ? 0 : config.burn_in;

    Matrix data(static_cast<Eigen::Index>(n) * config.ensemble_size, d);
    const int blocks = (config.ensemble_size + kPathsPerStream - 1) / kPathsPerStream;
    parallel_for(blocks, [&](int b) {
        auto rng = stream_for(config.seed, static_cast<std::uint64_t>(b));
        std::normal_distribution<double> normal;
        Vector xi(d), state(d);
        auto draw = [&] {
            for (Eigen::Index k = 0; k < d; ++k) xi(k) = normal(rng);
        };
        const int end = std::min(config.ensemble_size, (b + 1) * kPathsPerStream);
        for (int r = b * kPathsPerStream; r < end; ++r) {
            if (config.stationary_init) {
                draw();
                state = chol_stationary * xi;
            } else {
                state.setZero();
                for (int t = 0; t < discard; ++t) {
                    draw();
                    state = c * state + chol_noise * xi;
                }
            }
            const Eigen::Index base = static_cast<Eigen::Index>(r) * n;
            data.row(base) = state.transpose();
            for (int t = 1; t < n; ++t) {
                draw();
                state = c * state + chol_noise * xi;
                data.row(base + t) = state.transpose();
            }
        }
    });
    return Ensemble(spec.channel_names(), n, std::move(data));
}

TimeSeriesPanel simulate(const ARProcessSpec& spec, const SimulationConfig& config) {
    SimulationConfig single = config;
    single.ensemble_size = 1;
    return simulate_ensemble(spec, single).panel(0);
}

GaussianJointModel estimate_window_covariance(const Ensemble& ensemble, int m) {
    return pooled_window_covariance(ensemble.channels(), ensemble.size(),
                                    [&](int r) -> Eigen::Ref<const Matrix> { return ensemble.path(r); }, m);
}

GaussianJointModel estimate_window_covariance(std::span<const TimeSeriesPanel> panels, int m) {
    if (panels.empty()) throw Error(ErrorCode::InsufficientData, "no panels supplied");
    for (const auto& p : panels) {
        if (p.channels() != panels.front().channels()) {
            throw Error(ErrorCode::DimensionMismatch, "panels must share the same channels");
        }
    }
    return pooled_window_covariance(panels.front().channels(), static_cast<int>(panels.size()),
                                    [&](int r) -> Eigen::Ref<const Matrix> { return panels[static_cast<std::size_t>(r)].data(); },
                                    m);
}

}  // namespace causalflow

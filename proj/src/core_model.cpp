#include "causalflow/core_model.hpp"

#include "causalflow/ar_analytic.hpp"
#include "causalflow/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

namespace causalflow {

namespace {

constexpr double kSymmetryTolerance = 1e-12;
constexpr double kPsdTolerance = 1e-10;

void require_unique(const std::vector<std::string>& names, std::string_view what) {
    std::unordered_set<std::string> seen;
    for (const auto& name : names) {
        if (name.empty()) throw Error(ErrorCode::InvalidInput, std::string(what) + ": empty channel name");
        if (!seen.insert(name).second) {
            throw Error(ErrorCode::InvalidInput, std::string(what) + ": duplicate channel '" + name + "'");
        }
    }
}

bool is_symmetric(const Matrix& m, double tol) {
    return m.rows() == m.cols() && (m - m.transpose()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, m.cwiseAbs().maxCoeff());
}

std::size_t find_channel(const std::vector<std::string>& names, std::string_view name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw Error(ErrorCode::UnknownChannel, "no channel named '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - names.begin());
}

}  // namespace

// ---------------------------------------------------------------------------
// TimeSeriesPanel

TimeSeriesPanel::TimeSeriesPanel(std::vector<std::string> channels, Matrix data)
    : channels_(std::move(channels)), data_(std::move(data)) {
    require_unique(channels_, "panel");
    if (channels_.empty()) throw Error(ErrorCode::InvalidInput, "panel needs at least one channel");
    if (static_cast<std::size_t>(data_.cols()) != channels_.size()) {
        throw Error(ErrorCode::DimensionMismatch, "panel has " + std::to_string(channels_.size()) +
                                                      " channel names but " + std::to_string(data_.cols()) +
                                                      " data columns");
    }
    if (data_.rows() < 1) throw Error(ErrorCode::InvalidInput, "panel needs at least one sample");
    if (!data_.allFinite()) throw Error(ErrorCode::InvalidInput, "panel contains NaN or infinite values");
}

std::size_t TimeSeriesPanel::channel_index(std::string_view name) const { return find_channel(channels_, name); }

bool TimeSeriesPanel::has_channel(std::string_view name) const {
    return std::find(channels_.begin(), channels_.end(), name) != channels_.end();
}

TimeSeriesPanel TimeSeriesPanel::circularly_shifted(std::string_view name, std::size_t offset) const {
    const auto col = static_cast<Eigen::Index>(channel_index(name));
    const auto n = data_.rows();
    Matrix shifted = data_;
    const auto k = static_cast<Eigen::Index>(offset % static_cast<std::size_t>(n));
    for (Eigen::Index t = 0; t < n; ++t) shifted((t + k) % n, col) = data_(t, col);
    return TimeSeriesPanel(channels_, std::move(shifted));
}

TimeSeriesPanel TimeSeriesPanel::select(const std::vector<std::string>& names) const {
    Matrix out(data_.rows(), static_cast<Eigen::Index>(names.size()));
    for (std::size_t k = 0; k < names.size(); ++k) {
        out.col(static_cast<Eigen::Index>(k)) = data_.col(static_cast<Eigen::Index>(channel_index(names[k])));
    }
    return TimeSeriesPanel(names, std::move(out));
}

// ---------------------------------------------------------------------------
// ARProcessSpec

ARProcessSpec::ARProcessSpec(std::vector<std::string> channel_names, Matrix coupling, Matrix noise_cov)
    : names_(std::move(channel_names)), coupling_(std::move(coupling)), noise_cov_(std::move(noise_cov)) {
    require_unique(names_, "spec");
    const auto d = static_cast<Eigen::Index>(names_.size());
    if (d == 0) throw Error(ErrorCode::InvalidInput, "spec needs at least one channel");
    if (coupling_.rows() != d || coupling_.cols() != d || noise_cov_.rows() != d || noise_cov_.cols() != d) {
        throw Error(ErrorCode::DimensionMismatch, "coupling and noise_cov must both be " + std::to_string(d) + "x" +
                                                      std::to_string(d));
    }
    if (!coupling_.allFinite() || !noise_cov_.allFinite()) {
        throw Error(ErrorCode::InvalidInput, "spec contains NaN or infinite values");
    }
    if (!is_symmetric(noise_cov_, kSymmetryTolerance)) {
        throw Error(ErrorCode::InvalidInput, "noise_cov is not symmetric");
    }
    noise_cov_ = 0.5 * (noise_cov_ + noise_cov_.transpose()).eval();
    Eigen::LLT<Matrix> llt(noise_cov_);
    if (llt.info() != Eigen::Success) throw Error(ErrorCode::InvalidInput, "noise_cov is not positive definite");
}

std::size_t ARProcessSpec::channel_index(std::string_view name) const { return find_channel(names_, name); }

ARProcessSpec ARProcessSpec::permuted(const std::vector<std::size_t>& order) const {
    const auto d = dimension();
    if (order.size() != d || std::set<std::size_t>(order.begin(), order.end()).size() != d ||
        *std::max_element(order.begin(), order.end()) >= d) {
        throw Error(ErrorCode::InvalidInput, "permutation does not match spec dimension");
    }
    std::vector<std::string> names(d);
    Matrix c(d, d), w(d, d);
    for (std::size_t a = 0; a < d; ++a) {
        names[a] = names_[order[a]];
        for (std::size_t b = 0; b < d; ++b) {
            c(a, b) = coupling_(order[a], order[b]);
            w(a, b) = noise_cov_(order[a], order[b]);
        }
    }
    return ARProcessSpec(std::move(names), std::move(c), std::move(w));
}

double spectral_radius(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::EigenSolver<Matrix> solver(m, false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

bool is_stationary(const ARProcessSpec& spec) { return spectral_radius(spec.coupling()) < 1.0 - kStationarityMargin; }

void require_stationary(const ARProcessSpec& spec) {
    const double rho = spectral_radius(spec.coupling());
    if (!(rho < 1.0 - kStationarityMargin)) {
        throw Error(ErrorCode::NonStationary, "spectral radius " + std::to_string(rho) + " is not below 1");
    }
}

// ---------------------------------------------------------------------------
// VariableSelector

VariableSelector VariableSelector::range(std::string channel, int first, int last) {
    return VariableSelector{std::move(channel), first, last};
}

VariableSelector VariableSelector::past(std::string channel, int k) { return range(std::move(channel), 1, k - 1); }

VariableSelector VariableSelector::present(std::string channel, int k) { return range(std::move(channel), k, k); }

VariableSelector VariableSelector::upto(std::string channel, int k) { return range(std::move(channel), 1, k); }

// ---------------------------------------------------------------------------
// GaussianJointModel

GaussianJointModel::GaussianJointModel(std::vector<Variable> variables, Matrix cov, PsdCheck check)
    : variables_(std::move(variables)), cov_(std::move(cov)) {
    const auto n = static_cast<Eigen::Index>(variables_.size());
    if (cov_.rows() != n || cov_.cols() != n) {
        throw Error(ErrorCode::DimensionMismatch, "covariance is " + std::to_string(cov_.rows()) + "x" +
                                                      std::to_string(cov_.cols()) + " for " + std::to_string(n) +
                                                      " variables");
    }
    if (!cov_.allFinite()) throw Error(ErrorCode::InvalidInput, "covariance contains NaN or infinite values");
    if (!is_symmetric(cov_, kSymmetryTolerance)) throw Error(ErrorCode::InvalidInput, "covariance is not symmetric");
    cov_ = 0.5 * (cov_ + cov_.transpose()).eval();
    if (n > 0 && check == PsdCheck::Verify) {
        Eigen::SelfAdjointEigenSolver<Matrix> eig(cov_, Eigen::EigenvaluesOnly);
        const double scale = std::max(1.0, cov_.diagonal().cwiseAbs().maxCoeff());
        if (eig.eigenvalues().minCoeff() < -kPsdTolerance * scale) {
            throw Error(ErrorCode::InvalidInput, "covariance is not positive semidefinite");
        }
    }

    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& v = variables_[static_cast<std::size_t>(i)];
        if (v.time < 1) throw Error(ErrorCode::InvalidInput, "time indices start at 1");
        auto& slots = lookup_[v.channel];
        if (slots.size() <= static_cast<std::size_t>(v.time)) slots.resize(static_cast<std::size_t>(v.time) + 1, -1);
        if (slots[static_cast<std::size_t>(v.time)] != -1) {
            throw Error(ErrorCode::InvalidInput, "variable (" + v.channel + ", " + std::to_string(v.time) +
                                                     ") listed twice");
        }
        slots[static_cast<std::size_t>(v.time)] = i;
    }
}

bool GaussianJointModel::has_channel(std::string_view channel) const {
    return lookup_.find(std::string(channel)) != lookup_.end();
}

int GaussianJointModel::horizon(std::string_view channel) const {
    auto it = lookup_.find(std::string(channel));
    if (it == lookup_.end()) throw Error(ErrorCode::UnknownChannel, "no channel named '" + std::string(channel) + "'");
    return static_cast<int>(it->second.size()) - 1;
}

Eigen::Index GaussianJointModel::index_of(std::string_view channel, int time) const {
    auto it = lookup_.find(std::string(channel));
    if (it == lookup_.end()) throw Error(ErrorCode::UnknownChannel, "no channel named '" + std::string(channel) + "'");
    if (time < 1 || static_cast<std::size_t>(time) >= it->second.size() || it->second[static_cast<std::size_t>(time)] < 0) {
        throw Error(ErrorCode::InvalidInput, "time " + std::to_string(time) + " is outside the model for channel '" +
                                                 std::string(channel) + "'");
    }
    return it->second[static_cast<std::size_t>(time)];
}

IndexList GaussianJointModel::indices(const Selection& selection) const {
    IndexList out;
    std::vector<char> taken(variables_.size(), 0);
    for (const auto& sel : selection) {
        if (sel.empty()) {
            if (!has_channel(sel.channel)) {
                throw Error(ErrorCode::UnknownChannel, "no channel named '" + sel.channel + "'");
            }
            continue;
        }
        for (int t = sel.first; t <= sel.last; ++t) {
            const auto idx = index_of(sel.channel, t);
            if (!taken[static_cast<std::size_t>(idx)]) {
                taken[static_cast<std::size_t>(idx)] = 1;
                out.push_back(idx);
            }
        }
    }
    return out;
}

GaussianJointModel build_window_model(const ARProcessSpec& spec, int horizon) {
    if (horizon < 1) throw Error(ErrorCode::InvalidInput, "horizon must be >= 1");
    require_stationary(spec);
    const auto d = static_cast<Eigen::Index>(spec.dimension());
    const Matrix gamma0 = solve_lyapunov(spec).gamma0;

    // lagged[h] = Cov(X_{t+h}, X_t) = C^h Gamma_X
    std::vector<Matrix> lagged(static_cast<std::size_t>(horizon));
    lagged[0] = gamma0;
    for (int h = 1; h < horizon; ++h) lagged[static_cast<std::size_t>(h)] = spec.coupling() * lagged[static_cast<std::size_t>(h - 1)];

    const auto n = static_cast<Eigen::Index>(horizon);
    Matrix cov(n * d, n * d);
    for (Eigen::Index s = 0; s < n; ++s) {
        for (Eigen::Index t = 0; t <= s; ++t) {
            const Matrix& block = lagged[static_cast<std::size_t>(s - t)];
            cov.block(s * d, t * d, d, d) = block;
            cov.block(t * d, s * d, d, d) = block.transpose();
        }
    }
    // The diagonal blocks are symmetric only up to the Lyapunov solver's round-off.
    cov = 0.5 * (cov + cov.transpose()).eval();

    std::vector<Variable> variables;
    variables.reserve(static_cast<std::size_t>(n * d));
    for (int t = 1; t <= horizon; ++t) {
        for (const auto& name : spec.channel_names()) variables.push_back({name, t});
    }
    return GaussianJointModel(std::move(variables), std::move(cov), GaussianJointModel::PsdCheck::Skip);
}

// ---------------------------------------------------------------------------
// Reports and graphs

std::string_view to_string(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::MI: return "MI";
        case MeasureKind::DI: return "DI";
        case MeasureKind::DICausalCond: return "DI_causal_cond";
        case MeasureKind::TE: return "TE";
        case MeasureKind::IIE: return "IIE";
        case MeasureKind::GewekeFwd: return "GEWEKE_FWD";
        case MeasureKind::GewekeInst: return "GEWEKE_INST";
    }
    return "?";
}

std::string_view to_string(ConditioningMode mode) {
    switch (mode) {
        case ConditioningMode::Full: return "full";
        case ConditioningMode::Causal: return "causal";
        case ConditioningMode::Delayed: return "delayed";
    }
    return "?";
}

std::string_view to_string(Method method) {
    switch (method) {
        case Method::Analytic: return "analytic";
        case Method::Empirical: return "empirical";
        case Method::MonteCarlo: return "monte_carlo";
    }
    return "?";
}

std::string_view to_string(ConditioningPolicy policy) {
    return policy == ConditioningPolicy::Pairwise ? "pairwise" : "causally_conditioned";
}

double MeasureReport::reported_nats() const {
    return value_nats < 0.0 && value_nats >= -kNegativeSlack ? 0.0 : value_nats;
}

CausalGraph::CausalGraph(std::vector<std::string> nodes, ConditioningPolicy policy)
    : nodes_(std::move(nodes)), policy_(policy) {
    require_unique(nodes_, "graph");
}

void CausalGraph::require_node(std::string_view name) const {
    if (std::find(nodes_.begin(), nodes_.end(), name) == nodes_.end()) {
        throw Error(ErrorCode::UnknownChannel, "graph has no node '" + std::string(name) + "'");
    }
}

void CausalGraph::add_dynamic_edge(const std::string& from, const std::string& to, double weight) {
    require_node(from);
    require_node(to);
    if (from == to) throw Error(ErrorCode::InvalidInput, "self-loop on '" + from + "'");
    if (has_dynamic_edge(from, to)) throw Error(ErrorCode::InvalidInput, "duplicate edge " + from + "->" + to);
    dynamic_.push_back({from, to, weight});
}

void CausalGraph::add_instantaneous_edge(const std::string& a, const std::string& b, double weight) {
    require_node(a);
    require_node(b);
    if (a == b) throw Error(ErrorCode::InvalidInput, "self-loop on '" + a + "'");
    if (has_instantaneous_edge(a, b)) throw Error(ErrorCode::InvalidInput, "duplicate edge " + a + "--" + b);
    instantaneous_.push_back(a < b ? InstantaneousEdge{a, b, weight} : InstantaneousEdge{b, a, weight});
}

bool CausalGraph::has_dynamic_edge(std::string_view from, std::string_view to) const {
    return std::any_of(dynamic_.begin(), dynamic_.end(), [&](const DynamicEdge& e) { return e.from == from && e.to == to; });
}

bool CausalGraph::has_instantaneous_edge(std::string_view a, std::string_view b) const {
    const auto lo = std::min(a, b);
    const auto hi = std::max(a, b);
    return std::any_of(instantaneous_.begin(), instantaneous_.end(),
                       [&](const InstantaneousEdge& e) { return e.first == lo && e.second == hi; });
}

bool CausalGraph::same_edges(const CausalGraph& other) const {
    if (std::set<std::string>(nodes_.begin(), nodes_.end()) !=
        std::set<std::string>(other.nodes_.begin(), other.nodes_.end())) {
        return false;
    }
    if (dynamic_.size() != other.dynamic_.size() || instantaneous_.size() != other.instantaneous_.size()) return false;
    for (const auto& e : dynamic_) {
        if (!other.has_dynamic_edge(e.from, e.to)) return false;
    }
    for (const auto& e : instantaneous_) {
        if (!other.has_instantaneous_edge(e.first, e.second)) return false;
    }
    return true;
}

}  // namespace causalflow

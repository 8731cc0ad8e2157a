#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace causalflow {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IndexList = std::vector<Eigen::Index>;

/// Synchronized multivariate samples: rows are time steps 1..n, columns are channels.
///
/// The raw samples are kept as given. Estimators center the data themselves, so a
/// panel written to CSV and read back produces bit-identical estimates.
class TimeSeriesPanel {
public:
    TimeSeriesPanel(std::vector<std::string> channels, Matrix data);

    const std::vector<std::string>& channels() const { return channels_; }
    const Matrix& data() const { return data_; }
    std::size_t sample_count() const { return static_cast<std::size_t>(data_.rows()); }
    std::size_t channel_count() const { return channels_.size(); }

    std::size_t channel_index(std::string_view name) const;
    bool has_channel(std::string_view name) const;
    Vector column(std::string_view name) const { return data_.col(channel_index(name)); }

    /// Copy with the named channel rotated forward by `offset` samples (wrapping around).
    TimeSeriesPanel circularly_shifted(std::string_view name, std::size_t offset) const;

    /// Copy restricted to (and ordered by) the given channels.
    TimeSeriesPanel select(const std::vector<std::string>& names) const;

private:
    std::vector<std::string> channels_;
    Matrix data_;
};

/// First-order vector autoregression X_n = C X_{n-1} + W_n with W_n ~ N(0, noise_cov).
///
/// `coupling()` is the matrix C acting on the state vector, so row j holds the
/// coefficients that feed channel j. The coupling "from component i to component j"
/// is therefore C(j, i); `coupling_from_to` spells that out.
class ARProcessSpec {
public:
    ARProcessSpec(std::vector<std::string> channel_names, Matrix coupling, Matrix noise_cov);

    std::size_t dimension() const { return names_.size(); }
    const std::vector<std::string>& channel_names() const { return names_; }
    const Matrix& coupling() const { return coupling_; }
    const Matrix& noise_cov() const { return noise_cov_; }

    std::size_t channel_index(std::string_view name) const;
    double coupling_from_to(std::size_t from, std::size_t to) const { return coupling_(to, from); }

    /// Relabels channels: the result's channel k is this spec's channel order[k].
    ARProcessSpec permuted(const std::vector<std::size_t>& order) const;

private:
    std::vector<std::string> names_;
    Matrix coupling_;
    Matrix noise_cov_;
};

double spectral_radius(const Matrix& m);

inline constexpr double kStationarityMargin = 1e-9;

bool is_stationary(const ARProcessSpec& spec);

/// Throws NonStationary when the spectral radius of the coupling is >= 1 - 1e-9.
void require_stationary(const ARProcessSpec& spec);

/// A block of consecutive samples of one channel, times inclusive and 1-based.
/// A selector with first > last is empty and resolves to no variables.
struct VariableSelector {
    std::string channel;
    int first = 1;
    int last = 0;

    static VariableSelector range(std::string channel, int first, int last);
    static VariableSelector past(std::string channel, int k);     // [1, k-1]
    static VariableSelector present(std::string channel, int k);  // [k, k]
    static VariableSelector upto(std::string channel, int k);     // [1, k]

    bool empty() const { return first > last; }
    std::size_t size() const { return empty() ? 0 : static_cast<std::size_t>(last - first + 1); }
};

using Selection = std::vector<VariableSelector>;

struct Variable {
    std::string channel;
    int time = 1;
};

struct WindowEstimateInfo {
    std::size_t window_count = 0;
    bool overlapping_windows = false;
};

/// Zero-mean joint Gaussian over a list of (channel, time) variables.
class GaussianJointModel {
public:
    /// PsdCheck::Skip is for covariances that are PSD by construction (e.g. assembled from an AR model).
    enum class PsdCheck { Verify, Skip };

    GaussianJointModel(std::vector<Variable> variables, Matrix cov, PsdCheck check = PsdCheck::Verify);

    const std::vector<Variable>& variables() const { return variables_; }
    const Matrix& cov() const { return cov_; }
    std::size_t size() const { return variables_.size(); }

    bool has_channel(std::string_view channel) const;
    /// Largest time index available for the channel.
    int horizon(std::string_view channel) const;

    Eigen::Index index_of(std::string_view channel, int time) const;
    /// Flattened variable indices, duplicates removed, in first-seen order.
    IndexList indices(const Selection& selection) const;

    const std::optional<WindowEstimateInfo>& estimate_info() const { return estimate_info_; }
    void set_estimate_info(WindowEstimateInfo info) { estimate_info_ = info; }

private:
    std::vector<Variable> variables_;
    Matrix cov_;
    std::unordered_map<std::string, std::vector<Eigen::Index>> lookup_;
    std::optional<WindowEstimateInfo> estimate_info_;
};

/// Exact covariance of (X_1, ..., X_n) under stationary initialization, stacked time-major:
/// variable (t, c) sits at row (t - 1) * d + c.
GaussianJointModel build_window_model(const ARProcessSpec& spec, int horizon);

enum class MeasureKind { MI, DI, DICausalCond, TE, IIE, GewekeFwd, GewekeInst };
enum class ConditioningMode { Full, Causal, Delayed };
enum class Method { Analytic, Empirical, MonteCarlo };

std::string_view to_string(MeasureKind kind);
std::string_view to_string(ConditioningMode mode);
std::string_view to_string(Method method);

struct Conditioner {
    std::string channel;
    ConditioningMode mode = ConditioningMode::Delayed;
};

inline constexpr double kNegativeSlack = 1e-9;

struct MeasureReport {
    MeasureKind kind = MeasureKind::DI;
    double value_nats = 0.0;
    /// Finite horizon n, or nullopt for a rate.
    std::optional<int> horizon;
    /// For rates: the horizon at which the Cauchy criterion was met.
    int horizon_reached = 0;
    std::string source;
    std::string target;
    std::vector<Conditioner> conditioning;
    Method method = Method::Analytic;

    bool is_rate() const { return !horizon.has_value(); }
    /// Value as reported: round-off negatives clamped to zero.
    double reported_nats() const;
};

enum class ConditioningPolicy { Pairwise, CausallyConditioned };
std::string_view to_string(ConditioningPolicy policy);

struct DynamicEdge {
    std::string from;
    std::string to;
    double weight_nats = 0.0;
};

struct InstantaneousEdge {
    std::string first;  // first < second
    std::string second;
    double weight_nats = 0.0;
};

class CausalGraph {
public:
    CausalGraph(std::vector<std::string> nodes, ConditioningPolicy policy);

    const std::vector<std::string>& nodes() const { return nodes_; }
    ConditioningPolicy policy() const { return policy_; }
    const std::vector<DynamicEdge>& dynamic_edges() const { return dynamic_; }
    const std::vector<InstantaneousEdge>& instantaneous_edges() const { return instantaneous_; }

    void add_dynamic_edge(const std::string& from, const std::string& to, double weight);
    void add_instantaneous_edge(const std::string& a, const std::string& b, double weight);

    bool has_dynamic_edge(std::string_view from, std::string_view to) const;
    bool has_instantaneous_edge(std::string_view a, std::string_view b) const;

    /// Same nodes and the same edge sets (weights ignored).
    bool same_edges(const CausalGraph& other) const;

private:
    void require_node(std::string_view name) const;

    std::vector<std::string> nodes_;
    ConditioningPolicy policy_;
    std::vector<DynamicEdge> dynamic_;
    std::vector<InstantaneousEdge> instantaneous_;
};

}  // namespace causalflow

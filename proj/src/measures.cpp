#include "causalflow/measures.hpp"

#include "causalflow/errors.hpp"
#include "causalflow/gaussian_engine.hpp"
#include "causalflow/linear_prediction.hpp"

#include <cmath>
#include <set>

namespace causalflow {

namespace {

void require_pair(const std::string& x, const std::string& y, const std::vector<Conditioner>& cond) {
    if (x == y) throw Error(ErrorCode::InvalidInput, "source and target must be different channels");
    std::set<std::string> seen{x, y};
    for (const auto& c : cond) {
        if (!seen.insert(c.channel).second) {
            throw Error(ErrorCode::InvalidInput, "conditioning channel '" + c.channel +
                                                     "' repeats the pair or another conditioner");
        }
    }
}

void require_channels(const GaussianJointModel& model, const std::string& x, const std::string& y,
                      const std::vector<Conditioner>& cond) {
    for (const auto* name : {&x, &y}) {
        if (!model.has_channel(*name)) throw Error(ErrorCode::UnknownChannel, "no channel named '" + *name + "'");
    }
    for (const auto& c : cond) {
        if (!model.has_channel(c.channel)) {
            throw Error(ErrorCode::UnknownChannel, "no channel named '" + c.channel + "'");
        }
    }
}

// Conditioning variables for the summand at time i.
Selection conditioning_at(const std::vector<Conditioner>& cond, int i, int full_extent) {
    Selection out;
    for (const auto& c : cond) {
        switch (c.mode) {
            case ConditioningMode::Full: out.push_back(VariableSelector::upto(c.channel, full_extent)); break;
            case ConditioningMode::Causal: out.push_back(VariableSelector::upto(c.channel, i)); break;
            case ConditioningMode::Delayed: out.push_back(VariableSelector::past(c.channel, i)); break;
        }
    }
    return out;
}

Selection with(Selection base, const Selection& extra) {
    base.insert(base.end(), extra.begin(), extra.end());
    return base;
}

// Conditioning set of a block MI at horizon n: delayed conditioners stop at n - 1.
Selection block_conditioning(const std::vector<Conditioner>& cond, int n, int full_extent) {
    Selection out;
    for (const auto& c : cond) {
        out.push_back(c.mode == ConditioningMode::Full      ? VariableSelector::upto(c.channel, full_extent)
                      : c.mode == ConditioningMode::Delayed ? VariableSelector::past(c.channel, n)
                                                            : VariableSelector::upto(c.channel, n));
    }
    return out;
}

double block_mi(const GaussianJointModel& model, const std::string& x, const std::string& y, int n,
                const std::vector<Conditioner>& cond, int full_extent) {
    if (n < 1) return 0.0;
    return conditional_mutual_information(model, {VariableSelector::upto(x, n)}, {VariableSelector::upto(y, n)},
                                          block_conditioning(cond, n, full_extent));
}

MeasureReport make_report(MeasureKind kind, double value, std::optional<int> horizon, const std::string& x,
                          const std::string& y, std::vector<Conditioner> cond, Method method) {
    MeasureReport r;
    r.kind = kind;
    r.value_nats = value;
    r.horizon = horizon;
    r.horizon_reached = horizon.value_or(0);
    r.source = x;
    r.target = y;
    r.conditioning = std::move(cond);
    r.method = method;
    return r;
}

MeasureReport summed(const GaussianJointModel& model, MeasureKind kind, const std::string& x, const std::string& y,
                     int n, const std::vector<Conditioner>& cond) {
    require_pair(x, y, cond);
    require_channels(model, x, y, cond);
    if (n < 1) throw Error(ErrorCode::InvalidInput, "horizon must be >= 1");
    double total = 0.0;
    for (int i = 1; i <= n; ++i) total += step_term(model, kind, x, y, i, cond, n);
    const auto reported = kind == MeasureKind::DI && !cond.empty() ? MeasureKind::DICausalCond : kind;
    return make_report(reported, total, n, x, y, cond, Method::Analytic);
}

bool has_full(const std::vector<Conditioner>& cond) {
    for (const auto& c : cond) {
        if (c.mode == ConditioningMode::Full) return true;
    }
    return false;
}

template <typename Evaluate>
std::pair<double, int> converge(Evaluate&& evaluate, const RateOptions& options) {
    if (options.initial_horizon < 2 || options.max_horizon < options.initial_horizon) {
        throw Error(ErrorCode::InvalidInput, "rate horizons must satisfy 2 <= initial <= max");
    }
    double previous = evaluate(options.initial_horizon);
    for (int n = options.initial_horizon * 2; n <= options.max_horizon; n *= 2) {
        const double value = evaluate(n);
        if (std::abs(value - previous) < options.tolerance) return {value, n};
        previous = value;
    }
    throw Error(ErrorCode::NoConvergence, "rate did not settle below horizon " + std::to_string(options.max_horizon));
}

std::vector<std::size_t> channel_indices(const ARProcessSpec& spec, const std::vector<std::string>& names) {
    std::vector<std::size_t> out;
    for (const auto& n : names) out.push_back(spec.channel_index(n));
    return out;
}

std::vector<Conditioner> as_conditioners(const std::vector<std::string>& names, ConditioningMode mode) {
    std::vector<Conditioner> out;
    for (const auto& n : names) out.push_back({n, mode});
    return out;
}

// ---------------------------------------------------------------------------
// Least-squares prediction on panels

struct Regressor {
    Eigen::Index column;
    int lag;  // negative for leads
};

double residual_sum_of_squares(const Matrix& centered, Eigen::Index target, const std::vector<Regressor>& regressors,
                               Eigen::Index first_row, Eigen::Index last_row) {
    const Eigen::Index rows = last_row - first_row + 1;
    const Vector response = centered.col(target).segment(first_row, rows);
    if (regressors.empty()) return response.squaredNorm();
    Matrix design(rows, static_cast<Eigen::Index>(regressors.size()));
    for (std::size_t k = 0; k < regressors.size(); ++k) {
        const auto& r = regressors[k];
        design.col(static_cast<Eigen::Index>(k)) = centered.col(r.column).segment(first_row - r.lag, rows);
    }
    const Vector beta = design.colPivHouseholderQr().solve(response);
    return (response - design * beta).squaredNorm();
}

void add_lags(std::vector<Regressor>& out, Eigen::Index column, int from, int to) {
    for (int lag = from; lag <= to; ++lag) out.push_back({column, lag});
}

}  // namespace

double step_term(const GaussianJointModel& model, MeasureKind kind, const std::string& x, const std::string& y, int n,
                 const std::vector<Conditioner>& cond, int full_extent) {
    if (n < 1) throw Error(ErrorCode::InvalidInput, "time index must be >= 1");
    const int extent = full_extent > 0 ? full_extent : n;
    const Selection z = conditioning_at(cond, n, extent);
    switch (kind) {
        case MeasureKind::DI:
        case MeasureKind::DICausalCond:
            return conditional_mutual_information(model, {VariableSelector::upto(x, n)}, {VariableSelector::present(y, n)},
                                                  with({VariableSelector::past(y, n)}, z));
        case MeasureKind::TE:
            return conditional_mutual_information(model, {VariableSelector::past(x, n)}, {VariableSelector::present(y, n)},
                                                  with({VariableSelector::past(y, n)}, z));
        case MeasureKind::IIE:
            return conditional_mutual_information(
                model, {VariableSelector::present(x, n)}, {VariableSelector::present(y, n)},
                with({VariableSelector::past(x, n), VariableSelector::past(y, n)}, z));
        case MeasureKind::MI:
            return block_mi(model, x, y, n, cond, extent) - block_mi(model, x, y, n - 1, cond, extent);
        case MeasureKind::GewekeFwd:
        case MeasureKind::GewekeInst:
            break;
    }
    throw Error(ErrorCode::InvalidInput, "no per-step term for " + std::string(to_string(kind)));
}

MeasureReport directed_information(const GaussianJointModel& model, const std::string& x, const std::string& y, int n,
                                   const std::vector<Conditioner>& cond) {
    return summed(model, MeasureKind::DI, x, y, n, cond);
}

MeasureReport delayed_directed_information(const GaussianJointModel& model, const std::string& x, const std::string& y,
                                           int n, const std::vector<Conditioner>& cond) {
    return summed(model, MeasureKind::TE, x, y, n, cond);
}

MeasureReport instantaneous_information_exchange(const GaussianJointModel& model, const std::string& x,
                                                 const std::string& y, int n, const std::vector<Conditioner>& cond) {
    return summed(model, MeasureKind::IIE, x, y, n, cond);
}

MeasureReport mutual_information_block(const GaussianJointModel& model, const std::string& x, const std::string& y,
                                       int n, const std::vector<Conditioner>& cond) {
    require_pair(x, y, cond);
    require_channels(model, x, y, cond);
    if (n < 1) throw Error(ErrorCode::InvalidInput, "horizon must be >= 1");
    return make_report(MeasureKind::MI, block_mi(model, x, y, n, cond, n), n, x, y, cond, Method::Analytic);
}

MeasureReport transfer_entropy(const GaussianJointModel& model, const std::string& x, const std::string& y, int k,
                               int l, int n) {
    require_pair(x, y, {});
    require_channels(model, x, y, {});
    if (n < 1 || k < 1 || l < 1 || k > n || l > n) {
        throw Error(ErrorCode::InvalidInput, "transfer entropy needs 1 <= k, l <= n");
    }
    const double value =
        conditional_mutual_information(model, {VariableSelector::range(x, n - l + 1, n - 1)},
                                       {VariableSelector::present(y, n)}, {VariableSelector::range(y, n - k + 1, n - 1)});
    return make_report(MeasureKind::TE, value, n, x, y, {}, Method::Analytic);
}

MeasureReport measure_rate(const ARProcessSpec& spec, MeasureKind kind, const std::string& x, const std::string& y,
                           const std::vector<Conditioner>& cond, const RateOptions& options) {
    require_pair(x, y, cond);
    spec.channel_index(x);
    spec.channel_index(y);
    for (const auto& c : cond) spec.channel_index(c.channel);
    require_stationary(spec);
    if (kind == MeasureKind::GewekeFwd || kind == MeasureKind::GewekeInst) {
        throw Error(ErrorCode::InvalidInput, "Geweke indices are computed by geweke_index");
    }

    const bool two_sided = has_full(cond);
    auto evaluate = [&](int n) {
        const int extent = two_sided ? 2 * n : n;
        const auto model = build_window_model(spec, extent);
        return step_term(model, kind, x, y, n, cond, extent);
    };
    const auto [value, reached] = converge(evaluate, options);
    const auto reported = kind == MeasureKind::DI && !cond.empty() ? MeasureKind::DICausalCond : kind;
    auto report = make_report(reported, value, std::nullopt, x, y, cond, Method::Analytic);
    report.horizon_reached = reached;
    return report;
}

MeasureReport geweke_index(const ARProcessSpec& spec, GewekeKind kind, const std::string& x, const std::string& y,
                           const std::vector<std::string>& cond, ConditioningMode mode, const RateOptions& options) {
    auto conditioners = as_conditioners(cond, mode);
    require_pair(x, y, conditioners);
    require_stationary(spec);
    const auto xi = spec.channel_index(x);
    const auto yi = spec.channel_index(y);
    const auto zi = channel_indices(spec, cond);
    const auto report_kind = kind == GewekeKind::Forward ? MeasureKind::GewekeFwd : MeasureKind::GewekeInst;

    if (mode != ConditioningMode::Full) {
        PredictionSets restricted{{yi}, {yi}, {}};
        restricted.past.insert(restricted.past.end(), zi.begin(), zi.end());
        PredictionSets unrestricted = restricted;
        unrestricted.past.push_back(xi);
        if (kind == GewekeKind::Instantaneous) {
            restricted = unrestricted;
            unrestricted.present.push_back(xi);
        }
        const double value = 0.5 * (asymptotic_log_prediction_variance(spec, restricted) -
                                     asymptotic_log_prediction_variance(spec, unrestricted));
        for (auto& c : conditioners) c.mode = ConditioningMode::Delayed;
        return make_report(report_kind, value, std::nullopt, x, y, conditioners, Method::Analytic);
    }

    // z observed over [1, 2n] with the target at time n.
    auto evaluate = [&](int n) {
        const auto model = build_window_model(spec, 2 * n);
        Selection base{VariableSelector::past(y, n)};
        for (const auto& z : cond) base.push_back(VariableSelector::upto(z, 2 * n));
        Selection with_x = base;
        with_x.push_back(VariableSelector::past(x, n));
        const Selection target{VariableSelector::present(y, n)};
        if (kind == GewekeKind::Forward) {
            return conditional_mutual_information(model, {VariableSelector::past(x, n)}, target, base);
        }
        return conditional_mutual_information(model, {VariableSelector::present(x, n)}, target, with_x);
    };
    const auto [value, reached] = converge(evaluate, options);
    auto report = make_report(report_kind, value, std::nullopt, x, y, conditioners, Method::Analytic);
    report.horizon_reached = reached;
    return report;
}

MeasureReport geweke_index(const TimeSeriesPanel& panel, GewekeKind kind, const std::string& x, const std::string& y,
                           const std::vector<std::string>& cond, ConditioningMode mode, const EmpiricalOptions& options) {
    auto conditioners = as_conditioners(cond, mode);
    require_pair(x, y, conditioners);
    const int lag = options.lag;
    if (lag < 1) throw Error(ErrorCode::InvalidInput, "lag must be >= 1");
    const auto n = static_cast<Eigen::Index>(panel.sample_count());
    if (n < 20 * lag) {
        throw Error(ErrorCode::InsufficientData, "panel has " + std::to_string(n) + " samples; lag " +
                                                     std::to_string(lag) + " needs at least " + std::to_string(20 * lag));
    }
    const auto xi = static_cast<Eigen::Index>(panel.channel_index(x));
    const auto yi = static_cast<Eigen::Index>(panel.channel_index(y));

    const Matrix centered = panel.data().rowwise() - panel.data().colwise().mean();
    const bool two_sided = mode == ConditioningMode::Full;

    std::vector<Regressor> restricted;
    add_lags(restricted, yi, 1, lag);
    for (const auto& z : cond) {
        const auto zi = static_cast<Eigen::Index>(panel.channel_index(z));
        if (two_sided) add_lags(restricted, zi, -lag, lag);
        else add_lags(restricted, zi, 1, lag);
    }
    std::vector<Regressor> unrestricted = restricted;
    add_lags(unrestricted, xi, 1, lag);
    if (kind == GewekeKind::Instantaneous) {
        restricted = unrestricted;
        unrestricted.push_back({xi, 0});
    }

    const Eigen::Index first = lag;
    const Eigen::Index last = n - 1 - (two_sided ? lag : 0);
    const double rss_restricted = residual_sum_of_squares(centered, yi, restricted, first, last);
    const double rss_unrestricted = residual_sum_of_squares(centered, yi, unrestricted, first, last);
    if (!(rss_unrestricted > 0.0)) throw Error(ErrorCode::SingularCovariance, "regression fits the target exactly");
    const double value = 0.5 * std::log(rss_restricted / rss_unrestricted);

    if (!two_sided) {
        for (auto& c : conditioners) c.mode = ConditioningMode::Delayed;
    }
    return make_report(kind == GewekeKind::Forward ? MeasureKind::GewekeFwd : MeasureKind::GewekeInst, value,
                       std::nullopt, x, y, conditioners, Method::Empirical);
}

}  // namespace causalflow

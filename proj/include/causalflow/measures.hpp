#pragma once

#include "causalflow/core_model.hpp"

#include <string>
#include <vector>

namespace causalflow {

// Finite-horizon measures on a Gaussian window model. Conditioners enter the i-th summand
// as z^n (full), z^i (causal) or z^{i-1} (delayed). All values are in nats.

/// I(x^n -> y^n || cond) = sum_i I(x^i; y_i | y^{i-1}, cond_i).
MeasureReport directed_information(const GaussianJointModel& model, const std::string& x, const std::string& y, int n,
                                   const std::vector<Conditioner>& cond = {});

/// I(x^n; y^n | cond). Full and causal conditioners both contribute z^n, delayed ones z^{n-1}.
MeasureReport mutual_information_block(const GaussianJointModel& model, const std::string& x, const std::string& y,
                                       int n, const std::vector<Conditioner>& cond = {});

/// I(Dx^n -> y^n || cond) = sum_i I(x^{i-1}; y_i | y^{i-1}, cond_i). Reported with kind TE.
MeasureReport delayed_directed_information(const GaussianJointModel& model, const std::string& x, const std::string& y,
                                           int n, const std::vector<Conditioner>& cond = {});

/// sum_i I(x_i; y_i | x^{i-1}, y^{i-1}, cond_i). Symmetric in x and y.
MeasureReport instantaneous_information_exchange(const GaussianJointModel& model, const std::string& x,
                                                 const std::string& y, int n,
                                                 const std::vector<Conditioner>& cond = {});

/// I(x_{n-l+1}^{n-1}; y_n | y_{n-k+1}^{n-1}) at the single time n. Needs 1 <= k, l <= n.
MeasureReport transfer_entropy(const GaussianJointModel& model, const std::string& x, const std::string& y, int k,
                               int l, int n);

/// The summand at time n of the measure of the given kind:
///   DI / DICausalCond: I(x^n; y_n | y^{n-1}, cond_n)
///   TE:  I(x^{n-1}; y_n | y^{n-1}, cond_n)
///   IIE: I(x_n; y_n | x^{n-1}, y^{n-1}, cond_n)
///   MI:  I(x^n; y^n | cond) - I(x^{n-1}; y^{n-1} | cond)
/// `full_extent` is the last time index used for full-mode conditioners (defaults to n).
double step_term(const GaussianJointModel& model, MeasureKind kind, const std::string& x, const std::string& y, int n,
                 const std::vector<Conditioner>& cond = {}, int full_extent = 0);

struct RateOptions {
    int initial_horizon = 8;
    double tolerance = 1e-9;
    int max_horizon = 4096;
};

/// Limit of step_term as the horizon doubles from initial_horizon, stopping once successive
/// values differ by less than the tolerance. Full-mode conditioners are observed over twice
/// the horizon, so that both their past and their future grow. Throws NoConvergence.
MeasureReport measure_rate(const ARProcessSpec& spec, MeasureKind kind, const std::string& x, const std::string& y,
                           const std::vector<Conditioner>& cond = {}, const RateOptions& options = {});

enum class GewekeKind { Forward, Instantaneous };

/// Geweke's indices written as 1/2 log of prediction-error variance ratios:
///   Forward:        F_{x->y|z} = 1/2 log eps^2(y_n | y^{n-1}, z) / eps^2(y_n | y^{n-1}, x^{n-1}, z)
///   Instantaneous:  F_{x.y|z}  = 1/2 log eps^2(y_n | y^{n-1}, x^{n-1}, z) / eps^2(y_n | y^{n-1}, x^n, z)
/// With ConditioningMode::Full z is observed over all time; otherwise z enters as z^{n-1}.
/// The causal variants come from the steady-state Kalman predictor, the full variants from
/// window conditioning with a doubling horizon.
MeasureReport geweke_index(const ARProcessSpec& spec, GewekeKind kind, const std::string& x, const std::string& y,
                           const std::vector<std::string>& cond = {},
                           ConditioningMode mode = ConditioningMode::Causal, const RateOptions& options = {});

struct EmpiricalOptions {
    int lag = 5;
};

/// Same indices estimated from data by least squares with `lag` past samples per regressor
/// (and `lag` leads of z in full mode). Needs at least 20 * lag samples.
MeasureReport geweke_index(const TimeSeriesPanel& panel, GewekeKind kind, const std::string& x, const std::string& y,
                           const std::vector<std::string>& cond = {},
                           ConditioningMode mode = ConditioningMode::Causal, const EmpiricalOptions& options = {});

}  // namespace causalflow

#include "causalflow/ar_analytic.hpp"

#include "causalflow/errors.hpp"

#include <cmath>

namespace causalflow {

namespace {

constexpr double kLyapunovTolerance = 1e-14;
constexpr int kLyapunovMaxSteps = 200;

struct BivariateParams {
    double sx2, sy2, gxy;  // stationary moments of (x, y)
    double sv2, sw2, gvw;  // innovation covariance
    double cxy, cyx;       // x -> y and y -> x couplings
};

BivariateParams bivariate_params(const ARProcessSpec& spec) {
    if (spec.dimension() != 2) throw Error(ErrorCode::DimensionMismatch, "bivariate closed forms need a 2-channel spec");
    const Matrix g = solve_lyapunov(spec).gamma0;
    const Matrix& w = spec.noise_cov();
    return {g(0, 0), g(1, 1), g(0, 1), w(0, 0), w(1, 1), w(0, 1), spec.coupling_from_to(0, 1), spec.coupling_from_to(1, 0)};
}

}  // namespace

// Smith's doubling form of the fixed-point iteration Gamma <- C Gamma C^t + Gamma_w:
// after k steps the iterate holds the first 2^k terms of sum_h C^h Gamma_w C^ht.
StationaryMoments solve_lyapunov(const ARProcessSpec& spec) {
    require_stationary(spec);
    Matrix gamma = spec.noise_cov();
    Matrix power = spec.coupling();
    for (int step = 0; step < kLyapunovMaxSteps; ++step) {
        const Matrix increment = power * gamma * power.transpose();
        gamma += increment;
        power = power * power;
        if (increment.cwiseAbs().maxCoeff() <= kLyapunovTolerance * std::max(1.0, gamma.cwiseAbs().maxCoeff())) {
            return {0.5 * (gamma + gamma.transpose())};
        }
    }
    throw Error(ErrorCode::NonStationary, "Lyapunov iteration did not settle");
}

double bivariate_initial_mutual_information(const ARProcessSpec& spec) {
    const auto p = bivariate_params(spec);
    return -0.5 * std::log(1.0 - p.gxy * p.gxy / (p.sx2 * p.sy2));
}

BivariateMeasures bivariate_closed_forms(const ARProcessSpec& spec, int n) {
    if (n < 1) throw Error(ErrorCode::InvalidInput, "horizon must be >= 1");
    const auto p = bivariate_params(spec);
    const double i1 = -0.5 * std::log(1.0 - p.gxy * p.gxy / (p.sx2 * p.sy2));
    const double det_w = p.sv2 * p.sw2 - p.gvw * p.gvw;
    const double x_pred = p.cyx * p.cyx * p.sy2 + p.sv2;  // variance of x_n given the past of x
    const double y_pred = p.cxy * p.cxy * p.sx2 + p.sw2;
    const double steps = 0.5 * (n - 1);

    BivariateMeasures out;
    out.mi = steps * std::log(x_pred * y_pred / det_w) + i1;
    out.di_xy = steps * std::log(y_pred * p.sv2 / det_w) + i1;
    out.di_yx = steps * std::log(x_pred * p.sw2 / det_w) + i1;
    out.iie = steps * std::log(p.sv2 * p.sw2 / det_w) + i1;
    return out;
}

BivariateRates bivariate_rates(const ARProcessSpec& spec) {
    const auto p = bivariate_params(spec);
    const double det_w = p.sv2 * p.sw2 - p.gvw * p.gvw;
    BivariateRates out;
    out.te_rate_xy = 0.5 * std::log1p(p.cxy * p.cxy * p.sx2 / p.sw2);
    out.te_rate_yx = 0.5 * std::log1p(p.cyx * p.cyx * p.sy2 / p.sv2);
    out.iie_rate = 0.5 * std::log(p.sv2 * p.sw2 / det_w);
    out.di_rate_xy = 0.5 * std::log((p.cxy * p.cxy * p.sx2 + p.sw2) / det_w * p.sv2);
    out.di_rate_yx = 0.5 * std::log((p.cyx * p.cyx * p.sy2 + p.sv2) / det_w * p.sw2);
    return out;
}

TrivariateCaseRates trivariate_case_rates(const ARProcessSpec& spec, TrivariateCase which) {
    if (spec.dimension() != 3) throw Error(ErrorCode::DimensionMismatch, "trivariate cases need a 3-channel spec");
    constexpr std::size_t z = 0, x = 1, y = 2;

    // Allowed cross-couplings: x -> z, z -> y, and (case B only) y -> x.
    for (std::size_t from = 0; from < 3; ++from) {
        for (std::size_t to = 0; to < 3; ++to) {
            if (from == to) continue;
            const bool chain = (from == x && to == z) || (from == z && to == y);
            const bool feedback = from == y && to == x;
            if (chain || (feedback && which == TrivariateCase::B)) continue;
            if (spec.coupling_from_to(from, to) != 0.0) {
                throw Error(ErrorCode::TopologyMismatch,
                            "coupling " + spec.channel_names()[from] + " -> " + spec.channel_names()[to] +
                                " must be zero for case " + (which == TrivariateCase::A ? "A" : "B"));
            }
        }
    }
    if (which == TrivariateCase::B && spec.coupling_from_to(y, x) == 0.0) {
        throw Error(ErrorCode::TopologyMismatch, "case B needs a nonzero y -> x coupling");
    }

    const Matrix& w = spec.noise_cov();
    const double sv2 = w(x, x), sw2 = w(y, y), gvw = w(x, y);
    const double rho2 = gvw * gvw / (sv2 * sw2);
    const double instantaneous = -0.5 * std::log1p(-rho2);

    TrivariateCaseRates out;
    if (which == TrivariateCase::A) {
        out.cond_di_rate_yx_given_dz = instantaneous;
        out.alternate_sign_value = instantaneous;
        return out;
    }
    const double sy2 = solve_lyapunov(spec).variance(y);
    const double cyx = spec.coupling_from_to(y, x);
    const double dynamic = 0.5 * std::log1p(cyx * cyx * sy2 / sv2);
    out.cond_di_rate_yx_given_dz = dynamic - 0.5 * std::log1p(rho2);
    out.alternate_sign_value = dynamic + instantaneous;
    return out;
}

}  // namespace causalflow

#pragma once

#include "causalflow/core_model.hpp"

namespace causalflow {

/// Stationary covariance of an AR(1) network.
struct StationaryMoments {
    Matrix gamma0;

    double variance(std::size_t channel) const { return gamma0(channel, channel); }
    double covariance(std::size_t a, std::size_t b) const { return gamma0(a, b); }
};

/// Solves Gamma = C Gamma C^t + Gamma_w. Throws NonStationary.
StationaryMoments solve_lyapunov(const ARProcessSpec& spec);

// Bivariate closed forms. Channel 0 is x (innovation v), channel 1 is y (innovation w).

struct BivariateMeasures {
    double mi = 0.0;
    double di_xy = 0.0;
    double di_yx = 0.0;
    double iie = 0.0;
};

struct BivariateRates {
    double di_rate_xy = 0.0;
    double di_rate_yx = 0.0;
    double te_rate_xy = 0.0;
    double te_rate_yx = 0.0;
    double iie_rate = 0.0;
};

/// I(x_1; y_1) = -1/2 log(1 - gamma_xy^2 / (sigma_x^2 sigma_y^2)).
double bivariate_initial_mutual_information(const ARProcessSpec& spec);

/// Closed-form MI, DI both ways and instantaneous exchange over horizon n.
/// The MI denominator uses sigma_v^2 sigma_w^2 - gamma_vw^2 (the determinant of Gamma_w).
BivariateMeasures bivariate_closed_forms(const ARProcessSpec& spec, int n);

BivariateRates bivariate_rates(const ARProcessSpec& spec);

enum class TrivariateCase { A, B };

/// Channel order is (z, x, y) with innovations (u, v, w).
struct TrivariateCaseRates {
    /// I_inf(y -> x || Dz) as printed for the case.
    double cond_di_rate_yx_given_dz = 0.0;
    /// Case B with the instantaneous term written -1/2 log(1 - gamma_vw^2 / (sigma_v^2 sigma_w^2)).
    /// Equal to the printed value for case A.
    double alternate_sign_value = 0.0;
};

/// Case A: the only cross-couplings are x -> z and z -> y. Case B adds y -> x.
/// Throws TopologyMismatch when the coupling zero pattern contradicts the case.
TrivariateCaseRates trivariate_case_rates(const ARProcessSpec& spec, TrivariateCase which);

}  // namespace causalflow

#pragma once

#include "causalflow/core_model.hpp"

namespace causalflow {

/// Residual covariance determinant of a linear prediction.
struct PredictionError {
    double variance_det = 0.0;
    double log_variance_det = 0.0;
    Selection target;
    Selection conditioners;
};

/// Cholesky factor of an SPD matrix. On failure retries once with 1e-12 * trace / dim added
/// to the diagonal, then throws SingularCovariance.
Eigen::LLT<Matrix> factor_spd(const Matrix& m);

double log_det_spd(const Matrix& m);

/// cov[t,t] - cov[t,c] cov[c,c]^{-1} cov[c,t]; cov[t,t] when c is empty.
Matrix schur_complement(const Matrix& cov, const IndexList& target, const IndexList& conditioners);

/// 1/2 log((2 pi e)^k det Gamma) for the k selected variables, in nats.
double gaussian_entropy(const GaussianJointModel& model, const Selection& vars);

PredictionError prediction_error(const GaussianJointModel& model, const Selection& target, const Selection& conditioners);

/// I(A; B | C) in nats, as 1/2 [log det Sigma_{A|C} - log det Sigma_{A|B,C}]. Zero when A or B is empty.
double conditional_mutual_information(const GaussianJointModel& model, const Selection& a, const Selection& b,
                                      const Selection& c);

}  // namespace causalflow

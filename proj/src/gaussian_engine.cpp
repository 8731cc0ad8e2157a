#include "causalflow/gaussian_engine.hpp"

#include "causalflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace causalflow {

namespace {

constexpr double kJitterScale = 1e-12;

Matrix submatrix(const Matrix& cov, const IndexList& rows, const IndexList& cols) {
    Matrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cov(rows[i], cols[j]);
        }
    }
    return out;
}

IndexList without(const IndexList& from, const IndexList& removed) {
    IndexList out;
    for (auto idx : from) {
        if (std::find(removed.begin(), removed.end(), idx) == removed.end()) out.push_back(idx);
    }
    return out;
}

IndexList concat(IndexList a, const IndexList& b) {
    for (auto idx : b) {
        if (std::find(a.begin(), a.end(), idx) == a.end()) a.push_back(idx);
    }
    return a;
}

double log_det_from_factor(const Eigen::LLT<Matrix>& llt) {
    return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

}  // namespace

Eigen::LLT<Matrix> factor_spd(const Matrix& m) {
    Eigen::LLT<Matrix> llt(m);
    if (llt.info() == Eigen::Success && llt.matrixLLT().diagonal().minCoeff() > 0.0) return llt;

    const double jitter = kJitterScale * m.trace() / static_cast<double>(std::max<Eigen::Index>(1, m.rows()));
    if (jitter > 0.0) {
        Matrix bumped = m;
        bumped.diagonal().array() += jitter;
        llt.compute(bumped);
        if (llt.info() == Eigen::Success && llt.matrixLLT().diagonal().minCoeff() > 0.0) return llt;
    }
    throw Error(ErrorCode::SingularCovariance,
                "covariance block of size " + std::to_string(m.rows()) + " is not positive definite");
}

double log_det_spd(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    return log_det_from_factor(factor_spd(m));
}

Matrix schur_complement(const Matrix& cov, const IndexList& target, const IndexList& conditioners) {
    Matrix tt = submatrix(cov, target, target);
    if (conditioners.empty() || target.empty()) return tt;
    const Matrix cc = submatrix(cov, conditioners, conditioners);
    const Matrix ct = submatrix(cov, conditioners, target);
    const auto llt = factor_spd(cc);
    const Matrix half = llt.matrixL().solve(ct);  // L^{-1} cov[c,t]
    Matrix out = tt - half.transpose() * half;
    return 0.5 * (out + out.transpose());
}

double gaussian_entropy(const GaussianJointModel& model, const Selection& vars) {
    const auto idx = model.indices(vars);
    if (idx.empty()) return 0.0;
    const Matrix block = submatrix(model.cov(), idx, idx);
    const double k = static_cast<double>(idx.size());
    return 0.5 * (k * std::log(2.0 * std::numbers::pi * std::numbers::e) + log_det_spd(block));
}

PredictionError prediction_error(const GaussianJointModel& model, const Selection& target, const Selection& conditioners) {
    const auto t = model.indices(target);
    const auto c = without(model.indices(conditioners), t);
    if (t.empty()) throw Error(ErrorCode::InvalidInput, "prediction target selects no variables");
    if (c.size() != model.indices(conditioners).size()) {
        throw Error(ErrorCode::SingularCovariance, "prediction target overlaps its conditioners");
    }
    PredictionError out;
    out.log_variance_det = log_det_spd(schur_complement(model.cov(), t, c));
    out.variance_det = std::exp(out.log_variance_det);
    out.target = target;
    out.conditioners = conditioners;
    return out;
}

double conditional_mutual_information(const GaussianJointModel& model, const Selection& a, const Selection& b,
                                      const Selection& c) {
    const auto c_idx = model.indices(c);
    const auto a_idx = without(model.indices(a), c_idx);
    const auto b_idx = without(without(model.indices(b), c_idx), a_idx);
    if (a_idx.empty() || b_idx.empty()) return 0.0;
    const double given_c = log_det_spd(schur_complement(model.cov(), a_idx, c_idx));
    const double given_bc = log_det_spd(schur_complement(model.cov(), a_idx, concat(b_idx, c_idx)));
    return 0.5 * (given_c - given_bc);
}

}  // namespace causalflow

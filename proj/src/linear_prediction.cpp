#include "causalflow/linear_prediction.hpp"

#include "causalflow/ar_analytic.hpp"
#include "causalflow/errors.hpp"
#include "causalflow/gaussian_engine.hpp"

#include <algorithm>
#include <cmath>

namespace causalflow {

namespace {

IndexList to_index_list(const std::vector<std::size_t>& channels, std::size_t d) {
    IndexList out;
    for (auto c : channels) {
        if (c >= d) throw Error(ErrorCode::UnknownChannel, "channel index " + std::to_string(c) + " out of range");
        if (std::find(out.begin(), out.end(), static_cast<Eigen::Index>(c)) == out.end()) {
            out.push_back(static_cast<Eigen::Index>(c));
        }
    }
    return out;
}

}  // namespace

double asymptotic_log_prediction_variance(const ARProcessSpec& spec, const PredictionSets& sets,
                                          const RiccatiOptions& options) {
    const auto d = spec.dimension();
    const auto target = to_index_list(sets.target, d);
    const auto past = to_index_list(sets.past, d);
    const auto present = to_index_list(sets.present, d);
    if (target.empty()) throw Error(ErrorCode::InvalidInput, "prediction target is empty");
    for (auto t : target) {
        if (std::find(present.begin(), present.end(), t) != present.end()) {
            throw Error(ErrorCode::SingularCovariance, "prediction target is also observed at the present");
        }
    }

    const Matrix& c = spec.coupling();
    const Matrix& noise = spec.noise_cov();
    // Predicted state covariance given observations up to the previous step.
    Matrix predicted = solve_lyapunov(spec).gamma0;

    if (!past.empty()) {
        bool settled = false;
        for (int it = 0; it < options.max_iterations; ++it) {
            IndexList all(static_cast<std::size_t>(d));
            for (std::size_t k = 0; k < d; ++k) all[k] = static_cast<Eigen::Index>(k);
            const Matrix filtered = schur_complement(predicted, all, past);
            Matrix next = c * filtered * c.transpose() + noise;
            next = 0.5 * (next + next.transpose());
            const double change = (next - predicted).cwiseAbs().maxCoeff();
            predicted = std::move(next);
            if (change <= options.tolerance * std::max(1.0, predicted.cwiseAbs().maxCoeff())) {
                settled = true;
                break;
            }
        }
        if (!settled) throw Error(ErrorCode::NoConvergence, "Riccati recursion did not settle");
    }

    return log_det_spd(schur_complement(predicted, target, present));
}

}  // namespace causalflow

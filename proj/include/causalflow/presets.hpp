#pragma once

#include "causalflow/core_model.hpp"

namespace causalflow::presets {

/// Bivariate (x, y) example: x drives y, correlated innovations. Same as data/example_spec.json.
ARProcessSpec bivariate_example();

/// Three-node network (z, x, y) with couplings x -> z and z -> y only; gamma_vw is the
/// covariance of the x and y innovations (unit variances).
ARProcessSpec chain_case_a(double gamma_vw = 0.0);

/// Case A plus a direct y -> x coupling.
ARProcessSpec feedback_case_b(double c_yx = 0.4, double gamma_vw = 0.0);

}  // namespace causalflow::presets

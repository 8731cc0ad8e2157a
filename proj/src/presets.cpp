#include "causalflow/presets.hpp"

namespace causalflow::presets {

ARProcessSpec bivariate_example() {
    Matrix c(2, 2);
    c << 0.4, 0.0,
         0.6, 0.3;
    Matrix w(2, 2);
    w << 1.0, 0.3,
         0.3, 1.0;
    return ARProcessSpec({"x", "y"}, c, w);
}

ARProcessSpec chain_case_a(double gamma_vw) { return feedback_case_b(0.0, gamma_vw); }

ARProcessSpec feedback_case_b(double c_yx, double gamma_vw) {
    // rows: receiving channel (z, x, y); columns: driving channel
    Matrix c(3, 3);
    c << 0.4, 0.6, 0.0,
         0.0, 0.5, c_yx,
         0.7, 0.0, 0.3;
    Matrix w = Matrix::Identity(3, 3);
    w(1, 2) = w(2, 1) = gamma_vw;
    return ARProcessSpec({"z", "x", "y"}, c, w);
}

}  // namespace causalflow::presets

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "causalflow/ar_analytic.hpp"
#include "causalflow/measures.hpp"
#include "causalflow/presets.hpp"

#include "support/error_code.hpp"
#include "support/oracles.hpp"
#include "support/random_specs.hpp"

#include <cmath>
#include <random>

using namespace causalflow;

namespace {

ARProcessSpec bivariate(double cxy, double cyx, double sv2, double sw2, double gvw, double ax = 0.0, double ay = 0.0) {
    Matrix c(2, 2);
    c << ax, cyx, cxy, ay;
    Matrix w(2, 2);
    w << sv2, gvw, gvw, sw2;
    return ARProcessSpec({"x", "y"}, c, w);
}

}  // namespace

TEST_CASE("Lyapunov solutions") {
    const ARProcessSpec iid({"x", "y"}, Matrix::Zero(2, 2), Matrix::Identity(2, 2));
    CHECK((solve_lyapunov(iid).gamma0 - Matrix::Identity(2, 2)).norm() == 0.0);

    const ARProcessSpec scalar({"x"}, Matrix::Constant(1, 1, 0.5), Matrix::Constant(1, 1, 1.0));
    CHECK(solve_lyapunov(scalar).variance(0) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));

    Matrix c(2, 2);
    c << 0.5, 0.4, 0.1, 0.3;
    Matrix w(2, 2);
    w << 1, 0.2, 0.2, 1;
    const ARProcessSpec s({"x", "y"}, c, w);
    const Matrix g = solve_lyapunov(s).gamma0;
    CHECK((g - oracle::lyapunov(c, w)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((g - c * g * c.transpose() - w).cwiseAbs().maxCoeff() < 1e-10);

    testsupport::TrivariateSpecs draw(8);
    for (int k = 0; k < 10; ++k) {
        const auto t = draw.general();
        const Matrix gt = solve_lyapunov(t).gamma0;
        CHECK((gt - t.coupling() * gt * t.coupling().transpose() - t.noise_cov()).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(gt.llt().info() == Eigen::Success);
    }

    const ARProcessSpec unstable({"x"}, Matrix::Constant(1, 1, 1.01), Matrix::Constant(1, 1, 1.0));
    CHECK_ERROR_CODE(solve_lyapunov(unstable), ErrorCode::NonStationary);
}

TEST_CASE("closed forms vanish without coupling or noise correlation") {
    const auto s = bivariate(0, 0, 1, 1, 0);
    for (int n = 1; n <= 5; ++n) {
        const auto m = bivariate_closed_forms(s, n);
        CHECK(m.mi == doctest::Approx(0.0));
        CHECK(m.di_xy == doctest::Approx(0.0));
        CHECK(m.di_yx == doctest::Approx(0.0));
        CHECK(m.iie == doctest::Approx(0.0));
    }
    const auto r = bivariate_rates(s);
    CHECK(r.di_rate_xy == doctest::Approx(0.0));
    CHECK(r.te_rate_xy == doctest::Approx(0.0));
    CHECK(r.iie_rate == doctest::Approx(0.0));
}

TEST_CASE("closed forms without feedback") {
    // gamma_vw = 0, c_yx = 0: DI(x->y) = MI and DI(y->x) reduces to I(x_1; y_1).
    const auto s = bivariate(0.7, 0, 1.3, 0.8, 0);
    const double i1 = bivariate_initial_mutual_information(s);
    for (int n = 1; n <= 6; ++n) {
        const auto m = bivariate_closed_forms(s, n);
        CHECK(m.di_xy == doctest::Approx(m.mi).epsilon(1e-14));
        CHECK(m.di_yx == doctest::Approx(i1).epsilon(1e-14));
        CHECK(m.iie == doctest::Approx(i1).epsilon(1e-14));
    }
    const auto r = bivariate_rates(s);
    CHECK(r.di_rate_yx == doctest::Approx(r.iie_rate));
}

TEST_CASE("rates at zero coupling with correlated noise") {
    const auto r = bivariate_rates(bivariate(0, 0, 1, 1, 0.5));
    const double expected = 0.5 * std::log(1.0 / 0.75);
    CHECK(r.di_rate_xy == doctest::Approx(expected).epsilon(1e-14));
    CHECK(r.di_rate_yx == doctest::Approx(expected).epsilon(1e-14));
    CHECK(expected == doctest::Approx(0.14384).epsilon(1e-4));
}

TEST_CASE("DI rate is transfer entropy plus instantaneous exchange") {
    testsupport::BivariateSpecs draw(12);
    for (int k = 0; k < 20; ++k) {
        const auto r = bivariate_rates(draw.general());
        CHECK(r.di_rate_xy == doctest::Approx(r.te_rate_xy + r.iie_rate).epsilon(1e-13));
        CHECK(r.di_rate_yx == doctest::Approx(r.te_rate_yx + r.iie_rate).epsilon(1e-13));
    }
}

TEST_CASE("closed forms are exact for one-way coupling without self-coupling") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> coef(-0.9, 0.9), var(0.3, 2.0);
    for (int k = 0; k < 20; ++k) {
        const auto s = bivariate(coef(rng), 0, var(rng), var(rng), 0);
        const auto model = build_window_model(s, 8);
        const auto cov = oracle::window_cov(s.coupling(), s.noise_cov(), 8);
        for (int n = 2; n <= 8; ++n) {
            const auto cf = bivariate_closed_forms(s, n);
            CHECK(cf.mi == doctest::Approx(oracle::mutual_information(cov, 2, 0, 1, n)).epsilon(1e-10));
            CHECK(cf.di_xy == doctest::Approx(directed_information(model, "x", "y", n).value_nats).epsilon(1e-10));
            CHECK(cf.di_yx == doctest::Approx(directed_information(model, "y", "x", n).value_nats).epsilon(1e-10));
        }
        const auto r = bivariate_rates(s);
        CHECK(r.te_rate_xy == doctest::Approx(measure_rate(s, MeasureKind::TE, "x", "y").value_nats).epsilon(1e-9));
        CHECK(r.di_rate_xy == doctest::Approx(measure_rate(s, MeasureKind::DI, "x", "y").value_nats).epsilon(1e-9));
    }
}

TEST_CASE("closed forms are not exact with self-coupling") {
    // Self-coupling makes x_{n-1} predictable from y^{n-1}, which the closed-form
    // predictor variance ignores.
    const auto s = bivariate(0.5, 0, 1, 1, 0, 0.6, 0.0);
    const auto model = build_window_model(s, 6);
    const double numeric = directed_information(model, "x", "y", 6).value_nats;
    CHECK(std::abs(bivariate_closed_forms(s, 6).di_xy - numeric) > 1e-3);
}

TEST_CASE("initial mutual information and the exact IIE rate") {
    testsupport::BivariateSpecs draw(13);
    for (int k = 0; k < 20; ++k) {
        const auto s = draw.general();
        const auto model = build_window_model(s, 1);
        CHECK(bivariate_initial_mutual_information(s) ==
              doctest::Approx(mutual_information_block(model, "x", "y", 1).value_nats).epsilon(1e-12));
        CHECK(bivariate_rates(s).iie_rate ==
              doctest::Approx(measure_rate(s, MeasureKind::IIE, "x", "y").value_nats).epsilon(1e-10));
    }
}

TEST_CASE("bivariate closed forms reject other dimensions") {
    CHECK_ERROR_CODE(bivariate_closed_forms(presets::chain_case_a(), 3), ErrorCode::DimensionMismatch);
    CHECK_ERROR_CODE(bivariate_closed_forms(presets::bivariate_example(), 0), ErrorCode::InvalidInput);
}

TEST_CASE("trivariate case A") {
    for (double g : {0.0, 0.4, -0.7}) {
        const auto s = presets::chain_case_a(g);
        const auto r = trivariate_case_rates(s, TrivariateCase::A);
        CHECK(r.cond_di_rate_yx_given_dz == doctest::Approx(-0.5 * std::log(1 - g * g)).epsilon(1e-14));
        const double numeric =
            measure_rate(s, MeasureKind::DI, "y", "x", {{"z", ConditioningMode::Delayed}}).value_nats;
        CHECK(std::abs(numeric - r.cond_di_rate_yx_given_dz) < 1e-9);
    }
}

TEST_CASE("trivariate case B printed formula") {
    const auto s = presets::feedback_case_b(0.4, 0.6);
    const auto r = trivariate_case_rates(s, TrivariateCase::B);
    const double sy2 = solve_lyapunov(s).variance(2);
    CHECK(r.cond_di_rate_yx_given_dz ==
          doctest::Approx(0.5 * std::log1p(0.16 * sy2) - 0.5 * std::log1p(0.36)).epsilon(1e-14));
    CHECK(r.alternate_sign_value ==
          doctest::Approx(0.5 * std::log1p(0.16 * sy2) - 0.5 * std::log1p(-0.36)).epsilon(1e-14));
    // The printed expression is not the exact rate; the exact value comes from conditioning.
    const double numeric = measure_rate(s, MeasureKind::DI, "y", "x", {{"z", ConditioningMode::Delayed}}).value_nats;
    CHECK(std::abs(numeric - r.cond_di_rate_yx_given_dz) > 1e-3);
}

TEST_CASE("trivariate topology checks") {
    CHECK_ERROR_CODE(trivariate_case_rates(presets::feedback_case_b(0.4, 0.0), TrivariateCase::A),
                     ErrorCode::TopologyMismatch);
    CHECK_ERROR_CODE(trivariate_case_rates(presets::chain_case_a(0.0), TrivariateCase::B), ErrorCode::TopologyMismatch);
    Matrix c = presets::chain_case_a().coupling();
    c(0, 2) = 0.2;  // y -> z is not part of either case
    const ARProcessSpec s({"z", "x", "y"}, c, Matrix::Identity(3, 3));
    CHECK_ERROR_CODE(trivariate_case_rates(s, TrivariateCase::A), ErrorCode::TopologyMismatch);
    CHECK_ERROR_CODE(trivariate_case_rates(presets::bivariate_example(), TrivariateCase::A), ErrorCode::DimensionMismatch);
}

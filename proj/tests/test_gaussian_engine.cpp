#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "causalflow/gaussian_engine.hpp"

#include "support/error_code.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace causalflow;

namespace {

const double kHalfLog2PiE = 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e);

GaussianJointModel joint(const Matrix& cov) {
    std::vector<Variable> vars;
    for (Eigen::Index i = 0; i < cov.rows(); ++i) vars.push_back({"v" + std::to_string(i), 1});
    return GaussianJointModel(vars, cov);
}

Selection pick(std::initializer_list<int> ids) {
    Selection s;
    for (int i : ids) s.push_back(VariableSelector::present("v" + std::to_string(i), 1));
    return s;
}

Matrix random_spd(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> g;
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = g(rng);
    Matrix s = a * a.transpose() + 0.5 * Matrix::Identity(n, n);
    return 0.5 * (s + s.transpose());
}

}  // namespace

TEST_CASE("entropy of standard normals") {
    const auto m = joint(Matrix::Identity(2, 2));
    CHECK(gaussian_entropy(m, pick({0})) == doctest::Approx(kHalfLog2PiE).epsilon(1e-14));
    CHECK(gaussian_entropy(m, pick({0, 1})) == doctest::Approx(2 * kHalfLog2PiE).epsilon(1e-14));
    CHECK(kHalfLog2PiE == doctest::Approx(1.41894).epsilon(1e-5));
}

TEST_CASE("entropy matches the cofactor determinant") {
    std::mt19937_64 rng(1);
    for (int k = 0; k < 10; ++k) {
        const Matrix s = random_spd(rng, 3);
        const double expected = 0.5 * (3 * std::log(2 * std::numbers::pi * std::numbers::e) + std::log(oracle::cofactor_det(s)));
        CHECK(gaussian_entropy(joint(s), pick({0, 1, 2})) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("prediction error examples") {
    Matrix c(2, 2);
    c << 1, 0.5, 0.5, 1;
    const auto m = joint(c);
    CHECK(prediction_error(m, pick({0}), pick({1})).variance_det == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(prediction_error(m, pick({0}), {}).variance_det == doctest::Approx(1.0));

    // Scalar AR(1) with c = 0.5: the one-step error is the innovation variance.
    const ARProcessSpec s({"x"}, Matrix::Constant(1, 1, 0.5), Matrix::Constant(1, 1, 1.0));
    const auto w = build_window_model(s, 2);
    CHECK(prediction_error(w, {VariableSelector::present("x", 2)}, {VariableSelector::present("x", 1)}).variance_det ==
          doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("chain rule and monotonicity") {
    std::mt19937_64 rng(2);
    for (int k = 0; k < 10; ++k) {
        const auto m = joint(random_spd(rng, 5));
        const double h_ab = gaussian_entropy(m, pick({0, 1, 2, 3}));
        const double h_a = gaussian_entropy(m, pick({0, 1}));
        const auto pe = prediction_error(m, pick({2, 3}), pick({0, 1}));
        CHECK(h_ab - h_a == doctest::Approx(2 * kHalfLog2PiE + 0.5 * pe.log_variance_det).epsilon(1e-9));
        CHECK(pe.variance_det == doctest::Approx(std::exp(pe.log_variance_det)));

        double previous = prediction_error(m, pick({4}), {}).variance_det;
        Selection cond;
        for (int c = 0; c < 4; ++c) {
            cond.push_back(VariableSelector::present("v" + std::to_string(c), 1));
            const double v = prediction_error(m, pick({4}), cond).variance_det;
            CHECK(v <= previous + 1e-10);
            CHECK(v > 0.0);
            previous = v;
        }
    }
}

TEST_CASE("conditional mutual information") {
    // Independent blocks.
    CHECK(conditional_mutual_information(joint(Matrix::Identity(3, 3)), pick({0}), pick({1}), pick({2})) ==
          doctest::Approx(0.0));

    Matrix c(2, 2);
    c << 2.0, 0.6, 0.6, 0.5;
    CHECK(conditional_mutual_information(joint(c), pick({0}), pick({1}), {}) ==
          doctest::Approx(-0.5 * std::log(1 - 0.36 / (2.0 * 0.5))).epsilon(1e-14));

    // Markov chain x - z - y: Cov(x, y) = Cov(x, z) Cov(z, y) / Var(z).
    Matrix chain(3, 3);
    const double vz = 1.5, xz = 0.7, zy = -0.4;
    chain << 1.0, xz, xz * zy / vz, xz, vz, zy, xz * zy / vz, zy, 1.0;
    const auto m = joint(chain);
    CHECK(std::abs(conditional_mutual_information(m, pick({0}), pick({2}), pick({1}))) < 1e-14);
    CHECK(conditional_mutual_information(m, pick({0}), pick({2}), {}) > 0.0);

    std::mt19937_64 rng(3);
    for (int k = 0; k < 20; ++k) {
        const Matrix s = random_spd(rng, 6);
        const auto r = joint(s);
        const double ab = conditional_mutual_information(r, pick({0, 1}), pick({2}), pick({3, 4}));
        const double ba = conditional_mutual_information(r, pick({2}), pick({0, 1}), pick({3, 4}));
        CHECK(ab == doctest::Approx(ba).epsilon(1e-9));
        CHECK(ab == doctest::Approx(oracle::cmi(s, {0, 1}, {2}, {3, 4})).epsilon(1e-10));
        CHECK(ab >= 0.0);
    }
    CHECK(conditional_mutual_information(joint(Matrix::Identity(2, 2)), {}, pick({1}), {}) == 0.0);
}

TEST_CASE("singular covariances") {
    // Exactly collinear variables are rescued by the single jitter retry.
    const auto m = joint(Matrix::Ones(3, 3));
    CHECK(std::isfinite(gaussian_entropy(m, pick({0, 1}))));
    CHECK_ERROR_CODE(prediction_error(m, pick({0}), pick({0})), ErrorCode::SingularCovariance);

    // Zero trace leaves nothing to jitter with; indefinite input stays indefinite.
    CHECK_ERROR_CODE(log_det_spd(Matrix::Zero(2, 2)), ErrorCode::SingularCovariance);
    Matrix indefinite(2, 2);
    indefinite << 1.0, 2.0, 2.0, 1.0;
    CHECK_ERROR_CODE(log_det_spd(indefinite), ErrorCode::SingularCovariance);
    CHECK_ERROR_CODE(factor_spd(indefinite), ErrorCode::SingularCovariance);

    Matrix almost(2, 2);
    almost << 1.0, 1.0, 1.0, 1.0 + 1e-13;
    CHECK_NOTHROW(log_det_spd(almost));
}

TEST_CASE("schur complement") {
    std::mt19937_64 rng(4);
    const Matrix s = random_spd(rng, 4);
    const Matrix sc = schur_complement(s, {0, 1}, {2, 3});
    const Matrix expected = s.topLeftCorner(2, 2) - s.topRightCorner(2, 2) * s.bottomRightCorner(2, 2).inverse() *
                                                        s.bottomLeftCorner(2, 2);
    CHECK((sc - expected).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((schur_complement(s, {1}, {}) - s.block(1, 1, 1, 1)).norm() == 0.0);
}

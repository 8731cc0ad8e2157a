#pragma once

#include "causalflow/core_model.hpp"

#include <Eigen/Eigenvalues>

#include <random>

namespace testsupport {

using causalflow::ARProcessSpec;
using causalflow::Matrix;

inline double largest_modulus(const Matrix& c) {
    return Eigen::EigenSolver<Matrix>(c, false).eigenvalues().cwiseAbs().maxCoeff();
}

/// Bivariate (x, y) draws. Couplings uniform in [-0.9, 0.9], redrawn until the spectral
/// radius is at most 0.8; innovation sd in [0.5, 1.5] and correlation in [-0.7, 0.7].
class BivariateSpecs {
public:
    explicit BivariateSpecs(std::uint64_t seed) : rng_(seed) {}

    ARProcessSpec general() { return draw(false, true); }
    /// c_yx = 0 and gamma_vw = 0.
    ARProcessSpec no_feedback() { return draw(true, false); }
    /// |c_yx| >= 0.2.
    ARProcessSpec with_feedback() {
        for (;;) {
            auto s = draw(false, true);
            if (std::abs(s.coupling_from_to(1, 0)) >= 0.2) return s;
        }
    }

private:
    ARProcessSpec draw(bool zero_yx, bool correlated) {
        std::uniform_real_distribution<double> coef(-0.9, 0.9), sd(0.5, 1.5), corr(-0.7, 0.7);
        Matrix c(2, 2);
        do {
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) c(i, j) = coef(rng_);
            if (zero_yx) c(0, 1) = 0.0;  // row x, column y: y -> x
        } while (largest_modulus(c) > 0.8);
        const double sv = sd(rng_), sw = sd(rng_);
        const double rho = correlated ? corr(rng_) : 0.0;
        Matrix w(2, 2);
        w << sv * sv, rho * sv * sw, rho * sv * sw, sw * sw;
        return ARProcessSpec({"x", "y"}, c, w);
    }

    std::mt19937_64 rng_;
};

/// Three-channel (z, x, y) draws with dense couplings (spectral radius <= 0.8) and a
/// random positive definite innovation covariance.
class TrivariateSpecs {
public:
    explicit TrivariateSpecs(std::uint64_t seed) : rng_(seed) {}

    ARProcessSpec general() {
        std::uniform_real_distribution<double> coef(-0.8, 0.8), entry(-1.0, 1.0);
        Matrix c(3, 3);
        do {
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) c(i, j) = coef(rng_);
        } while (largest_modulus(c) > 0.8);
        Matrix a(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) a(i, j) = entry(rng_);
        Matrix w = a * a.transpose() + 0.3 * Matrix::Identity(3, 3);
        w = 0.5 * (w + w.transpose());
        return ARProcessSpec({"z", "x", "y"}, c, w);
    }

    /// Random couplings restricted to `mask` (1 = allowed), diagonal innovations when
    /// `diagonal_noise`.
    ARProcessSpec masked(const Eigen::Matrix3i& mask, bool diagonal_noise) {
        std::uniform_real_distribution<double> coef(-0.8, 0.8), sd(0.5, 1.5);
        Matrix c(3, 3);
        do {
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) c(i, j) = mask(i, j) ? coef(rng_) : 0.0;
        } while (largest_modulus(c) > 0.8);
        Matrix w = Matrix::Zero(3, 3);
        for (int i = 0; i < 3; ++i) w(i, i) = sd(rng_) * sd(rng_);
        if (!diagonal_noise) {
            std::uniform_real_distribution<double> corr(-0.6, 0.6);
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j) w(i, j) = w(j, i) = 0.5 * corr(rng_) * std::sqrt(w(i, i) * w(j, j));
        }
        return ARProcessSpec({"z", "x", "y"}, c, w);
    }

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace testsupport

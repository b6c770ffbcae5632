#pragma once

// Hill determinant of g'' + Q g = mu g with Q = sin(eta)/(c + sin(eta)) and the
// discriminant Delta(mu; c) computed from it without poles.

#include "hillevans/conformal.hpp"

#include <Eigen/Dense>

namespace hillevans {

struct DiscriminantConfig {
    int half_width = 16;    // matrix indices n in [-N, N]
    int tail_cutoff = 4096; // last mode summed explicitly in the tail
    double pole_guard = 1e-10;
    // Fold the modes |n| > N back into the core determinant. Without it the
    // truncation error only decays like N^-3.
    bool tail_correction = true;
    // Near c = +-1 kappa grows without bound and the coefficients decay
    // slowly; the half-width is raised to kappa_width_factor * |kappa|,
    // capped at max_half_width. 0 disables.
    double kappa_width_factor = 6.0;
    int max_half_width = 256;
};

void validate(const DiscriminantConfig& cfg);

// Cleared-denominator matrix: entry(n, m) = (lambda - n^2) delta_nm + g_(n-m),
// with the diagonal Fourier coefficient dropped.
struct HillMatrix {
    Eigen::MatrixXcd entries;
    Complex lambda;
    int half_width = 0;

    Complex entry(int n, int m) const { return entries(n + half_width, m + half_width); }
};

HillMatrix hill_matrix(const SpectralParam& sp, Complex lambda, const DiscriminantConfig& cfg);

// D(lambda) = K(lambda) / (lambda prod_{n=1}^{N} (lambda - n^2)^2).
Complex hill_determinant(const SpectralParam& sp, Complex lambda, const DiscriminantConfig& cfg);

// Delta(mu) = 2 - 4 D(g0 - mu) sin^2(pi sqrt(g0 - mu)), entire in mu.
Complex discriminant(const SpectralParam& sp, Complex mu, const DiscriminantConfig& cfg);

// Closed form of d Delta / d mu at mu = 0.
Complex discriminant_slope_at_zero(Complex c);

enum class Direction { Lambda, C };

struct DerivativeCheck {
    Complex lhs; // finite difference of det K
    Complex rhs; // det K tr(K^-1 dK)
};

// Compares the finite-difference derivative of det K (plain truncation) with
// the trace formula. Direction::C differentiates at fixed lambda through s,
// so it is usable at c = 0 on either side.
DerivativeCheck fredholm_derivative_check(const SpectralParam& sp, Complex lambda,
                                          const DiscriminantConfig& cfg, Direction direction,
                                          double step = 1e-5);

// sum_{n > m} n^-p for p >= 2, m >= 1.
double zeta_tail(int p, long m);

} // namespace hillevans

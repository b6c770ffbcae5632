#pragma once

// Direct integration of g'' + Q(eta) g = mu g over one period.

#include "hillevans/conformal.hpp"

#include <array>

namespace hillevans {

struct MonodromyConfig {
    double tol = 1e-9;
    double min_cut_distance = 1e-3;
    int initial_steps = 64;
    int max_steps = 1 << 18;
};

struct MonodromyResult {
    Complex m11, m12, m21, m22;
    Complex trace;
    std::array<Complex, 2> multipliers;
    double est_error = 0.0;
    int steps = 0;

    Complex det() const { return m11 * m22 - m12 * m21; }
};

MonodromyResult integrate_monodromy(Complex c, Complex mu, const MonodromyConfig& cfg = {});

// trace - 2 cos(2 pi theta); vanishes for theta-quasiperiodic solutions.
Complex quasiperiodic_residual(Complex c, Complex mu, double theta, const MonodromyConfig& cfg = {});

} // namespace hillevans

#pragma once

// Independent reference computations shared by the test binaries.

#include "hillevans/conformal.hpp"
#include "hillevans/lattice.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <vector>

namespace oracle {

using hillevans::Complex;
using hillevans::Int;

// Lattice points with 0 < |a|^2 < r2, counted row by row via integer square roots.
inline Int disk_count_by_rows(Int r2, Int p1, Int p2) {
    Int count = 0;
    for (Int x = 0; x * x < r2; ++x) {
        Int y = 0;
        while ((y + 1) * (y + 1) + x * x < r2) ++y;
        // points (x, -y..y), doubled for -x when x > 0
        const Int row = 2 * y + 1;
        count += x == 0 ? row : 2 * row;
    }
    count -= 1; // origin
    // nonzero multiples of p strictly inside only when |p|^2 < r2, impossible for r2 = |p|^2
    (void)p1;
    (void)p2;
    return count;
}

// Fourier coefficient of the potential by the trapezoid rule on n points.
inline Complex fourier_by_quadrature(Complex c, int k, int n = 512) {
    Complex acc = 0.0;
    for (int j = 0; j < n; ++j) {
        const double eta = 2.0 * std::numbers::pi * j / n;
        acc += hillevans::potential(eta, c) * std::exp(Complex(0.0, -k * eta));
    }
    return acc / static_cast<double>(n);
}

// 3x3 truncation of the Hill determinant at lambda = 1 + kappa - d^2, as a
// rational function of kappa and d (s^2 eliminated).
inline Complex hill_det_3x3(Complex kappa, Complex d) {
    const Complex d2 = d * d;
    const Complex num = d2 * ((2.0 + d2) * kappa - d2) * (3.0 * kappa * kappa - d2 * kappa - 1.0 + d2);
    const Complex den = (1.0 + kappa - d2) * (d2 - kappa) * (d2 - kappa) * (1.0 - kappa) * (1.0 - kappa);
    return num / den;
}

// Discriminant of the free equation g'' = mu g.
inline Complex free_discriminant(Complex mu) {
    return 2.0 * std::cosh(2.0 * std::numbers::pi * std::sqrt(mu));
}

// Limit of E(c; theta, d) as |c| -> infinity.
inline double evans_at_infinity(double theta, double d) {
    return 2.0 * std::cos(2.0 * std::numbers::pi * theta) - 2.0 * std::cosh(2.0 * std::numbers::pi * d);
}

// Coprime p with p^2 <= max_sq, one of each pair +-p.
inline std::vector<std::pair<Int, Int>> half_plane_wavevectors(Int max_sq) {
    std::vector<std::pair<Int, Int>> out;
    for (Int a = -10; a <= 10; ++a) {
        for (Int b = 0; b <= 10; ++b) {
            if (a * a + b * b == 0 || a * a + b * b > max_sq || std::gcd(a, b) != 1) continue;
            if (b == 0 && a < 0) continue;
            out.emplace_back(a, b);
        }
    }
    return out;
}

} // namespace oracle

#include "hillevans/monodromy.hpp"

#include "hillevans/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace hillevans {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// 3-stage Gauss-Legendre collocation (order 6). Being symplectic it keeps the
// Wronskian of the linear flow equal to one up to rounding.
struct GaussLegendre3 {
    std::array<double, 3> nodes;
    std::array<std::array<double, 3>, 3> a;
    std::array<double, 3> b;

    GaussLegendre3() {
        const double r = std::sqrt(15.0);
        nodes = {0.5 - r / 10.0, 0.5, 0.5 + r / 10.0};
        a = {{{5.0 / 36.0, 2.0 / 9.0 - r / 15.0, 5.0 / 36.0 - r / 30.0},
              {5.0 / 36.0 + r / 24.0, 2.0 / 9.0, 5.0 / 36.0 - r / 24.0},
              {5.0 / 36.0 + r / 30.0, 2.0 / 9.0 + r / 15.0, 5.0 / 36.0}}};
        b = {5.0 / 18.0, 4.0 / 9.0, 5.0 / 18.0};
    }
};

// Fundamental matrix [[g1, g2], [g1', g2']] after `steps` equal steps.
Eigen::Matrix2cd propagate(Complex c, Complex mu, int steps) {
    static const GaussLegendre3 gl;
    const double h = two_pi / steps;
    Eigen::Matrix2cd y = Eigen::Matrix2cd::Identity();
    using Mat6 = Eigen::Matrix<Complex, 6, 6>;
    for (int step = 0; step < steps; ++step) {
        const double t0 = step * h;
        // y' = A(t) y with A = [[0, 1], [mu - Q, 0]]; stage slopes
        // K_i = A(t_i) (y + h sum_j a_ij K_j) solved as one 6x6 system.
        std::array<Complex, 3> coef;
        for (int i = 0; i < 3; ++i) coef[i] = mu - potential(t0 + gl.nodes[i] * h, c);
        Mat6 sys = Mat6::Identity();
        Eigen::Matrix<Complex, 6, 2> rhs;
        for (int i = 0; i < 3; ++i) {
            // A(t_i) = [[0, 1], [coef_i, 0]]
            for (int j = 0; j < 3; ++j) {
                const double ha = h * gl.a[i][j];
                sys(2 * i, 2 * j + 1) -= ha;
                sys(2 * i + 1, 2 * j) -= ha * coef[i];
            }
            rhs.row(2 * i) = y.row(1);
            rhs.row(2 * i + 1) = coef[i] * y.row(0);
        }
        const Eigen::Matrix<Complex, 6, 2> k = sys.partialPivLu().solve(rhs);
        for (int i = 0; i < 3; ++i) {
            y.row(0) += h * gl.b[i] * k.row(2 * i);
            y.row(1) += h * gl.b[i] * k.row(2 * i + 1);
        }
    }
    return y;
}

} // namespace

MonodromyResult integrate_monodromy(Complex c, Complex mu, const MonodromyConfig& cfg) {
    if (!(cfg.tol > 0.0)) throw UsageError("integrator tolerance must be positive");
    if (cut_distance(c) < cfg.min_cut_distance) {
        throw SingularPotentialError("c is too close to the cut [-1, 1] for direct integration");
    }
    int steps = cfg.initial_steps;
    Eigen::Matrix2cd prev = propagate(c, mu, steps);
    while (true) {
        if (2 * steps > cfg.max_steps) {
            throw ConvergenceError("monodromy did not reach the tolerance within the step budget");
        }
        steps *= 2;
        const Eigen::Matrix2cd cur = propagate(c, mu, steps);
        const double diff = std::abs(cur.trace() - prev.trace());
        prev = cur;
        if (diff < cfg.tol) {
            MonodromyResult r;
            r.m11 = cur(0, 0);
            r.m12 = cur(0, 1);
            r.m21 = cur(1, 0);
            r.m22 = cur(1, 1);
            r.trace = cur.trace();
            const Complex disc = std::sqrt(r.trace * r.trace - 4.0);
            r.multipliers = {0.5 * (r.trace + disc), 0.5 * (r.trace - disc)};
            r.est_error = diff;
            r.steps = steps;
            return r;
        }
    }
}

Complex quasiperiodic_residual(Complex c, Complex mu, double theta, const MonodromyConfig& cfg) {
    return integrate_monodromy(c, mu, cfg).trace - 2.0 * std::cos(two_pi * theta);
}

} // namespace hillevans

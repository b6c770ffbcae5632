#include "hillevans/hill.hpp"

#include "hillevans/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace hillevans {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int min_tail_terms = 512;

Complex i_pow(long k) {
    switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
    }
}

// Off-diagonal Fourier coefficients g_k for |k| <= 2N.
std::vector<Complex> off_diagonal_coeffs(const SpectralParam& sp, int n_half) {
    const int span = 2 * n_half;
    std::vector<Complex> g(2 * span + 1, Complex(0.0));
    if (sp.kappa == Complex(0.0)) return g;
    Complex pw = 1.0;
    for (int k = 1; k <= span; ++k) {
        pw *= sp.s;
        g[span + k] = sp.kappa * i_pow(k) * pw;
        g[span - k] = sp.kappa * i_pow(-k) * pw;
    }
    return g;
}

Eigen::MatrixXcd cleared_matrix(const SpectralParam& sp, Complex lambda, int n_half) {
    const int dim = 2 * n_half + 1;
    const int span = 2 * n_half;
    const auto g = off_diagonal_coeffs(sp, n_half);
    Eigen::MatrixXcd k(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            k(i, j) = g[span + (i - j)];
        }
        const double n = i - n_half;
        k(i, i) = lambda - n * n;
    }
    return k;
}

// log prod_{n > m} (1 - lambda/n^2), with the product taken explicitly up to a
// point where the log series converges fast.
Complex log_sine_tail(Complex lambda, long m) {
    const long m0 = std::max<long>({m, 32, static_cast<long>(std::ceil(4.0 * std::sqrt(std::abs(lambda))))});
    Complex acc = 0.0;
    for (long n = m + 1; n <= m0; ++n) {
        const double n2 = static_cast<double>(n) * static_cast<double>(n);
        acc += std::log(1.0 - lambda / n2);
    }
    Complex pw = 1.0;
    for (int j = 1; j <= 40; ++j) {
        pw *= lambda;
        const Complex term = pw * zeta_tail(2 * j, m0) / static_cast<double>(j);
        acc -= term;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(acc))) break;
    }
    return acc;
}

struct CoreValue {
    Complex scaled_det; // det(K) prod_{n<=N} n^-4, times the tail factor
    int n_half = 0;
};

// Determinant of the core block with the tail modes folded in. The modes
// |t| > N enter through a rank-two self-energy (each tail mode couples to the
// core through g_(t-n) = kappa i^(t-n) s^(t-n)) and a second- and third-order
// correction for the couplings among the tail modes themselves.
CoreValue core_determinant(const SpectralParam& sp, Complex lambda, const DiscriminantConfig& cfg) {
    int n_half = cfg.half_width;
    if (cfg.kappa_width_factor > 0.0) {
        const double want = std::ceil(cfg.kappa_width_factor * std::abs(sp.kappa));
        if (want > n_half) n_half = static_cast<int>(std::min<double>(want, cfg.max_half_width));
    }
    if (cfg.tail_correction) {
        // keep every tail mode away from its pole lambda = t^2
        n_half = std::max(n_half, static_cast<int>(std::ceil(std::sqrt(2.0 * std::abs(lambda)))));
    }
    const int dim = 2 * n_half + 1;
    Eigen::MatrixXcd k = cleared_matrix(sp, lambda, n_half);

    Complex log_corr = 0.0;
    const Complex kappa = sp.kappa;
    const Complex s = sp.s;
    if (cfg.tail_correction && kappa != Complex(0.0)) {
        const long t_max = std::max<long>(cfg.tail_cutoff, n_half + 1);
        const double abs_s2 = std::norm(s);
        const Complex s2 = s * s;

        Complex w0 = 0.0;   // sum_t s^(2(t-N-1)) f(t)
        Complex same = 0.0; // sum_{N<n<m} s^(2(m-n)) f(n) f(m)
        Complex acc = 0.0;
        Complex cube = 0.0; // sum_t f(t)^3
        Complex pw = 1.0;
        double decay = 1.0;
        long t = n_half + 1;
        for (; t <= t_max; ++t) {
            const double t2 = static_cast<double>(t) * static_cast<double>(t);
            const Complex f = 1.0 / (lambda - t2);
            w0 += pw * f;
            same += f * acc;
            acc = s2 * (acc + f);
            cube += f * f * f;
            pw *= s2;
            decay *= abs_s2;
            if (t - n_half >= min_tail_terms && decay < 1e-17) break;
        }
        const long m_last = std::min(t, t_max);

        // rank-two self-energy from the tails t > N and t < -N
        Eigen::VectorXcd up(dim), down(dim);
        for (int i = 0; i < dim; ++i) {
            const int n = i - n_half;
            up(i) = std::pow(s, static_cast<double>(n_half + 1 - n));
            down(i) = std::pow(s, static_cast<double>(n_half + 1 + n));
        }
        const Complex scale = kappa * kappa * w0;
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
                k(i, j) -= scale * i_pow(i - j) * (up(i) * up(j) + down(i) * down(j));
            }
        }

        const Complex w = std::pow(s, static_cast<double>(2 * n_half + 2)) * w0;
        const Complex sum_pairs = 2.0 * kappa * kappa * s2 / (1.0 - s2);
        Complex second = kappa * kappa * (4.0 * same + 2.0 * w * w);
        // pairs beyond the explicit range, f(m - j) ~ f(m) (1 + 2j/m)
        second += 2.0 * sum_pairs * zeta_tail(4, m_last) +
                  8.0 * kappa * kappa * s2 / ((1.0 - s2) * (1.0 - s2)) * zeta_tail(5, m_last);
        const Complex cubic_mean = 6.0 * kappa * kappa * kappa * s2 * s2 / ((1.0 - s2) * (1.0 - s2));
        cube -= zeta_tail(6, m_last);
        log_corr = -0.5 * second + (2.0 / 3.0) * cubic_mean * cube;
    }

    for (int i = 0; i < dim; ++i) {
        const int n = i - n_half;
        if (n != 0) k.row(i) /= static_cast<double>(n) * static_cast<double>(n);
    }
    const Complex det = Eigen::PartialPivLU<Eigen::MatrixXcd>(k).determinant();
    return {det * std::exp(log_corr), n_half};
}

} // namespace

void validate(const DiscriminantConfig& cfg) {
    if (cfg.half_width < 1) throw UsageError("half_width must be >= 1");
    if (cfg.tail_cutoff < cfg.half_width + 1) throw UsageError("tail_cutoff must exceed half_width");
    if (cfg.max_half_width < cfg.half_width) throw UsageError("max_half_width must be >= half_width");
    if (!(cfg.kappa_width_factor >= 0.0)) throw UsageError("kappa_width_factor must be >= 0");
    if (!(cfg.pole_guard > 0.0)) throw UsageError("pole_guard must be positive");
}

double zeta_tail(int p, long m) {
    if (p < 2) throw UsageError("zeta_tail needs p >= 2");
    double head = 0.0;
    long start = m;
    if (start < 32) {
        for (long n = m + 1; n <= 32; ++n) head += std::pow(static_cast<double>(n), -p);
        start = 32;
    }
    const double x = static_cast<double>(start);
    const double dp = p;
    // Euler-Maclaurin
    static constexpr std::array<double, 6> bernoulli = {1.0 / 6.0,  -1.0 / 30.0,    1.0 / 42.0,
                                                        -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0};
    double sum = std::pow(x, 1.0 - dp) / (dp - 1.0) - 0.5 * std::pow(x, -dp);
    double rising = dp;  // (p)_(2k-1)
    double fact = 2.0;   // (2k)!
    double xpow = std::pow(x, -dp - 1.0);
    for (std::size_t kk = 0; kk < bernoulli.size(); ++kk) {
        const double term = bernoulli[kk] / fact * rising * xpow;
        sum += term;
        const double k2 = 2.0 * static_cast<double>(kk + 1);
        rising *= (dp + k2 - 1.0) * (dp + k2);
        fact *= (k2 + 1.0) * (k2 + 2.0);
        xpow /= x * x;
    }
    return head + sum;
}

HillMatrix hill_matrix(const SpectralParam& sp, Complex lambda, const DiscriminantConfig& cfg) {
    validate(cfg);
    return {cleared_matrix(sp, lambda, cfg.half_width), lambda, cfg.half_width};
}

Complex hill_determinant(const SpectralParam& sp, Complex lambda, const DiscriminantConfig& cfg) {
    validate(cfg);
    const CoreValue core = core_determinant(sp, lambda, cfg);
    if (std::abs(lambda) < cfg.pole_guard) throw PoleProximityError("lambda is at the pole 0");
    Complex den = lambda;
    for (int n = 1; n <= core.n_half; ++n) {
        const double n2 = static_cast<double>(n) * n;
        if (std::abs(lambda - n2) < cfg.pole_guard) {
            throw PoleProximityError("lambda is at the pole " + std::to_string(n * n));
        }
        const Complex f = 1.0 - lambda / n2;
        den *= f * f;
    }
    return core.scaled_det / den;
}

Complex discriminant(const SpectralParam& sp, Complex mu, const DiscriminantConfig& cfg) {
    validate(cfg);
    const Complex lambda = 1.0 + sp.kappa - mu;
    const CoreValue core = core_determinant(sp, lambda, cfg);
    const Complex tail = std::exp(2.0 * log_sine_tail(lambda, core.n_half));
    return 2.0 - 4.0 * pi * pi * core.scaled_det * tail;
}

Complex discriminant_slope_at_zero(Complex c) {
    if (std::abs(c.imag()) < 1e-14 && std::abs(c.real()) <= 1.0) {
        throw BranchCutError("slope formula needs c off [-1, 1]");
    }
    // c sqrt(1 - 1/c^2) is the branch of sqrt(c^2 - 1) continuous off the cut
    const Complex w = c * std::sqrt(1.0 - 1.0 / (c * c));
    return 2.0 * pi * pi * c * (1.0 + 2.0 * c * c) / ((c * c - 1.0) * w);
}

DerivativeCheck fredholm_derivative_check(const SpectralParam& sp, Complex lambda,
                                          const DiscriminantConfig& cfg, Direction direction,
                                          double step) {
    validate(cfg);
    const int n_half = cfg.half_width;
    const int dim = 2 * n_half + 1;
    const Eigen::MatrixXcd k = cleared_matrix(sp, lambda, n_half);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(k);
    const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
    if (!(lu.rcond() > 1e-14) || !(pivots.minCoeff() > 1e-14 * pivots.maxCoeff())) {
        throw SingularMatrixError("K is singular at the base point");
    }
    const Complex det = lu.determinant();

    Eigen::MatrixXcd dk = Eigen::MatrixXcd::Zero(dim, dim);
    DerivativeCheck out;
    if (direction == Direction::Lambda) {
        dk.setIdentity();
        const Complex hp = cleared_matrix(sp, lambda + step, n_half).determinant();
        const Complex hm = cleared_matrix(sp, lambda - step, n_half).determinant();
        out.lhs = (hp - hm) / (2.0 * step);
    } else {
        // differentiate in s and convert with ds/dc = 2 s^2 / (s^2 - 1)
        const Complex s = sp.s;
        const Complex one_minus = 1.0 - s * s;
        const Complex dkappa = -4.0 * s / (one_minus * one_minus);
        const Complex ds_dc = 2.0 * s * s / (s * s - 1.0);
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
                const int m = i - j;
                if (m == 0) continue;
                const int a = std::abs(m);
                const Complex sa = std::pow(s, static_cast<double>(a));
                const Complex sa1 = std::pow(s, static_cast<double>(a - 1));
                dk(i, j) = i_pow(m) * (dkappa * sa + sp.kappa * static_cast<double>(a) * sa1) * ds_dc;
            }
        }
        SpectralParam plus = param_from_s(s + step);
        SpectralParam minus = param_from_s(s - step);
        const Complex hp = cleared_matrix(plus, lambda, n_half).determinant();
        const Complex hm = cleared_matrix(minus, lambda, n_half).determinant();
        out.lhs = (hp - hm) / (2.0 * step) * ds_dc;
    }
    out.rhs = det * lu.solve(dk).trace();
    return out;
}

} // namespace hillevans

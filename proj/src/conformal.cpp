#include "hillevans/conformal.hpp"

#include "hillevans/errors.hpp"

#include <algorithm>
#include <cmath>

namespace hillevans {

namespace {

constexpr double cut_tol = 1e-14;

Complex i_pow(std::int64_t k) {
    switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
    }
}

} // namespace

std::string to_string(Side side) {
    switch (side) {
    case Side::Upper: return "upper";
    case Side::Lower: return "lower";
    case Side::NotOnCut: return "none";
    }
    return "none";
}

Complex kappa_of_s(Complex s) {
    return -(1.0 + s * s) / (1.0 - s * s);
}

SpectralParam param_from_s(Complex s) {
    SpectralParam sp;
    sp.s = s;
    sp.c = 0.5 * (s + 1.0 / s);
    sp.kappa = kappa_of_s(s);
    sp.side = Side::NotOnCut;
    return sp;
}

SpectralParam s_of_c(Complex c) {
    if (std::abs(c.imag()) < cut_tol) {
        const double re = std::abs(c.real());
        if (std::abs(re - 1.0) < cut_tol) {
            throw SingularPotentialError("c = +-1 gives a double root s = +-1");
        }
        if (re < 1.0) throw BranchCutError("c lies on the cut [-1, 1]");
    }
    const Complex w = std::sqrt(c * c - 1.0);
    const Complex a = c + w;
    const Complex b = c - w;
    // the small root is 1/(large root); this avoids cancellation
    const Complex big = std::abs(a) >= std::abs(b) ? a : b;
    SpectralParam sp;
    sp.c = c;
    sp.s = 1.0 / big;
    sp.kappa = kappa_of_s(sp.s);
    sp.side = Side::NotOnCut;
    return sp;
}

SpectralParam s_at_origin(Side side) {
    SpectralParam sp;
    sp.c = 0.0;
    sp.kappa = 0.0;
    sp.side = side;
    switch (side) {
    case Side::Upper: sp.s = Complex(0.0, -1.0); break;
    case Side::Lower: sp.s = Complex(0.0, 1.0); break;
    case Side::NotOnCut: throw BranchCutError("c = 0 needs an explicit side");
    }
    return sp;
}

SpectralParam spectral_param(Complex c, Side side) {
    if (c == Complex(0.0, 0.0)) return s_at_origin(side);
    return s_of_c(c);
}

Complex fourier_coeff(const SpectralParam& sp, std::int64_t k) {
    if (k == 0) return 1.0 + sp.kappa;
    if (sp.kappa == Complex(0.0, 0.0)) return 0.0;
    const double n = static_cast<double>(k < 0 ? -k : k);
    return sp.kappa * i_pow(k) * std::pow(sp.s, n);
}

Complex potential(double eta, Complex c) {
    const double sn = std::sin(eta);
    const Complex den = c + sn;
    if (std::abs(den) == 0.0) throw PotentialPoleError("c + sin(eta) vanishes");
    return sn / den;
}

double cut_distance(Complex c) {
    const double x = std::clamp(c.real(), -1.0, 1.0);
    return std::abs(c - Complex(x, 0.0));
}

} // namespace hillevans

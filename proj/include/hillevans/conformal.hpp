#pragma once

// The Joukowski variable s with 2c = s + 1/s, the factor kappa and the
// Fourier coefficients of the potential Q(eta) = sin(eta) / (c + sin(eta)).

#include <complex>
#include <cstdint>
#include <string>

namespace hillevans {

using Complex = std::complex<double>;

enum class Side {
    Upper,   // c -> 0 from Im c > 0, s = -i
    Lower,   // c -> 0 from Im c < 0, s = +i
    NotOnCut,
};

std::string to_string(Side side);

struct SpectralParam {
    Complex c;
    Complex s;
    Complex kappa;
    Side side = Side::NotOnCut;
};

// Smaller-modulus root of s^2 - 2 c s + 1 = 0.
SpectralParam s_of_c(Complex c);

// c = 0 approached from the given side; kappa = 0 exactly.
SpectralParam s_at_origin(Side side);

// s_of_c for c != 0, s_at_origin(side) for c == 0. side must not be
// NotOnCut when c == 0.
SpectralParam spectral_param(Complex c, Side side);

// kappa as a function of s.
Complex kappa_of_s(Complex s);

// Parameter triple built directly from s (0 < |s|, s != +-1); c = (s + 1/s)/2.
SpectralParam param_from_s(Complex s);

// g_0 = 1 + kappa, g_k = kappa i^k s^|k|.
Complex fourier_coeff(const SpectralParam& sp, std::int64_t k);

// sin(eta) / (c + sin(eta)).
Complex potential(double eta, Complex c);

// Distance from c to the segment [-1, 1].
double cut_distance(Complex c);

} // namespace hillevans

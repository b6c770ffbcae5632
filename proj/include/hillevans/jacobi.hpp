#pragma once

// Truncated Jacobi operator of one class: the three-term recursion
// R(j) (z_(j+1) - z_(j-1)) = nu z_j over the lattice points a0 + j p.

#include "hillevans/conformal.hpp"
#include "hillevans/evans.hpp"
#include "hillevans/lattice.hpp"

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace hillevans {

struct JacobiTruncation {
    Wavevector p;
    Int k = 0;
    std::array<Int, 2> a0{};
    int half_width = 0; // rows j in [-M, M]
    Eigen::MatrixXd matrix;

    // 1/|p|^2 - 1/|a0 + j p|^2
    double coupling(Int j) const;
};

constexpr int jacobi_max_half_width = 1024;

// M = 0 selects 4 p^2.
JacobiTruncation jacobi_matrix(const Wavevector& p, Int k, int half_width = 0);

// Eigenvalues nu of the truncated matrix with |Re nu| > tol, sorted. With
// half_width = 0 the truncation starts at 4 p^2 and doubles until the
// filtered eigenvalues move by less than 1e-9; eigenvectors of weakly
// unstable modes decay slowly along the class line.
std::vector<Complex> jacobi_spectrum(const Wavevector& p, Int k, int half_width = 0, double tol = 1e-6);

// Growth rate of the Euler perturbation for a Jacobi eigenvalue nu of class k:
// lambda = -(k |p|^2 / 2) nu.
Complex jacobi_to_euler(Complex nu, const Wavevector& p, Int k);

// Euler eigenvalue of a class-k Evans root, lambda = -i k c.
Complex evans_to_euler(Complex c, Int k);

struct CrossValidation {
    Int k = 0;
    std::vector<Complex> jacobi_lambda; // scaled to Euler eigenvalues
    std::vector<Complex> evans_lambda;
    double max_distance = 0.0;
};

// Pairs every Jacobi eigenvalue with an Evans root of the class. Throws
// OracleMismatchError when the counts differ or a pair is further apart than
// match_tol.
CrossValidation cross_validate(const Wavevector& p, Int k, int half_width = 0, const EvansConfig& cfg = {},
                               double match_tol = 1e-4);

} // namespace hillevans

#include "hillevans/jacobi.hpp"

#include "hillevans/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hillevans {

double JacobiTruncation::coupling(Int j) const {
    const Int x = a0[0] + j * p.p1();
    const Int y = a0[1] + j * p.p2();
    return 1.0 / static_cast<double>(p.p_sq()) - 1.0 / static_cast<double>(x * x + y * y);
}

JacobiTruncation jacobi_matrix(const Wavevector& p, Int k, int half_width) {
    if (k <= 0 || k >= p.p_sq()) {
        throw ClassRangeError("class k=" + std::to_string(k) + " outside 0 < k < " + std::to_string(p.p_sq()));
    }
    const int m = half_width == 0 ? static_cast<int>(4 * p.p_sq()) : half_width;
    if (m < p.p_sq()) throw UsageError("Jacobi truncation needs M >= p^2");
    const CompanionBasis q = companion_basis(p);
    const ClassPoint cp = class_point(p, q, k);
    JacobiTruncation jt{p, k, {k * q.q1 + cp.l * p.p1(), k * q.q2 + cp.l * p.p2()}, m, {}};
    const int dim = 2 * m + 1;
    jt.matrix = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const double r = jt.coupling(i - m);
        if (i + 1 < dim) jt.matrix(i, i + 1) = r;
        if (i > 0) jt.matrix(i, i - 1) = -r;
    }
    return jt;
}

namespace {

std::vector<Complex> fixed_spectrum(const Wavevector& p, Int k, int half_width, double tol) {
    const JacobiTruncation jt = jacobi_matrix(p, k, half_width);
    Eigen::EigenSolver<Eigen::MatrixXd> es(jt.matrix, true);
    if (es.info() != Eigen::Success) throw EigenError("eigenvalue iteration did not converge");
    const Eigen::VectorXcd values = es.eigenvalues();
    const Eigen::MatrixXcd vectors = es.eigenvectors();
    const Eigen::MatrixXcd l = jt.matrix.cast<Complex>();
    std::vector<Complex> out;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (std::abs(values(i).real()) <= tol) continue;
        const Eigen::VectorXcd v = vectors.col(i);
        const double res = (l * v - values(i) * v).norm();
        if (res > 1e-8 * v.norm()) {
            throw EigenError("eigenpair residual " + std::to_string(res) + " exceeds 1e-8");
        }
        out.push_back(values(i));
    }
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

} // namespace

std::vector<Complex> jacobi_spectrum(const Wavevector& p, Int k, int half_width, double tol) {
    if (half_width != 0) return fixed_spectrum(p, k, half_width, tol);
    int m = static_cast<int>(std::max<Int>(4 * p.p_sq(), 16));
    std::vector<Complex> prev = fixed_spectrum(p, k, m, tol);
    while (2 * m <= jacobi_max_half_width) {
        m *= 2;
        std::vector<Complex> cur = fixed_spectrum(p, k, m, tol);
        if (cur.size() == prev.size()) {
            double diff = 0.0;
            for (std::size_t i = 0; i < cur.size(); ++i) diff = std::max(diff, std::abs(cur[i] - prev[i]));
            if (diff < 1e-9) return cur;
        }
        prev = std::move(cur);
    }
    throw ConvergenceError("Jacobi spectrum of class k=" + std::to_string(k) + " did not settle by M=" +
                           std::to_string(m));
}

Complex jacobi_to_euler(Complex nu, const Wavevector& p, Int k) {
    return -0.5 * static_cast<double>(k) * static_cast<double>(p.p_sq()) * nu;
}

Complex evans_to_euler(Complex c, Int k) {
    return Complex(0.0, -static_cast<double>(k)) * c;
}

CrossValidation cross_validate(const Wavevector& p, Int k, int half_width, const EvansConfig& cfg,
                               double match_tol) {
    CrossValidation cv;
    cv.k = k;
    for (Complex nu : jacobi_spectrum(p, k, half_width)) cv.jacobi_lambda.push_back(jacobi_to_euler(nu, p, k));
    const ClassPoint cp = class_point(p, companion_basis(p), k);
    const EvansRootSet rs = find_roots(cp.theta(), cp.d(), cfg);
    for (const auto& r : rs.roots) {
        for (int m = 0; m < r.multiplicity; ++m) cv.evans_lambda.push_back(evans_to_euler(r.c, k));
    }
    if (cv.jacobi_lambda.size() != cv.evans_lambda.size()) {
        throw OracleMismatchError("class k=" + std::to_string(k) + ": " + std::to_string(cv.jacobi_lambda.size()) +
                                  " Jacobi eigenvalues vs " + std::to_string(cv.evans_lambda.size()) +
                                  " Evans roots");
    }
    // greedy nearest pairing; sets are tiny
    std::vector<bool> used(cv.evans_lambda.size(), false);
    for (Complex lam : cv.jacobi_lambda) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_i = 0;
        for (std::size_t i = 0; i < cv.evans_lambda.size(); ++i) {
            if (used[i]) continue;
            const double dist = std::abs(cv.evans_lambda[i] - lam);
            if (dist < best) {
                best = dist;
                best_i = i;
            }
        }
        used[best_i] = true;
        cv.max_distance = std::max(cv.max_distance, best);
    }
    if (cv.max_distance > match_tol) {
        throw OracleMismatchError("class k=" + std::to_string(k) + ": Jacobi and Evans eigenvalues differ by " +
                                  std::to_string(cv.max_distance));
    }
    return cv;
}

} // namespace hillevans

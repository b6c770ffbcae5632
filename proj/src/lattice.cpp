#include "hillevans/lattice.hpp"

#include "hillevans/errors.hpp"

#include <cmath>
#include <numeric>
#include <tuple>

namespace hillevans {

namespace {

// Returns (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0.
std::tuple<Int, Int, Int> extended_gcd(Int a, Int b) {
    Int old_r = a, r = b;
    Int old_x = 1, x = 0;
    Int old_y = 0, y = 1;
    while (r != 0) {
        const Int quot = old_r / r;
        std::tie(old_r, r) = std::make_tuple(r, old_r - quot * r);
        std::tie(old_x, x) = std::make_tuple(x, old_x - quot * x);
        std::tie(old_y, y) = std::make_tuple(y, old_y - quot * y);
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_x = -old_x;
        old_y = -old_y;
    }
    return {old_r, old_x, old_y};
}

Int floor_div(Int a, Int b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Representative of num/den (mod 1) in (-1/2, 1/2]: returns (num', shift)
// with num' = num + shift*den and -den < 2*num' <= den.
std::pair<Int, Int> reduce_half_open(Int num, Int den) {
    // shift = -ceil((2 num - den) / (2 den))
    const Int shift = -floor_div(2 * num + den - 1, 2 * den);
    return {num + shift * den, shift};
}

} // namespace

Wavevector::Wavevector(Int p1, Int p2) : p1_(p1), p2_(p2), p_sq_(p1 * p1 + p2 * p2) {
    if (std::gcd(p1, p2) != 1) {
        throw CoprimalityError("wave vector (" + std::to_string(p1) + ", " + std::to_string(p2) +
                               ") is not coprime");
    }
}

std::string to_string(RegionTag tag) {
    switch (tag) {
    case RegionTag::Region0: return "Region0";
    case RegionTag::RegionI: return "RegionI";
    case RegionTag::RegionII: return "RegionII";
    case RegionTag::Boundary0I: return "Boundary0I";
    case RegionTag::BoundaryIII: return "BoundaryIII";
    case RegionTag::Corner: return "Corner";
    }
    return "Unknown";
}

int predicted_root_count(RegionTag tag) {
    switch (tag) {
    case RegionTag::Region0:
    case RegionTag::Boundary0I:
    case RegionTag::Corner: return 0;
    case RegionTag::RegionI:
    case RegionTag::BoundaryIII: return 2;
    case RegionTag::RegionII: return 4;
    }
    return 0;
}

CompanionBasis companion_basis(const Wavevector& p) {
    // p2*q1 - p1*q2 = 1
    auto [g, x, y] = extended_gcd(p.p2(), -p.p1());
    if (g != 1) throw CoprimalityError("wave vector is not coprime");
    CompanionBasis q{x, y, p.p1() * x + p.p2() * y};

    // q -> q + t p shifts p.q by t*p_sq; pick |p.q| minimal, ties to p.q > 0.
    const Int psq = p.p_sq();
    const Int t = -floor_div(2 * q.dot_pq + psq - 1, 2 * psq);
    q.q1 += t * p.p1();
    q.q2 += t * p.p2();
    q.dot_pq += t * psq;
    return q;
}

ClassPoint class_point(const Wavevector& p, const CompanionBasis& q, Int k) {
    if (k == 0) throw TrivialClassError("k = 0 carries no periodic perturbation besides the constant");
    ClassPoint cp;
    cp.k = k;
    cp.p_sq = p.p_sq();
    auto [num, shift] = reduce_half_open(k * q.dot_pq, cp.p_sq);
    cp.theta_num = num;
    cp.l = shift;
    cp.region = classify_rational(cp.theta_num, k, cp.p_sq);
    return cp;
}

RegionTag classify_rational(Int theta_num, Int d_num, Int den) {
    const Int t = reduce_half_open(theta_num, den).first;
    const Int rhs = den * den;
    int inside = 0;
    int on = 0;
    for (Int l = -1; l <= 1; ++l) {
        const Int x = t + l * den;
        const Int lhs = x * x + d_num * d_num;
        if (lhs < rhs) ++inside;
        else if (lhs == rhs) ++on;
    }
    if (on >= 2 || (on == 1 && d_num == 0)) return RegionTag::Corner;
    if (on == 1) return inside == 0 ? RegionTag::Boundary0I : RegionTag::BoundaryIII;
    switch (inside) {
    case 0: return RegionTag::Region0;
    case 1: return RegionTag::RegionI;
    default: return RegionTag::RegionII;
    }
}

RegionTag classify(const ClassPoint& cp) {
    return classify_rational(cp.theta_num, cp.k, cp.p_sq);
}

LatticeDiskCount lattice_points_in_disk(const Wavevector& p) {
    LatticeDiskCount out;
    const Int psq = p.p_sq();
    const Int r = static_cast<Int>(std::sqrt(static_cast<double>(psq))) + 1;
    for (Int a1 = -r; a1 <= r; ++a1) {
        for (Int a2 = -r; a2 <= r; ++a2) {
            const Int n = a1 * a1 + a2 * a2;
            if (n == 0 || n >= psq) continue;
            // a is a multiple of p iff the cross product vanishes
            if (a1 * p.p2() - a2 * p.p1() == 0) continue;
            out.points.push_back({a1, a2});
        }
    }
    out.count = static_cast<Int>(out.points.size());
    return out;
}

Int class_line_count(const Wavevector& p, const CompanionBasis& q, Int k) {
    if (k == 0) throw TrivialClassError("k = 0 is the line through p");
    const Int psq = p.p_sq();
    const Int a1 = k * q.q1;
    const Int a2 = k * q.q2;
    // |a + m p|^2 is minimal near m = -k (p.q)/p_sq; all hits lie within
    // distance 1 of it.
    const Int centre = floor_div(-k * q.dot_pq, psq);
    Int count = 0;
    for (Int m = centre - 2; m <= centre + 3; ++m) {
        const Int x = a1 + m * p.p1();
        const Int y = a2 + m * p.p2();
        if (x * x + y * y < psq) ++count;
    }
    return count;
}

} // namespace hillevans

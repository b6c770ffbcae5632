#pragma once

// Integer lattice geometry of the shear flow cos(p1 x + p2 y): the companion
// basis q, the class coordinates (theta, d) of every wave number k, and the
// exact region classification against the unit circles (theta + l)^2 + d^2 = 1.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace hillevans {

using Int = std::int64_t;

// Coprime integer wave vector p = (p1, p2).
class Wavevector {
public:
    Wavevector(Int p1, Int p2);

    Int p1() const noexcept { return p1_; }
    Int p2() const noexcept { return p2_; }
    Int p_sq() const noexcept { return p_sq_; }

    friend bool operator==(const Wavevector&, const Wavevector&) = default;

private:
    Int p1_;
    Int p2_;
    Int p_sq_;
};

// q with p2*q1 - p1*q2 = 1 and |p.q| minimal.
struct CompanionBasis {
    Int q1 = 0;
    Int q2 = 0;
    Int dot_pq = 0;
};

enum class RegionTag {
    Region0,
    RegionI,
    RegionII,
    Boundary0I,  // on a circle, inside none of the others
    BoundaryIII, // on a circle, inside exactly one other
    Corner,      // on two circles at once (only d = 0 in exact arithmetic)
};

std::string to_string(RegionTag tag);

// Number of eigenvalues c != 0 of a class predicted by its region
// (0, 2 or 4; boundaries carry the count of the lower region).
int predicted_root_count(RegionTag tag);

// theta = theta_num / p_sq in (-1/2, 1/2], d = k / p_sq.
struct ClassPoint {
    Int k = 0;
    Int theta_num = 0;
    Int p_sq = 1;
    Int l = 0; // theta_num = k*dot_pq + l*p_sq
    RegionTag region = RegionTag::Region0;

    double theta() const { return static_cast<double>(theta_num) / static_cast<double>(p_sq); }
    double d() const { return static_cast<double>(k) / static_cast<double>(p_sq); }
};

CompanionBasis companion_basis(const Wavevector& p);

ClassPoint class_point(const Wavevector& p, const CompanionBasis& q, Int k);

RegionTag classify(const ClassPoint& cp);

// Exact classification of theta = theta_num/den, d = d_num/den. theta is
// reduced into (-1/2, 1/2] first.
RegionTag classify_rational(Int theta_num, Int d_num, Int den);

struct LatticeDiskCount {
    Int count = 0;
    std::vector<std::array<Int, 2>> points;
};

// Nonzero lattice points strictly inside the disk |a|^2 < p_sq, excluding
// multiples of p.
LatticeDiskCount lattice_points_in_disk(const Wavevector& p);

// Number of m with |k q + m p|^2 < p_sq.
Int class_line_count(const Wavevector& p, const CompanionBasis& q, Int k);

} // namespace hillevans

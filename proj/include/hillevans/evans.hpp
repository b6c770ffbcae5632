#pragma once

// Evans function of one class, E(c; theta, d) = 2 cos(2 pi theta) - Delta(d^2; c),
// and its zeros in the c-plane by the argument principle.

#include "hillevans/conformal.hpp"
#include "hillevans/hill.hpp"
#include "hillevans/lattice.hpp"

#include <vector>

namespace hillevans {

struct EvansConfig {
    DiscriminantConfig disc;
    double c_max = 2.0;
    // bottom edge of the search region, Im c = eps_cut
    double eps_cut = 1e-5;
    // Squares of side 2 rho around c = +-1 are cut out of the region, with
    // rho = clamp(bump_d_fraction * d, bump_min, bump_max). Roots approach
    // +-1 at a distance of order d as d -> 0.
    double bump_d_fraction = 0.25;
    double bump_min = 1e-3;
    double bump_max = 0.05;
    double root_tol = 1e-9;
    double snap_tol = 2e-8; // absolute, default 1e-8 * c_max
    bool guard = true;      // compare against the region scaled by 4
    int max_newton = 60;
    int max_cells = 4000;
};

void validate(const EvansConfig& cfg);

struct Rect {
    double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
};

struct EvansRoot {
    Complex c;
    int multiplicity = 1;
};

struct EvansRootSet {
    double theta = 0.0;
    double d = 0.0;
    std::vector<EvansRoot> roots; // closed under c -> conj c and c -> -conj c
    RegionTag region_predicted = RegionTag::Region0;
    std::vector<Rect> box;        // search rectangles in the upper half plane
    int winding_total = 0;        // over the upper region
    long evaluations = 0;

    int count() const;
};

// side is only consulted when c == 0.
Complex evans(Complex c, double theta, double d, const DiscriminantConfig& cfg,
              Side side = Side::NotOnCut);

// Region of a real (theta, d), with boundaries detected to within tol.
RegionTag classify_real(double theta, double d, double tol = 1e-12);

double bump_radius(const EvansConfig& cfg, double d);

// Rectangles whose union is the upper search region for a given box size.
std::vector<Rect> search_region(const EvansConfig& cfg, double c_max, double d);

// Winding number of E around the boundary of rect.
int winding_number(double theta, double d, const Rect& rect, const EvansConfig& cfg);

EvansRootSet find_roots(double theta, double d, const EvansConfig& cfg = {});

// Total number of roots with multiplicity, from winding numbers alone.
int count_roots(double theta, double d, const EvansConfig& cfg = {});

// theta = theta_num/den, d = d_num/den; throws OracleMismatchError when the
// count disagrees with the region prediction.
int count_roots(Int theta_num, Int d_num, Int den, const EvansConfig& cfg = {});

struct DerivativeReport {
    double d = 0.0;
    Side side = Side::Upper;
    Complex dE_dc;            // finite difference at c = 0 along the given side
    Complex dE_dc_expected;
    double dE_dd = 0.0;       // at c = 0
    double dE_dd_expected = 0.0;
    double normal = 0.0;      // outward normal derivative on the circle
    double normal_expected = 0.0;
    Complex velocity;         // dc/dt of the root born when entering the disk
    Complex velocity_expected;
};

DerivativeReport derivative_checks(double d, Side side, const EvansConfig& cfg = {});

} // namespace hillevans

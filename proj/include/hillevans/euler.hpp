#pragma once

// Spectrum of the Euler equations linearised about cos(p1 x + p2 y): the
// product Evans function over the classes k = 1 .. p^2 - 1 and the count of
// eigenvalues with nonzero real part.

#include "hillevans/evans.hpp"
#include "hillevans/lattice.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace hillevans {

inline constexpr int report_schema_version = 1;

struct EulerConfig {
    EvansConfig evans;
    bool normalize = false;  // divide each factor by its limit at infinity
    bool count_only = false; // winding numbers only, no root refinement
    int threads = 1;
};

// prod_k E(i lambda / k; theta(k), d(k))^2.
Complex full_evans(const Wavevector& p, Complex lambda, const EulerConfig& cfg = {});

struct ClassResult {
    ClassPoint point;
    Int line_count = 0;          // lattice points of the class line inside the disk
    std::vector<EvansRoot> roots; // in the c-plane; empty in count-only mode
    std::vector<Complex> lambdas; // -i k c, with multiplicity
    int count = 0;
};

struct SpectrumReport {
    Wavevector p{0, 1};
    CompanionBasis q;
    bool count_only = false;
    std::vector<ClassResult> per_class; // sorted by k
    Int distinct_count = 0;             // sum of per-class counts
    Int total_count = 0;                // with the multiplicity two of the squared factors
    Int lattice_count = 0;
    bool sharp = false;
    std::map<RegionTag, int> tallies;
    std::vector<std::string> notes;
};

SpectrumReport spectrum_report(const Wavevector& p, const EulerConfig& cfg = {});

nlohmann::json to_json(const SpectrumReport& report);

} // namespace hillevans

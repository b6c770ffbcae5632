#include "hillevans/euler.hpp"

#include "hillevans/errors.hpp"
#include "hillevans/jacobi.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

namespace hillevans {

namespace {

constexpr double pi = std::numbers::pi;

std::string fraction(Int num, Int den) {
    return std::to_string(num) + "/" + std::to_string(den);
}

ClassResult solve_class(const Wavevector& p, const CompanionBasis& q, Int k, const EulerConfig& cfg) {
    ClassResult cr;
    cr.point = class_point(p, q, k);
    cr.line_count = class_line_count(p, q, k);
    const double theta = cr.point.theta();
    const double d = cr.point.d();
    try {
        if (cfg.count_only) {
            cr.count = count_roots(theta, d, cfg.evans);
        } else {
            const EvansRootSet rs = find_roots(theta, d, cfg.evans);
            cr.roots = rs.roots;
            cr.count = rs.count();
            for (const auto& r : rs.roots) {
                for (int m = 0; m < r.multiplicity; ++m) cr.lambdas.push_back(evans_to_euler(r.c, k));
            }
        }
    } catch (const ContourThroughRootError& e) {
        throw ContourThroughRootError("class k=" + std::to_string(k) + ": " + e.what());
    } catch (const ConvergenceError& e) {
        throw ConvergenceError("class k=" + std::to_string(k) + ": " + e.what());
    } catch (const Error& e) {
        throw Error("class k=" + std::to_string(k) + ": " + e.what());
    }
    return cr;
}

} // namespace

Complex full_evans(const Wavevector& p, Complex lambda, const EulerConfig& cfg) {
    const CompanionBasis q = companion_basis(p);
    Complex product = 1.0;
    for (Int k = 1; k < p.p_sq(); ++k) {
        const ClassPoint cp = class_point(p, q, k);
        const Complex c = Complex(0.0, 1.0) * lambda / static_cast<double>(k);
        Complex e;
        try {
            e = evans(c, cp.theta(), cp.d(), cfg.evans.disc);
        } catch (const BranchCutError& err) {
            throw ClassBranchCutError(k, err.what());
        } catch (const SingularPotentialError& err) {
            throw ClassBranchCutError(k, err.what());
        }
        if (cfg.normalize) {
            e /= 2.0 * std::cos(2.0 * pi * cp.theta()) - 2.0 * std::cosh(2.0 * pi * cp.d());
        }
        product *= e * e;
    }
    return product;
}

SpectrumReport spectrum_report(const Wavevector& p, const EulerConfig& cfg) {
    validate(cfg.evans);
    SpectrumReport rep;
    rep.p = p;
    rep.q = companion_basis(p);
    rep.count_only = cfg.count_only;
    const Int n_classes = p.p_sq() - 1;
    rep.per_class.resize(static_cast<std::size_t>(std::max<Int>(n_classes, 0)));

    std::atomic<Int> next{1};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        for (Int k = next++; k <= n_classes; k = next++) {
            try {
                rep.per_class[static_cast<std::size_t>(k - 1)] = solve_class(p, rep.q, k, cfg);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = n_classes + 1;
            }
        }
    };
    const int threads = std::max(1, cfg.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (const auto& cr : rep.per_class) {
        rep.distinct_count += cr.count;
        rep.tallies[cr.point.region] += 1;
        const Int k = cr.point.k;
        const std::string where = "class k=" + std::to_string(k) + " at (theta, d) = (" +
                                  fraction(cr.point.theta_num, cr.point.p_sq) + ", " +
                                  fraction(k, cr.point.p_sq) + ")";
        // exact position relative to the unstable disk: theta_num^2 + k^2 against p^4
        const std::string radius = " (" + std::to_string(cr.point.theta_num * cr.point.theta_num + k * k) +
                                   " vs " + std::to_string(cr.point.p_sq * cr.point.p_sq) + ")";
        switch (cr.point.region) {
        case RegionTag::Region0:
            rep.notes.push_back(where + " lies outside the unstable disk" + radius + "; no eigenvalue off the "
                                        "imaginary axis");
            break;
        case RegionTag::Boundary0I:
            rep.notes.push_back(where + " lies exactly on the unstable-disk circle" + radius +
                                "; no eigenvalue off the imaginary axis");
            break;
        case RegionTag::BoundaryIII:
            rep.notes.push_back(where + " lies exactly on an inner circle; one pair sits at c = 0 and is "
                                        "not counted");
            break;
        case RegionTag::Corner:
            rep.notes.push_back(where + " lies on two circles at once");
            break;
        default: break;
        }
        if (cr.count != 2 * cr.line_count) {
            rep.notes.push_back(where + ": " + std::to_string(cr.count) + " roots but " +
                                std::to_string(cr.line_count) + " lattice points on the class line");
        }
        if (cr.count != predicted_root_count(cr.point.region)) {
            rep.notes.push_back(where + ": root count " + std::to_string(cr.count) + " differs from the " +
                                to_string(cr.point.region) + " prediction");
        }
    }
    rep.total_count = 2 * rep.distinct_count;
    rep.lattice_count = lattice_points_in_disk(p).count;
    rep.sharp = rep.total_count == 2 * rep.lattice_count;
    return rep;
}

nlohmann::json to_json(const SpectrumReport& report) {
    using nlohmann::json;
    auto complex_json = [](Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; };
    json classes = json::array();
    for (const auto& cr : report.per_class) {
        json roots = json::array();
        for (const auto& r : cr.roots) {
            roots.push_back({{"re", r.c.real()}, {"im", r.c.imag()}, {"multiplicity", r.multiplicity}});
        }
        json lambdas = json::array();
        for (Complex l : cr.lambdas) lambdas.push_back(complex_json(l));
        classes.push_back({
            {"k", cr.point.k},
            {"theta", {{"num", cr.point.theta_num}, {"den", cr.point.p_sq}}},
            {"d", {{"num", cr.point.k}, {"den", cr.point.p_sq}}},
            {"l", cr.point.l},
            {"region", to_string(cr.point.region)},
            {"line_count", cr.line_count},
            {"count", cr.count},
            {"roots_c", roots},
            {"lambdas", lambdas},
        });
    }
    json tallies = json::object();
    for (const auto& [tag, n] : report.tallies) tallies[to_string(tag)] = n;
    return json{
        {"schema_version", report_schema_version},
        {"p", {report.p.p1(), report.p.p2()}},
        {"p_sq", report.p.p_sq()},
        {"q", {report.q.q1, report.q.q2}},
        {"dot_pq", report.q.dot_pq},
        {"count_only", report.count_only},
        {"classes", classes},
        {"distinct_count", report.distinct_count},
        {"total_count", report.total_count},
        {"lattice_count", report.lattice_count},
        {"sharp", report.sharp},
        {"tallies", tallies},
        {"notes", report.notes},
    };
}

} // namespace hillevans

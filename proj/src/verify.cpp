#include "hillevans/cli.hpp"
#include "hillevans/errors.hpp"
#include "hillevans/jacobi.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <algorithm>
#include <functional>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>

namespace hillevans::cli {

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool passed;
    std::string detail;
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

Complex slope_fd(const SpectralParam& sp, const DiscriminantConfig& dc) {
    const double h = 1e-5;
    auto f = [&](double mu) { return discriminant(sp, mu, dc); };
    return (-f(2 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2 * h)) / (12.0 * h);
}

Outcome check_hill_vs_monodromy(const RunConfig& cfg) {
    const Complex cs[] = {2.0, {0.0, 0.2}, {0.0, 1.0 / std::sqrt(2.0)}, {0.1, 0.2}, {0.5, 0.7}};
    const double mus[] = {0.0, 0.09, 0.25, 0.5, 1.0};
    double worst = 0.0;
    double worst_det = 0.0;
    for (Complex c : cs) {
        const SpectralParam sp = s_of_c(c);
        for (double mu : mus) {
            const MonodromyResult m = integrate_monodromy(c, mu, cfg.mono());
            worst = std::max(worst, std::abs(discriminant(sp, mu, cfg.disc()) - m.trace));
            worst_det = std::max(worst_det, std::abs(m.det() - 1.0));
        }
    }
    return {worst <= 1e-6 && worst_det <= 10.0 * cfg.integrator_tol,
            "max |Delta - trace| = " + sci(worst) + ", max |det M - 1| = " + sci(worst_det)};
}

Outcome check_origin_closed_form(const RunConfig& cfg) {
    double worst = 0.0;
    for (Side side : {Side::Upper, Side::Lower}) {
        const SpectralParam sp = s_at_origin(side);
        for (int i = 0; i < 200; ++i) {
            const double d = i / 199.0;
            const Complex v = discriminant(sp, d * d, cfg.disc());
            worst = std::max(worst, std::abs(v - 2.0 * std::cos(2.0 * pi * std::sqrt(1.0 - d * d))));
        }
    }
    return {worst <= 1e-9, "max error " + sci(worst)};
}

Outcome check_slope(const RunConfig& cfg) {
    double worst = 0.0;
    for (Complex c : {Complex(2.0), Complex(0.0, 3.0), Complex(0.5, 0.7)}) {
        const Complex fd = slope_fd(s_of_c(c), cfg.disc());
        const Complex exact = discriminant_slope_at_zero(c);
        worst = std::max(worst, std::abs(fd - exact) / std::abs(exact));
    }
    const double at_max = std::abs(slope_fd(s_of_c({0.0, 1.0 / std::sqrt(2.0)}), cfg.disc()));
    return {worst <= 1e-5 && at_max <= 1e-7,
            "max relative error " + sci(worst) + ", |slope| at i/sqrt2 = " + sci(at_max)};
}

Outcome check_realness(const RunConfig& cfg) {
    double worst = 0.0;
    for (Complex c : {Complex(0.0, 0.2), Complex(0.0, 0.5), Complex(0.0, 1.3), Complex(1.5), Complex(-2.0)}) {
        const SpectralParam sp = s_of_c(c);
        for (double mu = 0.0; mu <= 1.5; mu += 0.1) {
            worst = std::max(worst, std::abs(discriminant(sp, mu, cfg.disc()).imag()));
        }
    }
    return {worst <= 1e-10, "max |Im Delta| = " + sci(worst)};
}

Outcome check_evans_symmetry(const RunConfig& cfg) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_real_distribution<double> pos(0.05, 2.0);
    double worst = 0.0;
    for (int i = 0; i < 60; ++i) {
        const Complex c(u(rng), pos(rng));
        const double theta = 0.5 * std::abs(u(rng)) / 2.0;
        const double d = 0.5 * std::abs(u(rng));
        const Complex a = evans(c, theta, d, cfg.disc());
        const Complex b = evans(std::conj(c), theta, d, cfg.disc());
        worst = std::max(worst, std::abs(b - std::conj(a)) / std::max(1.0, std::abs(a)));
    }
    return {worst <= 1e-10, "max |E(conj c) - conj E(c)| = " + sci(worst)};
}

Outcome check_phenomenology(const RunConfig& cfg) {
    struct Case {
        double theta, d;
        int imaginary, complex_roots;
    };
    const Case cases[] = {{0.1, 0.6, 2, 0}, {0.22, 0.6, 4, 0}, {0.4, 0.6, 0, 4}};
    std::string detail;
    bool ok = true;
    for (const auto& cs : cases) {
        const EvansRootSet rs = find_roots(cs.theta, cs.d, cfg.evans());
        int imag = 0, cplx = 0;
        for (const auto& r : rs.roots) (r.c.real() == 0.0 ? imag : cplx) += r.multiplicity;
        ok = ok && imag == cs.imaginary && cplx == cs.complex_roots;
        detail += "(" + sci(cs.theta) + "," + sci(cs.d) + "): " + std::to_string(imag) + " imaginary, " +
                  std::to_string(cplx) + " complex; ";
    }
    return {ok, detail};
}

Outcome check_jacobi(const RunConfig& cfg, std::vector<std::pair<int, int>> ps) {
    double worst = 0.0;
    int classes = 0;
    for (auto [a, b] : ps) {
        const Wavevector p(a, b);
        for (Int k = 1; k < p.p_sq(); ++k) {
            worst = std::max(worst, cross_validate(p, k, 0, cfg.evans()).max_distance);
            ++classes;
        }
    }
    return {worst <= 1e-4, std::to_string(classes) + " classes, max pairing distance " + sci(worst)};
}

std::vector<Wavevector> small_wavevectors(Int max_sq) {
    std::vector<Wavevector> out;
    const Int r = static_cast<Int>(std::sqrt(static_cast<double>(max_sq)));
    for (Int a = -r; a <= r; ++a) {
        for (Int b = 0; b <= r; ++b) {
            if (a * a + b * b > max_sq || std::gcd(a, b) != 1) continue;
            if (b == 0 && a < 0) continue; // p and -p give the same flow
            if (b > 0 || a > 0) out.emplace_back(a, b);
        }
    }
    return out;
}

Outcome check_sharpness(const RunConfig& cfg, const std::vector<Wavevector>& ps, bool count_only) {
    EulerConfig ec = cfg.euler();
    ec.count_only = count_only;
    std::string failed;
    for (const auto& p : ps) {
        const SpectrumReport rep = spectrum_report(p, ec);
        if (!rep.sharp) {
            failed += " (" + std::to_string(p.p1()) + "," + std::to_string(p.p2()) + ")";
        }
    }
    return {failed.empty(), std::to_string(ps.size()) + " wave vectors" +
                                (failed.empty() ? std::string(", all sharp") : ", not sharp:" + failed)};
}

Outcome check_flagship(const RunConfig& cfg) {
    EulerConfig ec = cfg.euler();
    ec.count_only = true;
    const SpectrumReport rep = spectrum_report(Wavevector(4, 5), ec);
    const bool tallies = rep.tallies.count(RegionTag::RegionI) && rep.tallies.at(RegionTag::RegionI) == 11 &&
                         rep.tallies.at(RegionTag::RegionII) == 26 && rep.tallies.at(RegionTag::BoundaryIII) == 1 &&
                         rep.tallies.at(RegionTag::Boundary0I) == 1 && rep.tallies.at(RegionTag::Region0) == 1;
    return {rep.distinct_count == 128 && rep.sharp && tallies,
            std::to_string(rep.distinct_count) + " distinct eigenvalues, lattice " +
                std::to_string(rep.lattice_count) + (tallies ? ", tallies 11/26/1/1/1" : ", tallies differ")};
}

Outcome check_region_law(const RunConfig& cfg) {
    // every (theta, d) = (a/20, b/20) off the circles in a quarter of the domain
    int n = 0;
    int bad = 0;
    for (Int b = 1; b < 20; b += 2) {
        for (Int a = 0; a <= 10; a += 2) {
            const RegionTag tag = classify_rational(a, b, 20);
            if (tag == RegionTag::Boundary0I || tag == RegionTag::Corner) continue;
            ++n;
            try {
                count_roots(a, b, 20, cfg.evans());
            } catch (const OracleMismatchError&) {
                ++bad;
            }
        }
    }
    return {bad == 0, std::to_string(n) + " points, " + std::to_string(bad) + " mismatches"};
}

Outcome check_truncation(const RunConfig& cfg) {
    // relative change when five modes are added, from N = 20 on
    DiscriminantConfig a = cfg.disc();
    a.half_width = std::max(a.half_width, 20);
    a.max_half_width = std::max(a.max_half_width, a.half_width + 5);
    DiscriminantConfig b = a;
    b.half_width += 5;
    double worst = 0.0;
    for (Complex c : {Complex(0.0, 0.2), Complex(0.0, 0.5), Complex(0.1, 0.2), Complex(2.0)}) {
        const SpectralParam sp = s_of_c(c);
        for (int j = 0; j <= 15; ++j) {
            const Complex x = discriminant(sp, 0.1 * j, a);
            worst = std::max(worst, std::abs(x - discriminant(sp, 0.1 * j, b)) / std::max(1.0, std::abs(x)));
        }
    }
    return {worst <= 1e-9, "N = " + std::to_string(a.half_width) + " vs N + 5, max relative change " + sci(worst)};
}

Outcome check_pole_free(const RunConfig& cfg) {
    double worst = 0.0;
    for (Complex c : {Complex(2.0), Complex(0.0, 0.3), Complex(0.1, 0.2)}) {
        const SpectralParam sp = s_of_c(c);
        for (int n = 0; n <= 3; ++n) {
            const Complex mu = fourier_coeff(sp, 0) - static_cast<double>(n * n);
            const Complex at = discriminant(sp, mu, cfg.disc());
            const Complex near = 0.5 * (discriminant(sp, mu + 1e-5, cfg.disc()) + discriminant(sp, mu - 1e-5, cfg.disc()));
            const double err = std::isfinite(at.real()) ? std::abs(at - near) / std::max(1.0, std::abs(at)) : 1e300;
            worst = std::max(worst, err);
        }
    }
    return {worst <= 1e-8, "max |Delta(n^2) - nearby mean| = " + sci(worst)};
}

Outcome check_fredholm(const RunConfig& cfg) {
    DiscriminantConfig dc = cfg.disc();
    dc.half_width = 8;
    double worst = 0.0;
    const SpectralParam sp = s_of_c({0.1, 0.2});
    for (Direction dir : {Direction::Lambda, Direction::C}) {
        const DerivativeCheck chk = fredholm_derivative_check(sp, 0.3, dc, dir);
        worst = std::max(worst, std::abs(chk.lhs - chk.rhs) / std::max(1.0, std::abs(chk.rhs)));
    }
    double at_origin = 0.0;
    for (Side side : {Side::Upper, Side::Lower}) {
        const SpectralParam o = s_at_origin(side);
        const DerivativeCheck chk = fredholm_derivative_check(o, 0.3, dc, Direction::C);
        const double scale = std::abs(hill_matrix(o, 0.3, dc).entries.determinant());
        at_origin = std::max(at_origin, std::abs(chk.rhs) / scale);
    }
    return {worst <= 1e-6 && at_origin <= 1e-14,
            "trace formula error " + sci(worst) + ", relative c-derivative at c = 0 " + sci(at_origin)};
}

Outcome check_monodromy_symmetry(const RunConfig& cfg) {
    double worst = 0.0;
    for (Complex c : {Complex(0.1, 0.2), Complex(0.5, 0.7), Complex(2.0, 0.3)}) {
        for (double mu : {0.0, 0.25, 0.8, -0.5}) {
            const Complex t = integrate_monodromy(c, mu, cfg.mono()).trace;
            worst = std::max(worst, std::abs(integrate_monodromy(-c, mu, cfg.mono()).trace - t));
            worst = std::max(worst, std::abs(integrate_monodromy(std::conj(c), mu, cfg.mono()).trace - std::conj(t)));
        }
    }
    return {worst <= 100.0 * cfg.integrator_tol, "max trace asymmetry " + sci(worst)};
}

Outcome check_evans_axes(const RunConfig& cfg) {
    double imag = 0.0;
    double asym = 0.0;
    double min_real_axis = 1e300;
    for (double theta : {0.1, 0.22, 0.4}) {
        for (double d : {0.3, 0.6, 0.9}) {
            for (double b : {0.01, 0.3, 1.0, 4.0}) {
                imag = std::max(imag, std::abs(evans({0.0, b}, theta, d, cfg.disc()).imag()));
                imag = std::max(imag, std::abs(evans({0.0, -b}, theta, d, cfg.disc()).imag()));
            }
            for (int j = 0; j <= 40; ++j) {
                const double c = 1.001 + (10.0 - 1.001) * j / 40.0;
                const Complex e = evans(c, theta, d, cfg.disc());
                imag = std::max(imag, std::abs(e.imag()));
                min_real_axis = std::min(min_real_axis, std::abs(e));
            }
            const double limit = 2.0 * std::cos(2.0 * pi * theta) - 2.0 * std::cosh(2.0 * pi * d);
            for (double arg : {0.3, 1.7, 4.0}) {
                asym = std::max(asym, std::abs(evans(std::polar(1e3, arg), theta, d, cfg.disc()) - limit));
            }
        }
    }
    return {imag <= 1e-9 && asym <= 1e-3 && min_real_axis > 0.01,
            "max |Im E| on the axes " + sci(imag) + ", deviation at |c| = 1e3 " + sci(asym) +
                ", min |E| on [1.001, 10] " + sci(min_real_axis)};
}

Outcome check_cut_derivatives(const RunConfig& cfg) {
    double worst = 0.0;
    for (double d : {0.5, 0.6, 0.9}) {
        for (Side side : {Side::Upper, Side::Lower}) {
            const DerivativeReport r = derivative_checks(d, side, cfg.evans());
            const double scale = std::abs(r.dE_dc_expected);
            worst = std::max(worst, std::abs(r.dE_dc - r.dE_dc_expected) / scale);
            worst = std::max(worst, std::abs(r.dE_dd - r.dE_dd_expected) / scale);
            worst = std::max(worst, std::abs(r.normal - r.normal_expected) / scale);
            worst = std::max(worst, std::abs(r.velocity - r.velocity_expected));
        }
    }
    const bool flips = derivative_checks(0.85, Side::Upper, cfg.evans()).normal > 0.0 &&
                       derivative_checks(0.88, Side::Upper, cfg.evans()).normal < 0.0;
    return {worst <= 1e-3 && flips, "max deviation " + sci(worst) +
                                        (flips ? ", normal derivative changes sign at sqrt(3)/2" : ", no sign change")};
}

Outcome check_jacobi_structure(Int max_sq) {
    int classes = 0;
    int miscounted = 0;
    double asym = 0.0;
    for (const auto& p : small_wavevectors(max_sq)) {
        const CompanionBasis q = companion_basis(p);
        for (Int k = 1; k < p.p_sq(); ++k) {
            const auto nu = jacobi_spectrum(p, k, static_cast<int>(4 * p.p_sq()));
            ++classes;
            if (static_cast<Int>(nu.size()) != 2 * class_line_count(p, q, k)) ++miscounted;
            for (Complex z : nu) {
                double best_neg = 1e300, best_conj = 1e300;
                for (Complex w : nu) {
                    best_neg = std::min(best_neg, std::abs(w + z));
                    best_conj = std::min(best_conj, std::abs(w - std::conj(z)));
                }
                asym = std::max({asym, best_neg, best_conj});
            }
        }
    }
    return {miscounted == 0 && asym <= 1e-8, std::to_string(classes) + " classes, " + std::to_string(miscounted) +
                                                 " miscounted, max symmetry defect " + sci(asym)};
}

} // namespace

std::vector<CheckResult> cmd_verify(std::ostream& log, VerifyLevel level, const RunConfig& cfg) {
    cfg.validate();
    std::vector<std::pair<std::string, std::function<Outcome()>>> checks = {
        {"hill-vs-monodromy", [&] { return check_hill_vs_monodromy(cfg); }},
        {"origin-closed-form", [&] { return check_origin_closed_form(cfg); }},
        {"slope-at-zero", [&] { return check_slope(cfg); }},
        {"discriminant-realness", [&] { return check_realness(cfg); }},
        {"evans-conjugation", [&] { return check_evans_symmetry(cfg); }},
        {"root-phenomenology", [&] { return check_phenomenology(cfg); }},
        {"jacobi-vs-evans", [&] { return check_jacobi(cfg, {{1, 1}, {1, 2}}); }},
        {"sharpness-small", [&] { return check_sharpness(cfg, {Wavevector(1, 1), Wavevector(1, 2)}, false); }},
        {"truncation-convergence", [&] { return check_truncation(cfg); }},
        {"pole-freeness", [&] { return check_pole_free(cfg); }},
        {"fredholm-trace", [&] { return check_fredholm(cfg); }},
        {"monodromy-symmetry", [&] { return check_monodromy_symmetry(cfg); }},
        {"evans-axes-and-infinity", [&] { return check_evans_axes(cfg); }},
        {"cut-derivatives", [&] { return check_cut_derivatives(cfg); }},
        {"jacobi-structure-small", [&] { return check_jacobi_structure(5); }},
    };
    if (level == VerifyLevel::Full) {
        checks.push_back({"jacobi-vs-evans-(2,3)", [&] { return check_jacobi(cfg, {{2, 3}}); }});
        checks.push_back({"sharpness-p2-le-25", [&] { return check_sharpness(cfg, small_wavevectors(25), false); }});
        checks.push_back({"flagship-(4,5)-count", [&] { return check_flagship(cfg); }});
        checks.push_back({"region-count-law", [&] { return check_region_law(cfg); }});
        checks.push_back({"jacobi-structure-p2-le-25", [&] { return check_jacobi_structure(25); }});
    }
    std::vector<CheckResult> results;
    for (auto& [name, fn] : checks) {
        const auto t0 = std::chrono::steady_clock::now();
        CheckResult r;
        r.name = name;
        try {
            const Outcome o = fn();
            r.passed = o.passed;
            r.detail = o.detail;
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("error: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        log << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << " [" << sci(r.seconds) << " s]\n";
        log.flush();
        results.push_back(r);
    }
    return results;
}

} // namespace hillevans::cli

#include "hillevans/errors.hpp"
#include "hillevans/evans.hpp"
#include "hillevans/monodromy.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

using namespace hillevans;
using std::numbers::pi;

namespace {

const Complex I(0.0, 1.0);
const DiscriminantConfig disc;

bool on_imaginary_axis(Complex c) { return c.real() == 0.0; }

bool closed_under_symmetries(const EvansRootSet& set, double tol) {
    auto contains = [&](Complex z) {
        return std::any_of(set.roots.begin(), set.roots.end(),
                           [&](const EvansRoot& r) { return std::abs(r.c - z) < tol; });
    };
    return std::all_of(set.roots.begin(), set.roots.end(), [&](const EvansRoot& r) {
        return contains(std::conj(r.c)) && contains(-r.c) && contains(-std::conj(r.c));
    });
}

} // namespace

TEST_CASE("value at the origin") {
    for (Side side : {Side::Upper, Side::Lower}) {
        for (double theta : {0.0, 0.1, 0.37, 0.5}) {
            for (double d : {0.0, 0.3, 0.6, 0.95, 1.3}) {
                const double u = std::sqrt(std::abs(1.0 - d * d));
                const double sin_term = d <= 1.0 ? std::sin(pi * u) : 0.0;
                const double want = -4.0 * std::pow(std::sin(pi * theta), 2) + 4.0 * sin_term * sin_term;
                const Complex got = evans(0.0, theta, d, disc, side);
                if (d <= 1.0) CHECK(std::abs(got - want) < 1e-10);
                // d > 1: 2 cos(2 pi sqrt(1 - d^2)) = 2 cosh(2 pi sqrt(d^2 - 1))
                if (d > 1.0) {
                    CHECK(std::abs(got - (2.0 * std::cos(2.0 * pi * theta) - 2.0 * std::cosh(2.0 * pi * u))) <
                          1e-9 * std::cosh(2.0 * pi * u));
                }
            }
        }
    }
    CHECK_THROWS_AS(evans(0.0, 0.1, 0.5, disc), BranchCutError);
    CHECK_THROWS_AS(evans(0.4, 0.1, 0.5, disc), BranchCutError);
}

TEST_CASE("asymptotic constant") {
    CHECK(std::abs(evans(std::polar(1e3, 0.7), 0.3, 0.4, disc) - oracle::evans_at_infinity(0.3, 0.4)) < 1e-4);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ut(-0.5, 0.5), ud(0.0, 1.0), ua(0.0, 2.0 * pi);
    for (int i = 0; i < 20; ++i) {
        const double theta = ut(rng), d = ud(rng);
        const Complex c = std::polar(1e3, ua(rng));
        CHECK(std::abs(evans(c, theta, d, disc) - oracle::evans_at_infinity(theta, d)) <= 1e-3);
    }
}

TEST_CASE("zero on the level set of the monodromy trace") {
    const Complex c(0.0, 0.2);
    int hits = 0;
    for (double d : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6}) {
        const Complex trace = integrate_monodromy(c, d * d).trace;
        if (std::abs(trace.real()) > 2.0) continue;
        const double theta = std::acos(trace.real() / 2.0) / (2.0 * pi);
        CHECK(std::abs(evans(c, theta, d, disc)) < 1e-7);
        ++hits;
    }
    CHECK(hits > 0);
}

TEST_CASE("conjugation symmetry on random points") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2.5, 2.5), ut(-0.5, 0.5), ud(0.0, 1.2);
    int done = 0;
    while (done < 200) {
        const Complex c(u(rng), u(rng));
        if (cut_distance(c) < 1e-2) continue;
        const double theta = ut(rng), d = ud(rng);
        const Complex e = evans(c, theta, d, disc);
        CHECK(std::abs(evans(std::conj(c), theta, d, disc) - std::conj(e)) <= 1e-10 * std::max(1.0, std::abs(e)));
        // evenness in theta and d is exact
        CHECK(evans(c, -theta, d, disc) == e);
        CHECK(evans(c, theta, -d, disc) == e);
        ++done;
    }
}

TEST_CASE("real on both axes") {
    for (double theta : {0.1, 0.3}) {
        for (double d : {0.2, 0.6, 0.9}) {
            for (double b : {0.01, 0.2, 0.7, 1.5, 5.0}) {
                CHECK(std::abs(evans(I * b, theta, d, disc).imag()) <= 1e-9);
                CHECK(std::abs(evans(-I * b, theta, d, disc).imag()) <= 1e-9);
            }
            for (double a : {1.01, 1.5, 3.0, -2.0}) CHECK(std::abs(evans(a, theta, d, disc).imag()) <= 1e-9);
        }
    }
}

TEST_CASE("no real roots beyond the cut") {
    for (auto [theta, d] : {std::pair{0.1, 0.6}, std::pair{0.22, 0.6}, std::pair{0.4, 0.6}, std::pair{0.45, 0.3}}) {
        REQUIRE(classify_real(theta, d) != RegionTag::Region0);
        for (int j = 0; j <= 200; ++j) {
            const double c = 1.001 + (10.0 - 1.001) * j / 200.0;
            CHECK(std::abs(evans(c, theta, d, disc)) > 0.01);
            CHECK(std::abs(evans(-c, theta, d, disc)) > 0.01);
        }
    }
}

TEST_CASE("config validation and search region") {
    EvansConfig cfg;
    cfg.c_max = 0.5;
    CHECK_THROWS_AS(validate(cfg), UsageError);
    cfg = {};
    cfg.eps_cut = 0.0;
    CHECK_THROWS_AS(validate(cfg), UsageError);
    cfg = {};
    CHECK(bump_radius(cfg, 0.6) == doctest::Approx(0.05));
    CHECK(bump_radius(cfg, 0.02) == doctest::Approx(0.005));
    CHECK(bump_radius(cfg, 1e-6) == doctest::Approx(1e-3));
    const auto rects = search_region(cfg, 2.0, 0.6);
    double area = 0.0;
    for (const auto& r : rects) {
        CHECK(r.x1 > r.x0);
        CHECK(r.y1 > r.y0);
        CHECK(r.y0 >= cfg.eps_cut);
        area += (r.x1 - r.x0) * (r.y1 - r.y0);
    }
    const double rho = 0.05;
    CHECK(area == doctest::Approx(4.0 * (2.0 - cfg.eps_cut) - 2.0 * 2.0 * rho * (rho - cfg.eps_cut)));
}

TEST_CASE("root phenomenology") {
    SUBCASE("one imaginary pair") {
        const auto set = find_roots(0.1, 0.6);
        REQUIRE(set.count() == 2);
        for (const auto& r : set.roots) CHECK(on_imaginary_axis(r.c));
        CHECK(std::abs(set.roots[0].c) == doctest::Approx(0.4241).epsilon(1e-3));
        CHECK(set.region_predicted == RegionTag::RegionI);
    }
    SUBCASE("two imaginary pairs") {
        const auto set = find_roots(0.22, 0.6);
        REQUIRE(set.count() == 4);
        for (const auto& r : set.roots) CHECK(on_imaginary_axis(r.c));
        CHECK(set.region_predicted == RegionTag::RegionII);
    }
    SUBCASE("complex quadruplet") {
        const auto set = find_roots(0.4, 0.6);
        REQUIRE(set.count() == 4);
        for (const auto& r : set.roots) {
            CHECK(std::abs(r.c.real()) > 0.1);
            CHECK(std::abs(r.c.imag()) > 0.1);
        }
        CHECK(closed_under_symmetries(set, 1e-9));
    }
}

TEST_CASE("roots are zeros of E and of the monodromy residual") {
    for (auto [theta, d] : {std::pair{0.1, 0.6}, std::pair{0.22, 0.6}, std::pair{0.4, 0.6}, std::pair{0.5, 0.5}}) {
        const auto set = find_roots(theta, d);
        CHECK(closed_under_symmetries(set, 1e-9));
        CHECK(set.winding_total * 2 == set.count());
        for (const auto& r : set.roots) {
            CHECK(std::abs(evans(r.c, theta, d, disc)) < 1e-8);
            CHECK(std::abs(quasiperiodic_residual(r.c, d * d, theta)) < 1e-6);
        }
    }
}

TEST_CASE("counts for the three regions") {
    CHECK(count_roots(0.45, 0.95) == 0);
    CHECK(count_roots(0.1, 0.6) == 2);
    CHECK(count_roots(0.4, 0.6) == 4);
    CHECK(count_roots(Int{9}, Int{19}, Int{20}) == 0);
    CHECK(count_roots(Int{2}, Int{12}, Int{20}) == 2);
    CHECK(count_roots(Int{8}, Int{12}, Int{20}) == 4);
}

TEST_CASE("count agrees with the region law on rational points") {
    // 50 points per region on the grid with denominator 40, spread in theta and d
    std::map<RegionTag, int> taken;
    const Int den = 40;
    std::vector<std::pair<Int, Int>> points;
    for (Int b = 1; b < 80; b += 2) {
        for (Int a = 0; a <= den / 2; a += 3) points.emplace_back(a, b);
    }
    std::mt19937_64 rng(13);
    std::shuffle(points.begin(), points.end(), rng);
    for (auto [a, b] : points) {
        const RegionTag tag = classify_rational(a, b, den);
        if (tag != RegionTag::Region0 && tag != RegionTag::RegionI && tag != RegionTag::RegionII) continue;
        if (taken[tag] >= 50) continue;
        ++taken[tag];
        CHECK_NOTHROW(count_roots(a, b, den));
    }
    CHECK(taken[RegionTag::Region0] == 50);
    CHECK(taken[RegionTag::RegionI] == 50);
    CHECK(taken[RegionTag::RegionII] == 50);
}

TEST_CASE("boundary between regions I and II") {
    // (theta, d) = (3/5, 4/5) - (1, 0) lies on the circle around (1, 0): 4/25 + 16/25 = 1
    CHECK(classify_rational(-2, 4, 5) == RegionTag::BoundaryIII);
    CHECK(count_roots(Int{-2}, Int{4}, Int{5}) == 2);
}

TEST_CASE("derivatives at the origin") {
    for (double d : {0.3, 0.5, 0.6, 0.8, 0.9, 0.95}) {
        const double u = std::sqrt(1.0 - d * d);
        const double r = 2.0 * pi * std::sin(2.0 * pi * u) / u;
        for (Side side : {Side::Upper, Side::Lower}) {
            const auto rep = derivative_checks(d, side);
            const Complex sign_i = side == Side::Upper ? I : -I;
            CHECK(std::abs(rep.dE_dc - sign_i * r) <= 1e-4 * std::abs(r));
            CHECK(std::abs(rep.dE_dd - (-2.0 * d * r)) <= 1e-4 * std::abs(r));
            CHECK(std::abs(rep.normal - (-2.0 * r)) <= 1e-4 * std::abs(r));
            CHECK(std::abs(rep.velocity - 2.0 * sign_i) <= 1e-3);
            CHECK(rep.dE_dc_expected == sign_i * r);
            CHECK(rep.velocity_expected == 2.0 * sign_i);
            CHECK(std::abs(std::abs(rep.dE_dc) - std::abs(r)) <= 1e-4 * std::abs(r));
        }
    }
    const auto half = derivative_checks(0.5, Side::Upper);
    CHECK(std::abs(half.dE_dd) == doctest::Approx(2.0 * 0.5 * 2.0 * pi * std::abs(std::sin(pi * std::sqrt(3.0))) /
                                                  (std::sqrt(3.0) / 2.0))
                                      .epsilon(1e-4));
    // normal derivative changes sign at d = sqrt(3)/2
    CHECK(derivative_checks(0.85, Side::Upper).normal > 0.0);
    CHECK(derivative_checks(0.88, Side::Upper).normal < 0.0);
    CHECK_THROWS_AS(derivative_checks(0.0, Side::Upper), DegenerateParameterError);
    CHECK_THROWS_AS(derivative_checks(std::sqrt(3.0) / 2.0, Side::Lower), DegenerateParameterError);
    CHECK_THROWS_AS(derivative_checks(1.0, Side::Upper), DegenerateParameterError);
}

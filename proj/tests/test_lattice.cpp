#include "hillevans/errors.hpp"
#include "hillevans/lattice.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <numeric>

using namespace hillevans;

TEST_CASE("wave vector validation") {
    CHECK_THROWS_AS(Wavevector(2, 4), CoprimalityError);
    CHECK_THROWS_AS(Wavevector(0, 0), CoprimalityError);
    CHECK_THROWS_AS(Wavevector(0, 2), CoprimalityError);
    const Wavevector p(4, 5);
    CHECK(p.p_sq() == 41);
    CHECK(Wavevector(-3, 4).p_sq() == 25);
}

TEST_CASE("companion basis examples") {
    auto q = companion_basis(Wavevector(4, 5));
    CHECK(q.q1 == 1);
    CHECK(q.q2 == 1);
    CHECK(q.dot_pq == 9);

    q = companion_basis(Wavevector(0, 1));
    CHECK(q.q1 == 1);
    CHECK(q.q2 == 0);
    CHECK(q.dot_pq == 0);

    q = companion_basis(Wavevector(1, 2));
    CHECK(q.q1 == 0);
    CHECK(q.q2 == -1);
    CHECK(q.dot_pq == -2);
}

TEST_CASE("companion basis tie goes to positive dot product") {
    // (1, 1): candidates (1, 0) with dot 1 and (0, -1) with dot -1, p^2 = 2
    const auto q = companion_basis(Wavevector(1, 1));
    CHECK(q.dot_pq == 1);
    CHECK(q.q1 == 1);
    CHECK(q.q2 == 0);
}

TEST_CASE("companion basis is unimodular and reduced for all small p") {
    for (Int a = -12; a <= 12; ++a) {
        for (Int b = -12; b <= 12; ++b) {
            if (std::gcd(a, b) != 1) continue;
            const Wavevector p(a, b);
            const auto q = companion_basis(p);
            CHECK(p.p2() * q.q1 - p.p1() * q.q2 == 1);
            CHECK(q.dot_pq == p.p1() * q.q1 + p.p2() * q.q2);
            CHECK(2 * std::abs(q.dot_pq) <= p.p_sq());
            if (2 * std::abs(q.dot_pq) == p.p_sq()) CHECK(q.dot_pq > 0);
        }
    }
}

TEST_CASE("class points") {
    const Wavevector p(4, 5);
    const auto q = companion_basis(p);
    auto cp = class_point(p, q, 9);
    CHECK(cp.theta_num == -1);
    CHECK(cp.p_sq == 41);
    CHECK(cp.k == 9);
    CHECK(cp.theta_num == 9 * 9 + cp.l * 41);

    cp = class_point(p, q, 1);
    CHECK(cp.theta_num == 9);

    const Wavevector p12(1, 2);
    cp = class_point(p12, companion_basis(p12), 3);
    CHECK(cp.theta_num == -1);
    CHECK(cp.p_sq == 5);
    CHECK(cp.d() == doctest::Approx(0.6));

    CHECK_THROWS_AS(class_point(p, q, 0), TrivialClassError);
}

TEST_CASE("theta lies in (-1/2, 1/2] for every class") {
    for (auto [a, b] : oracle::half_plane_wavevectors(100)) {
        const Wavevector p(a, b);
        const auto q = companion_basis(p);
        for (Int k = -p.p_sq(); k <= p.p_sq(); ++k) {
            if (k == 0) continue;
            const auto cp = class_point(p, q, k);
            CHECK(2 * cp.theta_num > -p.p_sq());
            CHECK(2 * cp.theta_num <= p.p_sq());
            CHECK((cp.theta_num - k * q.dot_pq) % p.p_sq() == 0);
        }
    }
}

TEST_CASE("classification examples") {
    const Wavevector p(4, 5);
    const auto q = companion_basis(p);
    CHECK(class_point(p, q, 9).region == RegionTag::BoundaryIII);
    CHECK(class_point(p, q, 40).region == RegionTag::Boundary0I);
    CHECK(class_point(p, q, 39).region == RegionTag::Region0);

    const Wavevector p12(1, 2);
    const auto q12 = companion_basis(p12);
    CHECK(class_point(p12, q12, 1).region == RegionTag::RegionII);
    CHECK(class_point(p12, q12, 2).region == RegionTag::RegionII);
    CHECK(class_point(p12, q12, 3).region == RegionTag::BoundaryIII);
    CHECK(class_point(p12, q12, 4).region == RegionTag::BoundaryIII);
    CHECK(classify(class_point(p12, q12, 1)) == RegionTag::RegionII);
}

TEST_CASE("rational classification at special points") {
    CHECK(classify_rational(0, 0, 1) == RegionTag::Corner);      // (0, 0) lies on the circles l = +-1
    CHECK(classify_rational(1, 0, 2) == RegionTag::RegionII);    // (1/2, 0)
    CHECK(classify_rational(0, 1, 1) == RegionTag::Boundary0I);  // (0, 1)
    CHECK(classify_rational(9, 19, 20) == RegionTag::Region0);
    CHECK(classify_rational(1, 1, 10) == RegionTag::RegionII);
    CHECK(classify_rational(0, 9, 10) == RegionTag::RegionI);
    // translation by one period
    for (Int a = -30; a <= 30; ++a) {
        for (Int b = 1; b <= 25; ++b) {
            CHECK(classify_rational(a, b, 20) == classify_rational(a + 20, b, 20));
        }
    }
}

TEST_CASE("disk counts") {
    CHECK(lattice_points_in_disk(Wavevector(4, 5)).count == 128);
    CHECK(lattice_points_in_disk(Wavevector(0, 1)).count == 0);
    CHECK(lattice_points_in_disk(Wavevector(1, 2)).count == 12);
    CHECK(lattice_points_in_disk(Wavevector(1, 1)).count == 4);
    for (auto [a, b] : oracle::half_plane_wavevectors(100)) {
        const Wavevector p(a, b);
        CHECK(lattice_points_in_disk(p).count == oracle::disk_count_by_rows(p.p_sq(), a, b));
    }
}

TEST_CASE("class line counts") {
    const Wavevector p(4, 5);
    const auto q = companion_basis(p);
    CHECK(class_line_count(p, q, 40) == 0);
    CHECK(class_line_count(p, q, 9) == 1);
    const Wavevector p12(1, 2);
    CHECK(class_line_count(p12, companion_basis(p12), 1) == 2);

    // brute force over m in [-p^2, p^2]
    const Int k = 1;
    Int brute = 0;
    for (Int m = -41; m <= 41; ++m) {
        const Int x = k * q.q1 + m * p.p1();
        const Int y = k * q.q2 + m * p.p2();
        if (x * x + y * y < 41) ++brute;
    }
    CHECK(class_line_count(p, q, k) == brute);
    CHECK(brute == predicted_root_count(class_point(p, q, k).region) / 2);
}

TEST_CASE("line counts agree with the regions and add up to the disk count") {
    for (auto [a, b] : oracle::half_plane_wavevectors(100)) {
        const Wavevector p(a, b);
        const auto q = companion_basis(p);
        Int total = 0;
        for (Int k = 1; k < p.p_sq(); ++k) {
            const auto cp = class_point(p, q, k);
            const Int n = class_line_count(p, q, k);
            total += n;
            switch (cp.region) {
            case RegionTag::Region0:
            case RegionTag::Boundary0I: CHECK(n == 0); break;
            case RegionTag::RegionI:
            case RegionTag::BoundaryIII: CHECK(n == 1); break;
            case RegionTag::RegionII: CHECK(n == 2); break;
            case RegionTag::Corner: FAIL("no class point has d = 0"); break;
            }
        }
        CHECK(2 * total == lattice_points_in_disk(p).count);
    }
}

TEST_CASE("region names") {
    CHECK(to_string(RegionTag::BoundaryIII) == "BoundaryIII");
    CHECK(predicted_root_count(RegionTag::RegionII) == 4);
    CHECK(predicted_root_count(RegionTag::BoundaryIII) == 2);
    CHECK(predicted_root_count(RegionTag::Boundary0I) == 0);
}

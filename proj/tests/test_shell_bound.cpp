#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "akn/construction.hpp"
#include "akn/errors.hpp"
#include "akn/packing.hpp"
#include "akn/shell_bound.hpp"
#include "oracles.hpp"

namespace {

const double kSqrt3 = std::sqrt(3.0);

akn::ShellParams params_at(double rho) {
    akn::ShellParams p;
    p.rho = rho;
    return p;
}

} // namespace

TEST_CASE("cap area fraction: closed cases and the kissing-unit-ball value") {
    // Two tangent unit balls, shell scale sqrt(3): the textbook cap.
    const akn::CapGeometry cap = akn::cap_area_fraction(2.0, kSqrt3, 1.0);
    CHECK(cap.fraction == doctest::Approx((2.0 - kSqrt3) / 4.0).epsilon(1e-15));
    CHECK(std::abs(cap.fraction - 0.0669873) <= 1e-7);
    CHECK(cap.cos_theta == doctest::Approx(kSqrt3 / 2.0).epsilon(1e-15));

    // Ball entirely inside the shell sphere: the surface misses it.
    CHECK(akn::cap_area_fraction(0.1, 1.0, 0.5).fraction == 0.0);
    // Ball too far away.
    CHECK(akn::cap_area_fraction(10.0, 1.0, 1.0).fraction == 0.0);
    // Shell surface entirely inside the ball.
    CHECK(akn::cap_area_fraction(0.5, 1.0, 5.0).fraction == 1.0);

    // Exact boundary contacts count as empty / full, not partial.
    CHECK(akn::cap_area_fraction(3.0, 1.0, 2.0).fraction == 0.0); // d - r == R
    CHECK(akn::cap_area_fraction(1.5, 1.0, 0.5).fraction == 0.0); // d + r == R
    CHECK(akn::cap_area_fraction(1.0, 1.0, 2.0).fraction == 1.0); // d + R == r

    // A hemisphere: ball through the shell center... cos_theta = 0 when
    // d^2 + R^2 = r^2.
    const akn::CapGeometry hemi = akn::cap_area_fraction(3.0, 4.0, 5.0);
    CHECK(hemi.fraction == doctest::Approx(0.5).epsilon(1e-15));

    CHECK_THROWS_AS(akn::cap_area_fraction(0.0, 1.0, 1.0), akn::InvalidInputError);
    CHECK_THROWS_AS(akn::cap_area_fraction(1.0, -1.0, 1.0), akn::InvalidInputError);
    CHECK_THROWS_AS(akn::cap_area_fraction(1.0, 1.0, 0.0), akn::InvalidInputError);
}

TEST_CASE("cap area fraction: Monte-Carlo oracle") {
    // High-sample check of the canonical configuration.
    const double exact = akn::cap_area_fraction(2.0, kSqrt3, 1.0).fraction;
    const double mc = oracles::monte_carlo_cap_fraction(2.0, kSqrt3, 1.0,
                                                        40000000, 8675309);
    CHECK(std::abs(mc - exact) <= 1e-4);

    // Assorted partial caps at the statistical resolution of 1e6 samples.
    struct Config {
        double d, shell, r;
    };
    for (const Config& c : {Config{1.7, 1.2, 0.8}, Config{0.9, 1.3, 0.6},
                            Config{2.5, 2.0, 1.1}}) {
        const double f = akn::cap_area_fraction(c.d, c.shell, c.r).fraction;
        REQUIRE(f > 0.0);
        REQUIRE(f < 1.0);
        const double est = oracles::monte_carlo_cap_fraction(
            c.d, c.shell, c.r, 1000000, 424242);
        CHECK(std::abs(est - f) <= 3e-3);
    }
}

TEST_CASE("kissing pair fraction: symmetric value, clamping, large-ratio limit") {
    const akn::ShellParams p = params_at(kSqrt3);

    CHECK(akn::kissing_pair_fraction(1.0, 1.0, p) ==
          doctest::Approx((1.0 - kSqrt3 / 2.0) / 2.0).epsilon(1e-15));

    // The shell of B misses C exactly when rC < (rho - 1) rB / 2.
    const double threshold = (kSqrt3 - 1.0) / 2.0;
    CHECK(akn::kissing_pair_fraction(1.0, threshold * (1.0 - 1e-12), p) == 0.0);
    CHECK(akn::kissing_pair_fraction(1.0, threshold * (1.0 + 1e-9), p) > 0.0);
    CHECK(akn::kissing_pair_fraction(1.0, 0.3, p) == 0.0);

    // Monotone in the neighbor radius, approaching 1/2 - 1/(2 rho).
    const double limit = 0.5 - 1.0 / (2.0 * kSqrt3);
    double prev = 0.0;
    for (double rc : {1.0, 10.0, 1e3, 1e6}) {
        const double f = akn::kissing_pair_fraction(1.0, rc, p);
        CHECK(f > prev);
        CHECK(f < limit);
        prev = f;
    }
    CHECK(std::abs(akn::kissing_pair_fraction(1.0, 1e9, p) - limit) <= 1e-8);

    CHECK_THROWS_AS(akn::kissing_pair_fraction(0.0, 1.0, p), akn::InvalidInputError);
    CHECK_THROWS_AS(akn::kissing_pair_fraction(1.0, 1.0, params_at(1.0)),
                    akn::InvalidInputError);
    CHECK_THROWS_AS(akn::kissing_pair_fraction(1.0, 1.0, params_at(3.0)),
                    akn::InvalidInputError);
}

TEST_CASE("pair sums: radius independence of a(B,C) + a(C,B)") {
    std::mt19937_64 rng(777001);

    for (double rho : {1.2, kSqrt3, 2.5}) {
        const akn::ShellParams p = params_at(rho);
        const double constant = akn::pair_sum_constant(rho);
        int unclamped = 0;
        for (int i = 0; i < 500; ++i) {
            const oracles::TangentPair pair = oracles::random_tangent_pair(rng);
            const akn::PairSumResult sum = akn::pair_sum(pair.rB, pair.rC, p);
            if (sum.clamped) {
                CHECK(sum.sum >= constant - 1e-12);
            } else {
                CHECK(std::abs(sum.sum - constant) <= 1e-12);
                ++unclamped;
            }
        }
        // Even at rho = 2.5, where only radius ratios within [0.75, 4/3]
        // leave both caps partial, the generator covers the identity.
        CHECK(unclamped > 40);
    }

    // At the optimal scale the constant is 1 - sqrt(3)/2.
    CHECK(std::abs(akn::pair_sum_constant(kSqrt3) - (1.0 - kSqrt3 / 2.0)) <= 1e-15);
    CHECK(std::abs(akn::pair_sum_constant(kSqrt3) - 0.1339746) <= 1e-7);
    // Degenerate shells certify nothing: the constant vanishes at both ends.
    CHECK(akn::pair_sum_constant(1.0 + 1e-6) < 1e-5);
    CHECK(akn::pair_sum_constant(3.0 - 1e-6) < 1e-5);
    CHECK(akn::pair_sum_constant(2.0) == doctest::Approx(0.125).epsilon(1e-15));

    // One-sided clamping makes the sum exceed the constant, never undershoot.
    const akn::ShellParams p = params_at(kSqrt3);
    const akn::PairSumResult clamped = akn::pair_sum(1.0, 0.3, p);
    CHECK(clamped.clamped);
    CHECK(clamped.sum > akn::pair_sum_constant(kSqrt3));
}

TEST_CASE("pair sums: closed form equals the geometric cap at exact tangency") {
    std::mt19937_64 rng(777002);
    const akn::ShellParams p = params_at(kSqrt3);

    double worst = 0.0;
    const auto compare = [&](double rB, double rC, double d) {
        const double closed = akn::kissing_pair_fraction(rB, rC, p);
        const double geometric = akn::cap_area_fraction(d, p.rho * rB, rC).fraction;
        worst = std::max(worst, std::abs(closed - geometric));
    };
    for (int i = 0; i < 500; ++i) {
        const oracles::TangentPair pair = oracles::random_tangent_pair(rng);
        compare(pair.rB, pair.rC, pair.d);
        compare(pair.rC, pair.rB, pair.d);
    }

    // Extreme ratios, up to 1e5, trimmed the same way so the tangency is
    // exactly representable.
    std::uniform_real_distribution<double> log10big(-2.0, 2.0);
    std::uniform_real_distribution<double> log10drop(0.0, 5.0);
    for (int i = 0; i < 200; ++i) {
        const double big = std::pow(10.0, log10big(rng));
        const double d = big + big * std::pow(10.0, -log10drop(rng));
        const double small = d - big;
        compare(big, small, d);
        compare(small, big, d);
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("optimize_rho: the shell scale sqrt(3) maximizes the pair sum") {
    const double best = akn::optimize_rho(1.01, 2.99);
    CHECK(std::abs(best - kSqrt3) <= 1e-6);
    CHECK(std::abs(akn::pair_sum_constant(best) - (1.0 - kSqrt3 / 2.0)) <= 1e-9);

    CHECK(akn::pair_sum_constant(kSqrt3) > akn::pair_sum_constant(kSqrt3 - 0.1));
    CHECK(akn::pair_sum_constant(kSqrt3) > akn::pair_sum_constant(kSqrt3 + 0.1));

    // On an interval left of the optimum the maximum sits at the right end.
    CHECK(std::abs(akn::optimize_rho(1.2, 1.5) - 1.5) <= 1e-6);

    CHECK_THROWS_AS(akn::optimize_rho(0.9, 2.0), akn::InvalidInputError);
    CHECK_THROWS_AS(akn::optimize_rho(1.2, 3.1), akn::InvalidInputError);
    CHECK_THROWS_AS(akn::optimize_rho(2.0, 1.5), akn::InvalidInputError);

    CHECK(std::abs(akn::implied_kissing_bound(kSqrt3) - (8.0 + 4.0 * kSqrt3)) <=
          1e-12);
}

TEST_CASE("shell certificate: two tangent unit balls") {
    akn::Packing p;
    p.chart = akn::Chart::R3;
    p.r3_balls.push_back({akn::Vec3(0, 0, 0), 1.0});
    p.r3_balls.push_back({akn::Vec3(2, 0, 0), 1.0});
    const akn::NerveGraph nerve = akn::build_nerve(p);
    REQUIRE(nerve.edge_count() == 1);

    const akn::ShellReport report =
        akn::shell_certificate(p, nerve, params_at(kSqrt3));
    CHECK(report.pass);
    CHECK(report.average_kissing == 1.0);
    REQUIRE(report.occupancy.size() == 2);
    for (double occ : report.occupancy) {
        CHECK(occ == doctest::Approx((2.0 - kSqrt3) / 4.0).epsilon(1e-12));
        CHECK(std::abs(occ - 0.0669873) <= 1e-7);
    }
    CHECK(std::abs(report.implied_bound - 14.9282032) <= 1e-7);
    CHECK(report.min_tangent_pair_sum ==
          doctest::Approx(1.0 - kSqrt3 / 2.0).epsilon(1e-12));
}

TEST_CASE("shell certificate: the projected seed packing passes") {
    const akn::Packing d600 = akn::build_d600();
    const akn::Point4 pole = akn::Point4(1.0, 1.0, 0.0, 0.0).normalized();

    akn::Packing flat;
    flat.chart = akn::Chart::R3;
    for (const akn::SphericalBall& ball : d600.s3_balls) {
        flat.r3_balls.push_back(akn::stereographic_project(pole, ball));
    }
    const akn::NerveGraph nerve = akn::build_nerve(flat);
    REQUIRE(nerve.edge_count() == 720);

    const akn::ShellReport report =
        akn::shell_certificate(flat, nerve, params_at(kSqrt3));
    CHECK(report.pass);
    CHECK(report.average_kissing == 12.0);
    CHECK(report.max_occupancy <= 1.0 + 1e-9);
    CHECK(report.max_occupancy == doctest::Approx(0.8918059984).epsilon(1e-7));
    CHECK(report.average_kissing < report.implied_bound);
}

TEST_CASE("shell certificate: rejects non-packings and wrong charts") {
    // Thirty mutually overlapping unit balls all at shell distance from a
    // central ball: each contributes a cap of 1/12, so the central occupancy
    // exceeds 1 and the certificate must refuse.
    std::mt19937_64 rng(777003);
    akn::Packing bad;
    bad.chart = akn::Chart::R3;
    bad.r3_balls.push_back({akn::Vec3(0, 0, 0), 1.0});
    for (int i = 0; i < 30; ++i) {
        bad.r3_balls.push_back({kSqrt3 * oracles::random_unit_vec3(rng), 1.0});
    }
    akn::NerveGraph fake;
    fake.vertex_count = bad.size();
    fake.adjacency.assign(bad.size(), {});
    CHECK_THROWS_AS(akn::shell_certificate(bad, fake, params_at(kSqrt3)),
                    akn::CertificateFailureError);

    akn::Packing curved;
    curved.chart = akn::Chart::S3;
    curved.s3_balls.push_back({akn::Point4(1, 0, 0, 0), 0.2});
    akn::NerveGraph one;
    one.vertex_count = 1;
    one.adjacency.assign(1, {});
    CHECK_THROWS_AS(akn::shell_certificate(curved, one, params_at(kSqrt3)),
                    akn::InvalidInputError);

    akn::Packing empty;
    empty.chart = akn::Chart::R3;
    akn::NerveGraph none;
    CHECK_THROWS_AS(akn::shell_certificate(empty, none, params_at(kSqrt3)),
                    akn::EmptyPackingError);
}

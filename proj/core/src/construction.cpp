#include "akn/construction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <unordered_set>

namespace akn {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBallRadius = kPi / 10.0; // 18 degrees
constexpr double kDeg36 = kPi / 5.0;
constexpr double kDeg42 = 42.0 * kPi / 180.0;
constexpr double kDeg60 = kPi / 3.0;

// sigma^k(-R) and sigma^(k-1)(R) are the same balls up to floating error of
// one extra map application; anything beyond this is a construction bug.
constexpr double kSharedLayerTolerance = 1e-6;

std::vector<std::array<int, 4>> even_permutations() {
    std::array<int, 4> idx{0, 1, 2, 3};
    std::vector<std::array<int, 4>> perms;
    do {
        int inversions = 0;
        for (int i = 0; i < 4; ++i) {
            for (int j = i + 1; j < 4; ++j) {
                if (idx[i] > idx[j]) {
                    ++inversions;
                }
            }
        }
        if (inversions % 2 == 0) {
            perms.push_back(idx);
        }
    } while (std::next_permutation(idx.begin(), idx.end()));
    return perms;
}

// Orbit under even coordinate permutations and arbitrary sign changes.
// Candidates are assembled from the identical double constants, so
// coincident points are bitwise equal and the set deduplicates exactly
// (-0.0 is folded into +0.0 first).
void add_orbit(const std::array<double, 4>& seed,
               std::set<std::array<double, 4>>& centers) {
    for (const auto& perm : even_permutations()) {
        for (int signs = 0; signs < 16; ++signs) {
            std::array<double, 4> v{};
            for (int i = 0; i < 4; ++i) {
                const double value = (signs & (1 << i)) ? -seed[perm[i]] : seed[perm[i]];
                v[i] = value + 0.0;
            }
            centers.insert(v);
        }
    }
}

void require_check(bool ok, const std::string& check) {
    if (!ok) {
        throw PropertyViolationError("d600 property failed: " + check);
    }
}

LayerTally tally_for(long long n) {
    LayerTally t;
    t.n = n;
    t.ball_count = 118 + 106 * n;
    t.tangency_count = 696 + 666 * n;
    t.k = Rational(2 * t.tangency_count, t.ball_count);
    return t;
}

} // namespace

Packing build_d600() {
    const double tau = kGoldenRatio;
    std::set<std::array<double, 4>> centers;
    add_orbit({tau / 2.0, 0.5, 1.0 / (2.0 * tau), 0.0}, centers);
    const std::size_t orbit1 = centers.size();
    add_orbit({0.5, 0.5, 0.5, 0.5}, centers);
    const std::size_t orbit2 = centers.size() - orbit1;
    add_orbit({1.0, 0.0, 0.0, 0.0}, centers);
    const std::size_t orbit3 = centers.size() - orbit1 - orbit2;
    if (orbit1 != 96 || orbit2 != 16 || orbit3 != 8) {
        std::ostringstream msg;
        msg << "orbit sizes " << orbit1 << "/" << orbit2 << "/" << orbit3
            << ", expected 96/16/8";
        throw ConstructionInconsistencyError(msg.str());
    }

    Packing d600;
    d600.chart = Chart::S3;
    d600.s3_balls.reserve(centers.size());
    for (const auto& c : centers) { // std::set iterates lexicographically
        d600.s3_balls.push_back({Point4(c[0], c[1], c[2], c[3]), kBallRadius});
    }
    return d600;
}

int antipodal_index(const Packing& d600, int i) {
    const Point4 target = -d600.s3_balls[static_cast<std::size_t>(i)].center;
    int best = -1;
    double best_distance = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < d600.s3_balls.size(); ++j) {
        const double distance = angular_distance(target, d600.s3_balls[j].center);
        if (distance < best_distance) {
            best_distance = distance;
            best = static_cast<int>(j);
        }
    }
    if (best_distance > 1e-12) {
        std::ostringstream msg;
        msg << "packing is not antipodally closed at ball " << i << " (nearest "
            << best_distance << " rad away)";
        throw PropertyViolationError(msg.str());
    }
    return best;
}

PropertyReport verify_d600_properties(const Packing& d600) {
    PropertyReport report;
    report.ball_count = static_cast<int>(d600.size());
    require_check(report.ball_count == 120, "ball count is 120");

    const NerveGraph nerve = build_nerve(d600, kDefaultTangencyRtol, NerveStrategy::AllPairs);
    report.tangency_count = static_cast<long long>(nerve.edge_count());
    require_check(report.tangency_count == 720, "tangency count is 720");

    report.min_degree = 120;
    report.max_degree = 0;
    for (std::size_t v = 0; v < 120; ++v) {
        const int degree = static_cast<int>(nerve.degree(v));
        report.min_degree = std::min(report.min_degree, degree);
        report.max_degree = std::max(report.max_degree, degree);
    }
    require_check(report.min_degree == 12 && report.max_degree == 12,
                  "every ball kisses exactly 12 others");

    // Tangent centers are 36 degrees apart (dot = cos 36 = tau/2) and the
    // nearest non-tangent centers are 60 degrees apart.
    const double cos36 = kGoldenRatio / 2.0;
    std::vector<std::unordered_set<int>> neighbor_sets(120);
    for (const auto& [a, b] : nerve.edges) {
        const double dot = d600.s3_balls[a].center.dot(d600.s3_balls[b].center);
        report.max_kissing_dot_error =
            std::max(report.max_kissing_dot_error, std::abs(dot - cos36));
        neighbor_sets[a].insert(b);
        neighbor_sets[b].insert(a);
    }
    require_check(report.max_kissing_dot_error <= 1e-12,
                  "tangent centers are exactly 36 degrees apart");

    report.next_nearest_distance_rad = kPi;
    for (int a = 0; a < 120; ++a) {
        for (int b = a + 1; b < 120; ++b) {
            if (neighbor_sets[a].count(b)) {
                continue;
            }
            report.next_nearest_distance_rad = std::min(
                report.next_nearest_distance_rad,
                angular_distance(d600.s3_balls[a].center, d600.s3_balls[b].center));
        }
    }
    require_check(std::abs(report.next_nearest_distance_rad - kDeg60) <= 1e-12,
                  "next-nearest centers are 60 degrees apart");

    // Icosahedral contact pattern of each neighbor set: 30 tangencies among
    // the 12 neighbors, five per neighbor.
    report.neighbor_mutual_tangencies = -1;
    for (int v = 0; v < 120; ++v) {
        const auto& neighbors = nerve.adjacency[v];
        int mutual = 0;
        for (std::size_t i = 0; i < neighbors.size(); ++i) {
            int within = 0;
            for (std::size_t j = 0; j < neighbors.size(); ++j) {
                if (i != j && neighbor_sets[neighbors[i]].count(neighbors[j])) {
                    ++within;
                }
            }
            require_check(within == 5, "each neighbor touches 5 other neighbors");
            mutual += within;
        }
        mutual /= 2;
        require_check(mutual == 30, "neighbor set has 30 mutual tangencies");
        report.neighbor_mutual_tangencies = mutual;
    }

    for (int v = 0; v < 120; ++v) {
        const Point4 target = -d600.s3_balls[v].center;
        double nearest = std::numeric_limits<double>::infinity();
        for (int w = 0; w < 120; ++w) {
            nearest = std::min(nearest, angular_distance(target, d600.s3_balls[w].center));
        }
        report.max_antipode_mismatch = std::max(report.max_antipode_mismatch, nearest);
    }
    require_check(report.max_antipode_mismatch <= 1e-12, "packing is self-antipodal");

    return report;
}

SeedData build_sigma(const Packing& d600, int b0_index) {
    if (b0_index == -1) {
        const Point4 canonical(1.0, 0.0, 0.0, 0.0);
        for (std::size_t i = 0; i < d600.s3_balls.size(); ++i) {
            if (angular_distance(d600.s3_balls[i].center, canonical) <= 1e-12) {
                b0_index = static_cast<int>(i);
                break;
            }
        }
        if (b0_index == -1) {
            throw InvalidInputError("packing has no ball centered at (1,0,0,0)");
        }
    }
    if (b0_index < 0 || b0_index >= static_cast<int>(d600.size())) {
        throw InvalidInputError("b0 index out of range");
    }

    SeedData seed;
    seed.d600 = d600;
    seed.b0_index = b0_index;
    seed.b = d600.s3_balls[static_cast<std::size_t>(b0_index)].center;

    const NerveGraph nerve = build_nerve(d600, kDefaultTangencyRtol, NerveStrategy::AllPairs);
    seed.ring_indices = nerve.adjacency[static_cast<std::size_t>(b0_index)];
    if (seed.ring_indices.size() != 12) {
        std::ostringstream msg;
        msg << "ball " << b0_index << " has " << seed.ring_indices.size()
            << " kissing neighbors, expected 12";
        throw ConstructionInconsistencyError(msg.str());
    }

    // Radius of S two ways: the closed form, and the distance from b to the
    // kissing points (b1 + b2)/|b1 + b2| of tangent ring pairs.
    const double closed_form = std::acos(std::sqrt((2.0 + kGoldenRatio) / 5.0));
    int kissing_points = 0;
    double worst = 0.0;
    for (std::size_t i = 0; i < seed.ring_indices.size(); ++i) {
        for (std::size_t j = i + 1; j < seed.ring_indices.size(); ++j) {
            const Point4& c1 = d600.s3_balls[seed.ring_indices[i]].center;
            const Point4& c2 = d600.s3_balls[seed.ring_indices[j]].center;
            if (angular_distance(c1, c2) > kDeg36 + 1e-9) {
                continue; // not a tangent pair
            }
            const Point4 kiss = (c1 + c2).normalized();
            worst = std::max(worst, std::abs(angular_distance(seed.b, kiss) - closed_form));
            ++kissing_points;
        }
    }
    if (kissing_points != 30) {
        std::ostringstream msg;
        msg << "ring has " << kissing_points << " mutual kissing points, expected 30";
        throw ConstructionInconsistencyError(msg.str());
    }
    if (worst > 1e-12) {
        std::ostringstream msg;
        msg << "closed-form radius of S and measured kissing-point distance "
               "disagree by "
            << worst << " rad";
        throw ConstructionInconsistencyError(msg.str());
    }

    seed.inversion_sphere = {seed.b, closed_form};
    seed.sigma = {seed.inversion_sphere, /*pre_antipode=*/true, /*power=*/1};

    // sigma fixes b and sends each -B, B in the ring, back to B.
    if (angular_distance(apply_conformal(seed.sigma, seed.b), seed.b) > 1e-12) {
        throw ConstructionInconsistencyError("sigma does not fix b");
    }
    for (int r : seed.ring_indices) {
        const SphericalBall& ball = d600.s3_balls[static_cast<std::size_t>(r)];
        const SphericalBall image =
            apply_conformal_to_ball(seed.sigma, {-ball.center, ball.radius});
        if (angular_distance(image.center, ball.center) > 1e-9 ||
            std::abs(image.radius - ball.radius) > 1e-9 * ball.radius) {
            std::ostringstream msg;
            msg << "sigma does not send the negated ring ball " << r << " to itself";
            throw ConstructionInconsistencyError(msg.str());
        }
    }
    return seed;
}

LayeredPacking build_pn(const SeedData& seed, int n, BuildMode mode) {
    if (n < 0) {
        throw InvalidInputError("layer count must be non-negative");
    }
    if (mode == BuildMode::Direct && n > kMaxDirectLayers) {
        std::ostringstream msg;
        msg << "direct mode supports n <= " << kMaxDirectLayers
            << " (deeper layers cannot be tangency-validated in double "
               "precision); use windowed mode";
        throw InvalidInputError(msg.str());
    }
    if (n > kMaxMaterializedLayers) {
        std::ostringstream msg;
        msg << "cannot materialize more than " << kMaxMaterializedLayers
            << " layers (ball radii underflow); use report_convergence for "
               "counts at any depth";
        throw InvalidInputError(msg.str());
    }

    const Packing& d600 = seed.d600;
    const int b0 = seed.b0_index;
    const int nb0 = antipodal_index(d600, b0);

    // Slot layout of one window: P0 in d600 order, minus B0 and -B0.
    std::vector<int> slot_to_d;
    slot_to_d.reserve(118);
    for (int i = 0; i < static_cast<int>(d600.size()); ++i) {
        if (i != b0 && i != nb0) {
            slot_to_d.push_back(i);
        }
    }
    const int slots = static_cast<int>(slot_to_d.size());

    // sigma^k of a negated ring ball coincides with sigma^(k-1) of its ring
    // partner; partner_slot maps each -R slot to the R slot it duplicates.
    std::vector<int> d_to_slot(d600.size(), -1);
    for (int s = 0; s < slots; ++s) {
        d_to_slot[slot_to_d[s]] = s;
    }
    std::vector<int> partner_slot(slots, -1);
    for (int r : seed.ring_indices) {
        const int neg = antipodal_index(d600, r);
        partner_slot[d_to_slot[neg]] = d_to_slot[r];
    }

    LayeredPacking result;
    result.packing.chart = Chart::S3;
    std::vector<SphericalBall> window(slots);
    std::vector<int> stored_index(slots);
    for (int s = 0; s < slots; ++s) {
        window[s] = d600.s3_balls[static_cast<std::size_t>(slot_to_d[s])];
        stored_index[s] = static_cast<int>(result.packing.s3_balls.size());
        result.packing.s3_balls.push_back(window[s]);
        result.packing.labels.push_back("0");
    }
    result.tallies.push_back(tally_for(0));

    for (int k = 1; k <= n; ++k) {
        std::vector<SphericalBall> next(slots);
        std::vector<int> next_index(slots, -1);
        for (int s = 0; s < slots; ++s) {
            next[s] = apply_conformal_to_ball(seed.sigma, window[s]);
        }
        for (int s = 0; s < slots; ++s) {
            if (partner_slot[s] < 0) {
                continue;
            }
            // Shared layer: this image must reproduce the ball stored for
            // the previous window's ring slot.
            const int shared = stored_index[partner_slot[s]];
            const SphericalBall& stored =
                result.packing.s3_balls[static_cast<std::size_t>(shared)];
            const double mismatch = angular_distance(next[s].center, stored.center);
            const double radius_error =
                std::abs(next[s].radius - stored.radius) / stored.radius;
            if (mismatch > kSharedLayerTolerance || radius_error > kSharedLayerTolerance) {
                std::ostringstream msg;
                msg << "shared layer between windows " << k - 1 << " and " << k
                    << " mismatches at slot " << s << " (center error " << mismatch
                    << " rad, radius error " << radius_error << ")";
                throw LayeringError(msg.str());
            }
            next[s] = stored; // keep the stored ball as the one shared copy
            next_index[s] = shared;
        }
        for (int s = 0; s < slots; ++s) {
            if (next_index[s] >= 0) {
                continue;
            }
            next_index[s] = static_cast<int>(result.packing.s3_balls.size());
            result.packing.s3_balls.push_back(next[s]);
            result.packing.labels.push_back(std::to_string(k));
        }
        window = std::move(next);
        stored_index = std::move(next_index);
        result.tallies.push_back(tally_for(k));
    }

    if (mode == BuildMode::Direct) {
        const ValidityReport validity = validate_packing(result.packing);
        if (!validity.ok) {
            std::ostringstream msg;
            msg << "direct-mode packing overlaps at balls " << validity.ball_a
                << " (layer " << result.packing.labels[validity.ball_a] << ") and "
                << validity.ball_b << " (layer "
                << result.packing.labels[validity.ball_b] << "), gap "
                << validity.worst_gap;
            throw LayeringError(msg.str());
        }
        const NerveGraph nerve = build_nerve(result.packing);
        const LayerTally& expected = result.tallies.back();
        if (static_cast<long long>(nerve.edge_count()) != expected.tangency_count ||
            static_cast<long long>(result.packing.size()) != expected.ball_count) {
            std::ostringstream msg;
            msg << "direct-mode counts disagree with the recurrence: "
                << result.packing.size() << " balls / " << nerve.edge_count()
                << " tangencies vs " << expected.ball_count << " / "
                << expected.tangency_count;
            throw LayeringError(msg.str());
        }
    }
    return result;
}

ClaimReport verify_separation_claim(const SeedData& seed) {
    const Packing& d600 = seed.d600;
    const int nb0 = antipodal_index(d600, seed.b0_index);
    std::unordered_set<int> excluded(seed.ring_indices.begin(), seed.ring_indices.end());
    excluded.insert(seed.b0_index);
    excluded.insert(nb0);

    ClaimReport report;
    report.sphere_radius_rad = seed.inversion_sphere.radius;
    report.min_center_distance_rad = std::numeric_limits<double>::infinity();
    report.min_surface_distance_rad = std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(d600.size()); ++i) {
        if (excluded.count(i)) {
            continue;
        }
        const SphericalBall& ball = d600.s3_balls[static_cast<std::size_t>(i)];
        const double center_distance = angular_distance(seed.b, ball.center);
        report.min_center_distance_rad =
            std::min(report.min_center_distance_rad, center_distance);
        report.min_surface_distance_rad =
            std::min(report.min_surface_distance_rad, center_distance - ball.radius);
    }
    report.slack_rad = report.min_surface_distance_rad - report.sphere_radius_rad;
    report.pass = report.min_center_distance_rad >= kDeg60 - 1e-9 &&
                  report.min_surface_distance_rad >= kDeg42 - 1e-9 &&
                  report.min_surface_distance_rad > report.sphere_radius_rad;
    if (!report.pass) {
        std::ostringstream msg;
        msg << "separation claim failed: min center distance "
            << degrees(report.min_center_distance_rad) << " deg, min surface distance "
            << degrees(report.min_surface_distance_rad) << " deg, S radius "
            << degrees(report.sphere_radius_rad) << " deg";
        throw ClaimFailureError(msg.str());
    }
    return report;
}

InterfaceReport verify_layer_interface(const SeedData& seed) {
    InterfaceReport report;

    // The window P0 union sigma(P0); build_pn(.., 1, Direct) already rejects
    // overlaps and enforces the 224-ball / 1362-tangency bookkeeping.
    const LayeredPacking window = build_pn(seed, 1, BuildMode::Direct);
    report.window_ball_count = static_cast<int>(window.packing.size());
    report.window_tangency_count = window.tallies.back().tangency_count;

    // Shared layer: sigma(-B) reproduces B for each ring ball B.
    const Packing& d600 = seed.d600;
    for (int r : seed.ring_indices) {
        const SphericalBall& ball = d600.s3_balls[static_cast<std::size_t>(r)];
        const SphericalBall image =
            apply_conformal_to_ball(seed.sigma, {-ball.center, ball.radius});
        const double mismatch = angular_distance(image.center, ball.center);
        report.max_shared_mismatch_rad = std::max(report.max_shared_mismatch_rad, mismatch);
        if (mismatch <= 1e-9 && std::abs(image.radius - ball.radius) <= 1e-9 * ball.radius) {
            ++report.shared_layer_matches;
        }
    }
    if (report.shared_layer_matches != static_cast<int>(seed.ring_indices.size())) {
        std::ostringstream msg;
        msg << "only " << report.shared_layer_matches << " of "
            << seed.ring_indices.size() << " shared-layer balls match (worst "
            << report.max_shared_mismatch_rad << " rad)";
        throw LayeringError(msg.str());
    }

    // Q = P0 minus (R union -R) must stay strictly between -S and S.
    std::unordered_set<int> excluded;
    excluded.insert(seed.b0_index);
    excluded.insert(antipodal_index(d600, seed.b0_index));
    for (int r : seed.ring_indices) {
        excluded.insert(r);
        excluded.insert(antipodal_index(d600, r));
    }
    const double alpha = seed.inversion_sphere.radius;
    report.q_inner_margin_rad = std::numeric_limits<double>::infinity();
    report.q_outer_margin_rad = std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(d600.size()); ++i) {
        if (excluded.count(i)) {
            continue;
        }
        ++report.q_ball_count;
        const SphericalBall& ball = d600.s3_balls[static_cast<std::size_t>(i)];
        const double center_distance = angular_distance(seed.b, ball.center);
        report.q_inner_margin_rad =
            std::min(report.q_inner_margin_rad, center_distance - ball.radius - alpha);
        report.q_outer_margin_rad =
            std::min(report.q_outer_margin_rad,
                     (kPi - alpha) - (center_distance + ball.radius));
    }
    if (report.q_inner_margin_rad <= 0.0 || report.q_outer_margin_rad <= 0.0) {
        std::ostringstream msg;
        msg << "middle layer is not strictly between -S and S (margins "
            << report.q_inner_margin_rad << " / " << report.q_outer_margin_rad
            << " rad)";
        throw LayeringError(msg.str());
    }
    report.pass = true;
    return report;
}

} // namespace akn

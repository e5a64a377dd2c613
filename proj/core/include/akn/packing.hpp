#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "akn/geometry.hpp"

namespace akn {

enum class Chart { S3, R3 };

enum class NerveStrategy { AllPairs, Grid };

/// Default relative tangency tolerance: balls are tangent when
/// |gap| <= rtol * (r1 + r2). Relative rather than absolute because layered
/// constructions produce radii spanning hundreds of orders of magnitude.
inline constexpr double kDefaultTangencyRtol = 1e-9;

/// 8 + 4*sqrt(3), the average-kissing-number bound certified by the
/// shell argument; also the constant in the nerve necessary condition
/// 2|E| < (8 + 4*sqrt(3)) |V|.
inline const double kAverageKissingBound = 8.0 + 4.0 * std::sqrt(3.0);

/// A packing: balls with pairwise disjoint interiors, all in one chart.
/// Exactly one of the two ball vectors is in use, selected by `chart`.
/// `labels` is either empty or holds one tag per ball (e.g. a layer index).
struct Packing {
    Chart chart = Chart::S3;
    std::vector<SphericalBall> s3_balls;
    std::vector<EuclideanBall> r3_balls;
    std::vector<std::string> labels;

    std::size_t size() const {
        return chart == Chart::S3 ? s3_balls.size() : r3_balls.size();
    }
    double radius(std::size_t i) const {
        return chart == Chart::S3 ? s3_balls[i].radius : r3_balls[i].radius;
    }
};

/// gap(i, j) = center distance - (r_i + r_j); angular on s3, Euclidean on r3.
/// Negative means overlap, near zero means tangent.
double pair_gap(const Packing& packing, std::size_t i, std::size_t j);

struct ValidityReport {
    bool ok = true;
    /// Most negative gap found (or +inf for fewer than two balls).
    double worst_gap = std::numeric_limits<double>::infinity();
    int ball_a = -1;
    int ball_b = -1;
};

/// Checks ball invariants and pairwise disjointness. Overlap is a report
/// outcome, not an exception: callers decide whether a bad packing is fatal.
ValidityReport validate_packing(const Packing& packing,
                                double rtol = kDefaultTangencyRtol);

/// Tangency graph: one vertex per ball, one edge per tangent pair.
struct NerveGraph {
    std::size_t vertex_count = 0;
    /// Canonical form: each edge (a, b) with a < b, sorted lexicographically.
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> adjacency;

    std::size_t edge_count() const { return edges.size(); }
    std::size_t degree(std::size_t v) const { return adjacency[v].size(); }
};

/// Builds the nerve. Both strategies produce the same canonical edge set;
/// Grid buckets centers in a hierarchy of power-of-two cells keyed to each
/// ball's radius and runs near-linearly when radii vary by a bounded factor
/// within any local neighborhood. Grid requires the r3 chart (project an s3
/// packing first). Any overlapping pair encountered raises OverlapError: the
/// nerve of a non-packing would not certify anything.
NerveGraph build_nerve(const Packing& packing,
                       double rtol = kDefaultTangencyRtol,
                       NerveStrategy strategy = NerveStrategy::AllPairs);

/// Exact ratio of two machine integers, kept reduced.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d);

    double as_real() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rational& other) const {
        return num == other.num && den == other.den;
    }
};

struct PackingStats {
    long long ball_count = 0;
    long long tangency_count = 0;
    /// k(P) = 2m/n, exact.
    Rational average_kissing;
    double average_kissing_real = 0.0;
    /// Max over balls of the number of tangent neighbors at least as large
    /// (ties included). The warm-up counting argument caps this at 12.
    int larger_neighbor_max = 0;
};

/// Statistics of a packing given its nerve. Throws EmptyPackingError when
/// the packing has no balls (k is undefined).
PackingStats packing_stats(const Packing& packing, const NerveGraph& nerve);

/// Necessary condition for a graph to be a ball-packing nerve:
/// 2|E| < (8 + 4*sqrt(3)) |V|.
bool check_nerve_condition(long long vertex_count, long long edge_count);

} // namespace akn

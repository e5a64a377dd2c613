#include "akn/packing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace akn {
namespace {

enum class PairClass { Separate, Tangent, Overlap };

// Single tangency predicate shared by both nerve strategies: the strategies
// may only differ in candidate generation, never in classification.
PairClass classify(double gap, double radius_sum, double rtol) {
    const double tol = rtol * radius_sum;
    if (gap < -tol) {
        return PairClass::Overlap;
    }
    return (gap <= tol) ? PairClass::Tangent : PairClass::Separate;
}

void require_wellformed(const Packing& packing) {
    if (!packing.labels.empty() && packing.labels.size() != packing.size()) {
        throw InvalidInputError("label count does not match ball count");
    }
    if (packing.chart == Chart::S3) {
        if (!packing.r3_balls.empty()) {
            throw InvalidInputError("s3-chart packing must not carry r3 balls");
        }
        for (const auto& ball : packing.s3_balls) {
            require_valid(ball);
        }
    } else {
        if (!packing.s3_balls.empty()) {
            throw InvalidInputError("r3-chart packing must not carry s3 balls");
        }
        for (const auto& ball : packing.r3_balls) {
            if (!(ball.radius > 0.0) || !std::isfinite(ball.radius)) {
                throw InvalidInputError("euclidean ball radius must be positive and finite");
            }
        }
    }
}

// --- grid candidate generation -------------------------------------------
//
// Each ball is bucketed once, at the level whose cell size 2^level is the
// smallest power of two >= 2r(1 + 1e-6). For a tangent (or overlapping)
// pair with levels li <= lj, the center distance is at most
// (ri + rj)(1 + rtol) <= 2^lj (1 + rtol)/(1 + 1e-6) < 2^lj, so at level lj
// the two cell indices differ by at most one per axis. Scanning each ball's
// 27-cell neighborhood at its own level (taking only higher indices) and at
// every coarser occupied level (taking everything) therefore visits every
// tangent and every overlapping pair exactly once.

struct CellKey {
    std::int32_t level;
    std::int64_t x, y, z;
    bool operator==(const CellKey& other) const {
        return level == other.level && x == other.x && y == other.y && z == other.z;
    }
};

std::uint64_t mix64(std::uint64_t v) {
    v += 0x9e3779b97f4a7c15ULL;
    v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
    v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
    return v ^ (v >> 31);
}

struct CellKeyHash {
    std::size_t operator()(const CellKey& k) const {
        std::uint64_t h = mix64(static_cast<std::uint64_t>(static_cast<std::uint32_t>(k.level)));
        h = mix64(h ^ static_cast<std::uint64_t>(k.x));
        h = mix64(h ^ static_cast<std::uint64_t>(k.y));
        h = mix64(h ^ static_cast<std::uint64_t>(k.z));
        return static_cast<std::size_t>(h);
    }
};

int level_for_radius(double r) {
    int exp = 0;
    std::frexp(2.0 * r * (1.0 + 1e-6), &exp);
    return exp; // 2^exp >= 2r(1 + 1e-6) since frexp's mantissa is < 1
}

std::int64_t cell_index(double coordinate, int level) {
    const double q = std::floor(std::ldexp(coordinate, -level));
    if (std::abs(q) > 4.0e17) {
        throw InvalidInputError(
            "grid nerve strategy cannot index this center/radius spread; use all_pairs");
    }
    return static_cast<std::int64_t>(q);
}

CellKey cell_of(const Vec3& c, int level) {
    return {level, cell_index(c.x(), level), cell_index(c.y(), level),
            cell_index(c.z(), level)};
}

template <typename Consider>
void grid_candidates(const Packing& packing, const Consider& consider) {
    const std::size_t n = packing.r3_balls.size();
    std::vector<int> level(n);
    std::unordered_map<CellKey, std::vector<int>, CellKeyHash> buckets;
    buckets.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        level[i] = level_for_radius(packing.r3_balls[i].radius);
        buckets[cell_of(packing.r3_balls[i].center, level[i])].push_back(
            static_cast<int>(i));
    }

    std::vector<int> occupied_levels(level.begin(), level.end());
    std::sort(occupied_levels.begin(), occupied_levels.end());
    occupied_levels.erase(
        std::unique(occupied_levels.begin(), occupied_levels.end()),
        occupied_levels.end());

    for (std::size_t i = 0; i < n; ++i) {
        const Vec3& c = packing.r3_balls[i].center;
        for (int scan_level : occupied_levels) {
            if (scan_level < level[i]) {
                continue;
            }
            const CellKey base = cell_of(c, scan_level);
            for (std::int64_t dx = -1; dx <= 1; ++dx) {
                for (std::int64_t dy = -1; dy <= 1; ++dy) {
                    for (std::int64_t dz = -1; dz <= 1; ++dz) {
                        const CellKey key{scan_level, base.x + dx, base.y + dy,
                                          base.z + dz};
                        const auto it = buckets.find(key);
                        if (it == buckets.end()) {
                            continue;
                        }
                        for (int j : it->second) {
                            // Same level: dedupe by index order. Coarser
                            // level: the pair is seen only from the finer
                            // ball, so take every occupant.
                            if (scan_level == level[i]
                                    ? j > static_cast<int>(i)
                                    : level[j] > level[i]) {
                                consider(static_cast<int>(i), j);
                            }
                        }
                    }
                }
            }
        }
    }
}

} // namespace

double pair_gap(const Packing& packing, std::size_t i, std::size_t j) {
    if (packing.chart == Chart::S3) {
        const auto& a = packing.s3_balls[i];
        const auto& b = packing.s3_balls[j];
        return angular_distance(a.center, b.center) - (a.radius + b.radius);
    }
    const auto& a = packing.r3_balls[i];
    const auto& b = packing.r3_balls[j];
    return (a.center - b.center).norm() - (a.radius + b.radius);
}

ValidityReport validate_packing(const Packing& packing, double rtol) {
    require_wellformed(packing);
    ValidityReport report;
    const std::size_t n = packing.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double gap = pair_gap(packing, i, j);
            if (gap < report.worst_gap) {
                report.worst_gap = gap;
                report.ball_a = static_cast<int>(i);
                report.ball_b = static_cast<int>(j);
            }
            const double radius_sum = packing.radius(i) + packing.radius(j);
            if (classify(gap, radius_sum, rtol) == PairClass::Overlap) {
                report.ok = false;
            }
        }
    }
    return report;
}

NerveGraph build_nerve(const Packing& packing, double rtol, NerveStrategy strategy) {
    require_wellformed(packing);
    const std::size_t n = packing.size();
    std::vector<std::pair<int, int>> edges;

    const auto consider = [&](int i, int j) {
        const double radius_sum = packing.radius(i) + packing.radius(j);
        const double gap = pair_gap(packing, i, j);
        switch (classify(gap, radius_sum, rtol)) {
        case PairClass::Overlap: {
            std::ostringstream msg;
            msg << "balls " << i << " and " << j << " overlap (gap " << gap
                << ", radius sum " << radius_sum << ")";
            throw OverlapError(i, j, gap, msg.str());
        }
        case PairClass::Tangent:
            edges.emplace_back(std::min(i, j), std::max(i, j));
            break;
        case PairClass::Separate:
            break;
        }
    };

    if (strategy == NerveStrategy::AllPairs) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                consider(static_cast<int>(i), static_cast<int>(j));
            }
        }
    } else {
        if (packing.chart != Chart::R3) {
            throw InvalidInputError(
                "grid nerve strategy requires an r3-chart packing; "
                "stereographically project first");
        }
        grid_candidates(packing, consider);
    }

    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    NerveGraph graph;
    graph.vertex_count = n;
    graph.edges = std::move(edges);
    graph.adjacency.assign(n, {});
    for (const auto& [a, b] : graph.edges) {
        graph.adjacency[a].push_back(b);
        graph.adjacency[b].push_back(a);
    }
    for (auto& neighbors : graph.adjacency) {
        std::sort(neighbors.begin(), neighbors.end());
    }
    return graph;
}

Rational::Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) {
        throw InvalidInputError("rational with zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

PackingStats packing_stats(const Packing& packing, const NerveGraph& nerve) {
    const std::size_t n = packing.size();
    if (n == 0) {
        throw EmptyPackingError("average kissing number of an empty packing is undefined");
    }
    if (nerve.vertex_count != n) {
        throw InvalidInputError("nerve vertex count does not match the packing");
    }
    PackingStats stats;
    stats.ball_count = static_cast<long long>(n);
    stats.tangency_count = static_cast<long long>(nerve.edge_count());
    stats.average_kissing = Rational(2 * stats.tangency_count, stats.ball_count);
    stats.average_kissing_real = stats.average_kissing.as_real();
    for (std::size_t v = 0; v < n; ++v) {
        int at_least_as_large = 0;
        for (int w : nerve.adjacency[v]) {
            if (packing.radius(static_cast<std::size_t>(w)) >= packing.radius(v)) {
                ++at_least_as_large;
            }
        }
        stats.larger_neighbor_max = std::max(stats.larger_neighbor_max, at_least_as_large);
    }
    return stats;
}

bool check_nerve_condition(long long vertex_count, long long edge_count) {
    if (vertex_count < 0 || edge_count < 0) {
        throw InvalidInputError("vertex and edge counts must be non-negative");
    }
    return 2.0 * static_cast<double>(edge_count) <
           kAverageKissingBound * static_cast<double>(vertex_count);
}

} // namespace akn

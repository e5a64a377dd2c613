#pragma once

#include <vector>

#include "akn/packing.hpp"

namespace akn {

/// The seed of the layered construction: the 120-ball packing, the removed
/// ball B0, its kissing ring R, the sphere S through R's mutual kissing
/// points, and the contraction sigma(p) = I_S(-p).
struct SeedData {
    Packing d600;
    int b0_index = -1;
    Point4 b = Point4::Zero();        // center of B0, fixed point of sigma
    std::vector<int> ring_indices;    // the 12 balls kissing B0
    SphericalSphere inversion_sphere; // S, centered at b
    ConformalMapS3 sigma;             // antipode followed by inversion in S
};

/// Exact combinatorial bookkeeping for P_n.
struct LayerTally {
    long long n = 0;
    long long ball_count = 0;     // 118 + 106 n
    long long tangency_count = 0; // 696 + 666 n
    Rational k;                   // 2 * tangency_count / ball_count
};

struct PropertyReport {
    int ball_count = 0;
    long long tangency_count = 0;
    int min_degree = 0;
    int max_degree = 0;
    /// max |center dot - cos 36 deg| over tangent pairs.
    double max_kissing_dot_error = 0.0;
    /// Smallest center distance among non-tangent pairs (should be 60 deg).
    double next_nearest_distance_rad = 0.0;
    /// Tangencies inside each ball's 12-neighbor set (30, icosahedral).
    int neighbor_mutual_tangencies = 0;
    /// Worst distance from the antipode of a center to the nearest center.
    double max_antipode_mismatch = 0.0;
};

struct ClaimReport {
    double min_center_distance_rad = 0.0;  // over P0 minus R, from b; 60 deg
    double min_surface_distance_rad = 0.0; // center distance minus ball radius; 42 deg
    double sphere_radius_rad = 0.0;        // radius of S
    double slack_rad = 0.0;                // min_surface_distance - sphere_radius
    bool pass = false;
};

struct InterfaceReport {
    int window_ball_count = 0;            // 224 for P0 union sigma(P0)
    long long window_tangency_count = 0;  // 1362
    int shared_layer_matches = 0;         // 12: sigma(-R) lands on R
    double max_shared_mismatch_rad = 0.0;
    int q_ball_count = 0;                 // 94: P0 minus (R union -R)
    double q_inner_margin_rad = 0.0;      // clearance of Q outside S
    double q_outer_margin_rad = 0.0;      // clearance of Q inside -S
    bool pass = false;
};

enum class BuildMode { Direct, Windowed };

struct LayeredPacking {
    Packing packing;
    std::vector<LayerTally> tallies; // one row per n' in 0..n
};

/// The 120-ball packing: unit centers from the three orbits of
/// (tau, 1, 1/tau, 0)/2, (1, 1, 1, 1)/2 and (1, 0, 0, 0) under sign changes
/// and even coordinate permutations, each ball of angular radius pi/10,
/// sorted lexicographically by coordinates.
Packing build_d600();

/// Verifies the structural properties the layered construction relies on:
/// 720 tangencies, twelve 36-degree neighbors per ball forming an
/// icosahedral (30-edge, 5-regular) contact pattern, next-nearest centers at
/// 60 degrees, and closure under the antipodal map. Throws
/// PropertyViolationError naming the first failing check.
PropertyReport verify_d600_properties(const Packing& d600);

/// Index of the ball whose center is the antipode of ball i's center.
int antipodal_index(const Packing& d600, int i);

/// Builds S and sigma for the given removed ball. b0_index = -1 selects the
/// canonical ball centered at (1, 0, 0, 0); that center is exactly
/// representable, which keeps deep layers accurate (tangent components near
/// b are then computed free of cancellation). The radius of S is computed
/// both in closed form, arccos(sqrt((2 + tau)/5)), and as the distance from
/// b to an actual kissing point (b1 + b2)/|b1 + b2| of two tangent ring
/// balls; disagreement beyond 1e-12 raises ConstructionInconsistencyError.
SeedData build_sigma(const Packing& d600, int b0_index = -1);

/// Maximum n accepted by direct mode: beyond this depth, layer radii fall
/// below ~1e-13 rad and pairwise tangency validation is no longer reliable.
inline constexpr int kMaxDirectLayers = 12;
/// Maximum n whose coordinates are still representable for materialization
/// (each layer shrinks radii by ~0.0807; doubles underflow near 1e-308).
inline constexpr int kMaxMaterializedLayers = 250;

/// P_n = P_0 union sigma(P_0) union ... union sigma^n(P_0), with
/// P_0 = d600 minus {B0, -B0}. Consecutive images share a 12-ball layer
/// (sigma^k(-R) = sigma^(k-1)(R)), which is stored once. Direct mode
/// (n <= 12) validates the full packing numerically and requires the nerve
/// count to equal the combinatorial tally; windowed mode trusts the
/// recurrence (one window is certified by verify_layer_interface and
/// conformal invariance carries it to all depths).
LayeredPacking build_pn(const SeedData& seed, int n, BuildMode mode);

/// Verifies that every ball of P0 other than the ring R keeps its distance:
/// centers at least 60 degrees from b, nearest points at least 42 degrees,
/// hence strictly outside S. Throws ClaimFailureError on violation.
ClaimReport verify_separation_claim(const SeedData& seed);

/// Verifies the single window P0 union sigma(P0): no overlap anywhere, the
/// shared layer matches ball-for-ball within 1e-9, the middle layer
/// Q = P0 minus (R union -R) lies strictly between -S and S, and the window
/// tangency count equals 696 + 666. Throws LayeringError on violation.
InterfaceReport verify_layer_interface(const SeedData& seed);

} // namespace akn

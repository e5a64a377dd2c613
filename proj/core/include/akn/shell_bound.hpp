#pragma once

#include <vector>

#include "akn/packing.hpp"

namespace akn {

/// Shell scale: around each ball B the argument places the sphere S(B) of
/// radius rho * r(B). Any rho in (1, 3) yields a positive bound; sqrt(3)
/// maximizes it.
struct ShellParams {
    double rho = std::sqrt(3.0);
};

/// Geometry of one shell/ball pair: which fraction of the area of the
/// sphere of radius `shell_radius` around B's center lies inside the ball C
/// of radius `r` whose center is `d` away.
struct CapGeometry {
    double d = 0.0;
    double shell_radius = 0.0;
    double r = 0.0;
    /// Cosine of the cap's angular radius; meaningful only in the partial
    /// case (fraction strictly between 0 and 1).
    double cos_theta = 0.0;
    double fraction = 0.0; // in [0, 1]
};

/// Area fraction a(B, C) by cases: 0 when the shell surface misses C
/// (d - r >= shell_radius, or C entirely inside: d + r <= shell_radius),
/// 1 when the surface lies inside C (d + shell_radius <= r), otherwise a
/// partial cap with cos_theta from the law of cosines,
/// cos_theta = (d^2 + shell_radius^2 - r^2) / (2 d shell_radius), and
/// fraction (1 - cos_theta)/2. All arguments must be positive.
CapGeometry cap_area_fraction(double d, double shell_radius, double r);

/// Closed form of a(B, C) for tangent balls (d = rB + rC):
/// 1/2 - (rB + rho^2 rB + 2 rC) / (4 rho (rB + rC)), clamped to 0 exactly
/// when rC < (rho - 1) rB / 2 (the shell then misses C entirely).
double kissing_pair_fraction(double rB, double rC, const ShellParams& params);

/// 1 - (3 + rho^2) / (4 rho): the radius-independent value of
/// a(B, C) + a(C, B) for tangent pairs when neither side is clamped.
double pair_sum_constant(double rho);

/// 2 / pair_sum_constant(rho): the average-kissing bound this rho certifies;
/// 8 + 4 sqrt(3) at rho = sqrt(3).
double implied_kissing_bound(double rho);

struct PairSumResult {
    double sum = 0.0;
    /// True when at least one of the two fractions was clamped to zero; the
    /// sum then exceeds the constant instead of equaling it.
    bool clamped = false;
};

/// a(B, C) + a(C, B) for a tangent pair.
PairSumResult pair_sum(double rB, double rC, const ShellParams& params);

/// Maximizes pair_sum_constant over [lo, hi] subset of (1, 3) by
/// golden-section search (the objective is smooth and unimodal there).
/// The argmax is sqrt(3) whenever it lies inside the interval.
double optimize_rho(double lo, double hi, double tol = 1e-9);

struct ShellReport {
    std::vector<double> occupancy; // per ball: sum over C of a(B, C)
    double max_occupancy = 0.0;
    /// Smallest a(B,C) + a(C,B) over tangent pairs, by the closed form.
    double min_tangent_pair_sum = 0.0;
    double pair_sum_value = 0.0;  // 1 - (3 + rho^2)/(4 rho)
    double implied_bound = 0.0;   // 2 / pair_sum_value
    double average_kissing = 0.0; // k(P) = 2m/n
    bool pass = false;
};

/// The certificate k(P) < 8 + 4 sqrt(3) for a finite Euclidean packing:
/// since ball interiors are disjoint, each shell has occupancy
/// sum_C a(B, C) <= 1, while each tangency contributes the fixed pair sum;
/// summing over balls bounds 2|E| by |P| / pair_sum_constant. Asserts
/// occupancy <= 1 + 1e-9 per ball and tangent pair sums >= constant - 1e-12,
/// throwing CertificateFailureError otherwise; pass additionally requires
/// k(P) < implied_bound. The packing must be in the r3 chart (project an s3
/// packing first) and non-empty.
ShellReport shell_certificate(const Packing& packing, const NerveGraph& nerve,
                              const ShellParams& params);

} // namespace akn

#include "akn/shell_bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace akn {
namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        std::ostringstream msg;
        msg << name << " must be positive and finite, got " << value;
        throw InvalidInputError(msg.str());
    }
}

void require_rho(double rho) {
    if (!(rho > 1.0) || !(rho < 3.0)) {
        std::ostringstream msg;
        msg << "rho must lie in (1, 3) for a positive pair-sum bound, got " << rho;
        throw InvalidInputError(msg.str());
    }
}

} // namespace

CapGeometry cap_area_fraction(double d, double shell_radius, double r) {
    require_positive(d, "center distance");
    require_positive(shell_radius, "shell radius");
    require_positive(r, "ball radius");

    CapGeometry cap;
    cap.d = d;
    cap.shell_radius = shell_radius;
    cap.r = r;
    if (d - r >= shell_radius || d + r <= shell_radius) {
        cap.cos_theta = 1.0;
        cap.fraction = 0.0; // shell surface misses the ball
    } else if (d + shell_radius <= r) {
        cap.cos_theta = -1.0;
        cap.fraction = 1.0; // shell surface entirely inside the ball
    } else {
        // (d^2 + R^2 - r^2) / (2dR), with the difference of squares factored
        // so that d ~ r (the common tangency regime) does not cancel.
        cap.cos_theta = ((d - r) * (d + r) + shell_radius * shell_radius) /
                        (2.0 * d * shell_radius);
        cap.cos_theta = std::clamp(cap.cos_theta, -1.0, 1.0);
        cap.fraction = 0.5 * (1.0 - cap.cos_theta);
    }
    return cap;
}

double kissing_pair_fraction(double rB, double rC, const ShellParams& params) {
    require_positive(rB, "radius of B");
    require_positive(rC, "radius of C");
    require_rho(params.rho);
    const double rho = params.rho;
    const double value =
        0.5 - (rB + rho * rho * rB + 2.0 * rC) / (4.0 * rho * (rB + rC));
    // Negative exactly when rC < (rho - 1) rB / 2: the shell then misses C
    // and the true area fraction is zero.
    return std::max(0.0, value);
}

double pair_sum_constant(double rho) {
    require_rho(rho);
    return 1.0 - (3.0 + rho * rho) / (4.0 * rho);
}

double implied_kissing_bound(double rho) {
    return 2.0 / pair_sum_constant(rho);
}

PairSumResult pair_sum(double rB, double rC, const ShellParams& params) {
    const double ab = kissing_pair_fraction(rB, rC, params);
    const double ba = kissing_pair_fraction(rC, rB, params);
    PairSumResult result;
    result.sum = ab + ba;
    result.clamped = (ab == 0.0) || (ba == 0.0);
    return result;
}

double optimize_rho(double lo, double hi, double tol) {
    if (!(lo < hi) || !(lo > 1.0) || !(hi < 3.0)) {
        throw InvalidInputError("search interval must be nonempty and inside (1, 3)");
    }
    require_positive(tol, "tolerance");
    // Golden-section search for the maximum of the (unimodal) pair-sum value.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = pair_sum_constant(c);
    double fd = pair_sum_constant(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = pair_sum_constant(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = pair_sum_constant(d);
        }
    }
    return 0.5 * (a + b);
}

ShellReport shell_certificate(const Packing& packing, const NerveGraph& nerve,
                              const ShellParams& params) {
    if (packing.chart != Chart::R3) {
        throw InvalidInputError(
            "shell certificate operates on r3-chart packings; "
            "stereographically project first");
    }
    const std::size_t n = packing.size();
    if (n == 0) {
        throw EmptyPackingError("shell certificate of an empty packing is undefined");
    }
    if (nerve.vertex_count != n) {
        throw InvalidInputError("nerve vertex count does not match the packing");
    }
    require_rho(params.rho);

    ShellReport report;
    report.pair_sum_value = pair_sum_constant(params.rho);
    report.implied_bound = implied_kissing_bound(params.rho);

    // Occupancy of each shell: disjoint interiors mean the caps cut out by
    // distinct balls cannot overlap, so each sum is at most the whole area.
    report.occupancy.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const EuclideanBall& ball = packing.r3_balls[i];
        const double shell_radius = params.rho * ball.radius;
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) {
                continue;
            }
            const EuclideanBall& other = packing.r3_balls[j];
            const double d = (ball.center - other.center).norm();
            if (d - other.radius >= shell_radius) {
                continue; // too far to reach the shell
            }
            sum += cap_area_fraction(d, shell_radius, other.radius).fraction;
        }
        report.occupancy[i] = sum;
        report.max_occupancy = std::max(report.max_occupancy, sum);
        if (sum > 1.0 + 1e-9) {
            std::ostringstream msg;
            msg << "shell occupancy of ball " << i << " is " << sum
                << " > 1: balls are not disjoint (or tolerances are breached)";
            throw CertificateFailureError(msg.str());
        }
    }

    // Every tangency contributes the fixed pair sum. Tangent distances are
    // exact by definition of the nerve, so the closed form applies.
    report.min_tangent_pair_sum = std::numeric_limits<double>::infinity();
    for (const auto& [a, b] : nerve.edges) {
        const PairSumResult ps = pair_sum(packing.r3_balls[a].radius,
                                          packing.r3_balls[b].radius, params);
        report.min_tangent_pair_sum = std::min(report.min_tangent_pair_sum, ps.sum);
        if (ps.sum < report.pair_sum_value - 1e-12) {
            std::ostringstream msg;
            msg << "tangent pair (" << a << ", " << b << ") has shell pair sum "
                << ps.sum << " below the constant " << report.pair_sum_value;
            throw CertificateFailureError(msg.str());
        }
    }
    if (nerve.edges.empty()) {
        report.min_tangent_pair_sum = report.pair_sum_value; // vacuous
    }

    report.average_kissing =
        2.0 * static_cast<double>(nerve.edge_count()) / static_cast<double>(n);
    report.pass = report.average_kissing < report.implied_bound;
    return report;
}

} // namespace akn

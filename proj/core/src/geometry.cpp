#include "akn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace akn {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;

// Below this tangential norm a direction is treated as parallel to the
// reference point and replaced by the deterministic fallback direction.
constexpr double kParallelTolerance = 1e-13;

/// An angle t in [0, pi] stored together with its supplement pi - t.
/// Whichever of the two is small is exact; deriving one from the other by
/// subtraction from pi would lose the digits that matter near the poles.
struct DualAngle {
    double th; // the angle itself
    double et; // its supplement, pi - th
};

// Image of a dual angle under inversion with k = tan^2(radius/2):
// tan(th'/2) = k / tan(th/2). Evaluated through whichever of th, et is
// below pi/2, so the half-angle tangent never sees an argument near pi.
DualAngle invert_dual(double k, const DualAngle& a) {
    const double t = (a.th <= kHalfPi) ? std::tan(0.5 * a.th) : 1.0 / std::tan(0.5 * a.et);
    return {2.0 * std::atan2(k, t), 2.0 * std::atan2(t, k)};
}

// cos/sin of a dual angle, taking the trig through the small representative.
double cos_dual(const DualAngle& a) {
    return (a.th <= kHalfPi) ? std::cos(a.th) : -std::cos(a.et);
}
double sin_dual(const DualAngle& a) {
    return (a.th <= kHalfPi) ? std::sin(a.th) : std::sin(a.et);
}

// First standard axis not parallel to c, orthonormalized against c. Used
// when a great-circle direction is needed but the defining points are
// (anti)parallel, so that the choice is deterministic.
Point4 fallback_tangent(const Point4& c) {
    for (int i = 0; i < 4; ++i) {
        Point4 e = Point4::Zero();
        e[i] = 1.0;
        if (std::abs(e.dot(c)) < 1.0 - 1e-12) {
            const Point4 w = e - e.dot(c) * c;
            return w.normalized();
        }
    }
    throw InvalidInputError("no fallback tangent direction: center is not a unit vector");
}

// Unit tangent at c pointing along the great circle from c towards target.
Point4 tangent_towards(const Point4& c, const Point4& target) {
    const Point4 w = target - target.dot(c) * c;
    const double n = w.norm();
    if (n < kParallelTolerance) {
        return fallback_tangent(c);
    }
    return w / n;
}

Point4 point_at_angle(const Point4& base, const Point4& tangent, const DualAngle& a) {
    Point4 p = cos_dual(a) * base + sin_dual(a) * tangent;
    p.normalize();
    return p;
}

double half_tangent_sq(double radius) {
    const double t = std::tan(0.5 * radius);
    return t * t;
}

// Angle of p from c together with the angle from the antipode of c. Both
// are computed from chords, so whichever is small carries full precision.
DualAngle dual_angle_from(const Point4& c, const Point4& p) {
    return {angular_distance(c, p), angular_distance(Point4(-c), p)};
}

} // namespace

void require_unit(const Point4& p) {
    const double n = p.norm();
    if (std::abs(n - 1.0) > kUnitNormTolerance) {
        std::ostringstream msg;
        msg << "vector is not on the unit 3-sphere (norm " << n << ")";
        throw InvalidInputError(msg.str());
    }
}

void require_valid(const SphericalBall& ball) {
    require_unit(ball.center);
    if (!(ball.radius > 0.0) || !(ball.radius < kPi)) {
        throw InvalidInputError("spherical ball radius must lie in (0, pi)");
    }
}

void require_valid(const SphericalSphere& sphere) {
    require_unit(sphere.center);
    if (!(sphere.radius > 0.0) || !(sphere.radius < kPi)) {
        throw InvalidInputError("inversion sphere radius must lie in (0, pi)");
    }
}

double angular_distance(const Point4& p, const Point4& q) {
    require_unit(p);
    require_unit(q);
    const double half_chord = 0.5 * (p - q).norm();
    return 2.0 * std::asin(std::min(1.0, half_chord));
}

Point4 invert_point_in_sphere(const SphericalSphere& s, const Point4& p) {
    require_valid(s);
    require_unit(p);

    const double k = half_tangent_sq(s.radius);
    const DualAngle a = dual_angle_from(s.center, p);

    // At the center or its antipode every great circle works and the image
    // is the opposite pole exactly.
    if (a.th < kParallelTolerance) {
        return -s.center;
    }
    if (a.et < kParallelTolerance) {
        return s.center;
    }

    const Point4 u = tangent_towards(s.center, p);
    const DualAngle image = invert_dual(k, a);
    return point_at_angle(s.center, u, image);
}

SphericalBall invert_ball_in_sphere(const SphericalSphere& s, const SphericalBall& ball) {
    require_valid(s);
    require_valid(ball);

    const double k = half_tangent_sq(s.radius);
    const DualAngle ac = dual_angle_from(s.center, ball.center);
    const Point4 u = tangent_towards(s.center, ball.center);
    const double r = ball.radius;

    // The ball occupies signed angles [ac.th - r, ac.th + r] along u. Branch
    // tests and endpoint duals are built from whichever dual representative
    // is accurate: ac.th saturates to exactly pi for centers within ~1e-8 of
    // the antipode (and ac.et to pi near the center), so expressions like
    // ac.th + r > pi must never decide anything in those regimes.

    if (ac.th < r) {
        // Ball covers the inversion center, so the image covers its
        // antipode. Both endpoint duals follow from ac.th, which is the
        // accurate representative here. Image endpoints sit near the
        // antipode; combining their supplements keeps the small radius and
        // the gap to pi accurate.
        const DualAngle i1 = invert_dual(k, DualAngle{r - ac.th, kPi - (r - ac.th)});
        const DualAngle i2 = invert_dual(k, DualAngle{ac.th + r, kPi - (ac.th + r)});
        const double radius = 0.5 * (i1.et + i2.et);
        // Image center, signed along u: pi + offset with
        // offset = (psi1 + psi2)/2, psi1 = -i1.th, psi2 = +i2.th. Folding
        // into [-pi, pi]: a negative offset stays on the +u side (angle
        // pi - |offset| from the center), a positive one wraps to -u.
        const double offset = 0.5 * (i1.et - i2.et);
        const double sign = (offset >= 0.0) ? -1.0 : 1.0;
        const DualAngle center{kPi - std::abs(offset), std::abs(offset)};
        return {point_at_angle(s.center, Point4(sign * u), center), radius};
    }

    if (ac.et < r) {
        // Ball covers the antipode of the inversion center; the image covers
        // the center itself, and the signed midpoint straddles zero. Both
        // endpoint duals follow from ac.et, the accurate representative.
        const DualAngle i1 = invert_dual(k, DualAngle{kPi - (ac.et + r), ac.et + r});
        const DualAngle i2 = invert_dual(k, DualAngle{kPi - (r - ac.et), r - ac.et});
        const double psi1 = i1.th;
        const double psi2 = -i2.th;
        const double mid = 0.5 * (psi1 + psi2);
        const double radius = 0.5 * (psi1 - psi2);
        const double sign = (mid >= 0.0) ? 1.0 : -1.0;
        const DualAngle center{std::abs(mid), kPi - std::abs(mid)};
        return {point_at_angle(s.center, Point4(sign * u), center), radius};
    }

    // Generic case: each endpoint's th and et field is assembled from its
    // own representative, and invert_dual reads only the well-conditioned
    // one. The map reverses orientation along the circle, so i1 (image of
    // the near endpoint) is the far image endpoint.
    const DualAngle i1 = invert_dual(k, DualAngle{ac.th - r, ac.et + r});
    const DualAngle i2 = invert_dual(k, DualAngle{ac.th + r, ac.et - r});
    const DualAngle center{0.5 * (i1.th + i2.th), 0.5 * (i1.et + i2.et)};
    // Half-difference of the image angles, through the better-conditioned
    // representative pair.
    const double radius =
        (center.th <= kHalfPi) ? 0.5 * (i1.th - i2.th) : 0.5 * (i2.et - i1.et);
    return {point_at_angle(s.center, u, center), radius};
}

Point4 apply_conformal(const ConformalMapS3& m, const Point4& p) {
    if (m.power < 0) {
        throw InvalidInputError("conformal map power must be >= 0");
    }
    Point4 q = p;
    for (int i = 0; i < m.power; ++i) {
        if (m.pre_antipode) {
            q = -q;
        }
        q = invert_point_in_sphere(m.inversion_sphere, q);
    }
    return q;
}

SphericalBall apply_conformal_to_ball(const ConformalMapS3& m, const SphericalBall& ball) {
    if (m.power < 0) {
        throw InvalidInputError("conformal map power must be >= 0");
    }
    SphericalBall b = ball;
    for (int i = 0; i < m.power; ++i) {
        if (m.pre_antipode) {
            b.center = -b.center;
        }
        b = invert_ball_in_sphere(m.inversion_sphere, b);
    }
    return b;
}

PoleBasis make_pole_basis(const Point4& pole) {
    require_unit(pole);
    int skip = 0;
    for (int i = 1; i < 4; ++i) {
        if (std::abs(pole[i]) > std::abs(pole[skip])) {
            skip = i;
        }
    }
    PoleBasis basis;
    basis.pole = pole;
    int out = 0;
    for (int i = 0; i < 4; ++i) {
        if (i == skip) {
            continue;
        }
        Point4 e = Point4::Zero();
        e[i] = 1.0;
        Point4 w = e - e.dot(pole) * pole;
        for (int j = 0; j < out; ++j) {
            w -= w.dot(basis.axes[j]) * basis.axes[j];
        }
        basis.axes[out++] = w.normalized();
    }
    return basis;
}

Vec3 stereographic_project(const Point4& pole, const Point4& x) {
    require_unit(pole);
    require_unit(x);
    const Point4 diff = x - pole;
    // 1 - x.pole computed as |x - pole|^2 / 2: non-negative by construction
    // and free of the cancellation the direct dot product suffers near the
    // antipode of the pole.
    const double denom = 0.5 * diff.squaredNorm();
    if (denom < 1e-24) {
        throw InvalidInputError("cannot project the pole itself");
    }
    // x - (x.pole) pole = (x - pole) + denom * pole, again cancellation-free.
    const Point4 num = diff + denom * pole;
    const PoleBasis basis = make_pole_basis(pole);
    Vec3 y;
    for (int i = 0; i < 3; ++i) {
        y[i] = num.dot(basis.axes[i]) / denom;
    }
    return y;
}

EuclideanBall stereographic_project(const Point4& pole, const SphericalBall& ball) {
    require_unit(pole);
    require_valid(ball);
    const double pole_gap = angular_distance(pole, ball.center) - ball.radius;
    if (pole_gap <= 1e-12) {
        throw PoleInBallError(
            "projection pole lies inside or on the ball (clearance " +
            std::to_string(pole_gap) + " rad)");
    }

    // Work from the antipode of the pole: the ball stays bounded away from
    // the parametrization's far point, so both extremal angles are < pi.
    const Point4 apole = -pole;
    const DualAngle ac = dual_angle_from(apole, ball.center);
    const Point4 u = tangent_towards(apole, ball.center);

    const DualAngle a1{ac.th - ball.radius, ac.et + ball.radius};
    const DualAngle a2{ac.th + ball.radius, ac.et - ball.radius};
    Point4 x1, x2;
    if (a1.th < 0.0) {
        // Ball covers the antipode of the pole; the extremal points sit at
        // signed angles a1.th < 0 < a2.th on the same great circle.
        x1 = point_at_angle(apole, Point4(-u), DualAngle{-a1.th, kPi + a1.th});
    } else {
        x1 = point_at_angle(apole, u, a1);
    }
    x2 = point_at_angle(apole, u, a2);

    const Vec3 p1 = stereographic_project(pole, x1);
    const Vec3 p2 = stereographic_project(pole, x2);
    return {0.5 * (p1 + p2), 0.5 * (p2 - p1).norm()};
}

} // namespace akn

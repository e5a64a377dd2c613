#pragma once

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <numbers>

#include "akn/errors.hpp"

namespace akn {

/// A point on the unit 3-sphere, as a unit 4-vector in R^4.
using Point4 = Eigen::Vector4d;
using Vec3 = Eigen::Vector3d;

inline const double kGoldenRatio = (1.0 + std::sqrt(5.0)) / 2.0;

/// Tolerance for accepting a 4-vector as a point of S^3.
inline constexpr double kUnitNormTolerance = 1e-9;

/// Ball on S^3: all points within `radius` (angular, radians) of `center`.
struct SphericalBall {
    Point4 center;
    double radius; // in (0, pi)
};

/// Codimension-1 sphere on S^3 (the boundary surface, not the solid ball).
struct SphericalSphere {
    Point4 center;
    double radius; // angular radius in (0, pi)
};

/// Round ball in R^3.
struct EuclideanBall {
    Vec3 center;
    double radius; // > 0
};

/// Iterated conformal map of S^3: `power` applications of
/// (optional antipode, then inversion in `inversion_sphere`).
/// power = 0 is the identity.
struct ConformalMapS3 {
    SphericalSphere inversion_sphere;
    bool pre_antipode = false;
    int power = 1;
};

/// Throws InvalidInputError unless p is a unit vector within kUnitNormTolerance.
void require_unit(const Point4& p);

/// Throws InvalidInputError unless the angular radius lies in (0, pi).
void require_valid(const SphericalBall& ball);
void require_valid(const SphericalSphere& sphere);

/// Angular distance d(p, q) in [0, pi].
///
/// Computed from the chord length, d = 2 asin(|p - q| / 2), which keeps full
/// relative accuracy for nearly coincident points where acos(p . q) loses
/// everything below ~1e-8 rad.
double angular_distance(const Point4& p, const Point4& q);

/// Inversion in the sphere `s`: fixes s pointwise, swaps s.center with its
/// antipode. The image lies on the great circle through s.center and p, on
/// the same side, at angle t' with tan(t'/2) = tan^2(s.radius/2) / tan(t/2).
Point4 invert_point_in_sphere(const SphericalSphere& s, const Point4& p);

/// Inversion applied to a ball. The two extremal points of the ball on the
/// directed great circle through s.center and ball.center map through the
/// signed extension of the point law; the image ball is recovered from the
/// two image angles.
SphericalBall invert_ball_in_sphere(const SphericalSphere& s, const SphericalBall& ball);

Point4 apply_conformal(const ConformalMapS3& m, const Point4& p);
SphericalBall apply_conformal_to_ball(const ConformalMapS3& m, const SphericalBall& ball);

/// Deterministic orthonormal basis of the hyperplane orthogonal to `pole`:
/// Gram-Schmidt on the standard axes, excluding the axis most parallel to
/// the pole, in index order.
struct PoleBasis {
    Point4 pole;
    std::array<Point4, 3> axes;
};
PoleBasis make_pole_basis(const Point4& pole);

/// Stereographic projection from `pole`, landing in the hyperplane pole^T
/// identified with R^3 through make_pole_basis(pole).
/// The antipode of the pole maps to the origin.
Vec3 stereographic_project(const Point4& pole, const Point4& x);

/// Ball image under stereographic projection: the two extremal points of the
/// ball on the great circle through pole and center project to a diameter of
/// the image ball. The pole must lie strictly outside the closed ball.
EuclideanBall stereographic_project(const Point4& pole, const SphericalBall& ball);

inline double degrees(double radians) {
    return radians * 180.0 / std::numbers::pi;
}
inline double radians_from_degrees(double deg) {
    return deg * std::numbers::pi / 180.0;
}

} // namespace akn

#pragma once

// Hyperboloid-model helpers for the hyperbolic plane. Points live on
// {X : -X0^2 + X1^2 + X2^2 = -1, X0 > 0}; the chart center o is (1, 0, 0).

#include <Eigen/Dense>
#include <cmath>

namespace hypgraph {

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

template <typename Scalar>
Scalar minkowski_dot(const Vec3<Scalar>& x, const Vec3<Scalar>& y) {
    return -x(0) * y(0) + x(1) * y(1) + x(2) * y(2);
}

template <typename Scalar>
Vec3<Scalar> from_polar(Scalar r, Scalar theta) {
    using std::cos;
    using std::cosh;
    using std::sin;
    using std::sinh;
    return Vec3<Scalar>(cosh(r), sinh(r) * cos(theta), sinh(r) * sin(theta));
}

/// Fermi coordinates about the geodesic through o along the X1 axis;
/// `s` is the signed distance, positive toward polar angle pi/2.
template <typename Scalar>
Vec3<Scalar> from_fermi(Scalar s, Scalar t) {
    using std::cosh;
    using std::sinh;
    return Vec3<Scalar>(cosh(s) * cosh(t), cosh(s) * sinh(t), sinh(s));
}

template <typename Scalar>
Scalar polar_radius(const Vec3<Scalar>& x) {
    using std::asinh;
    using std::hypot;
    // asinh of the spatial norm is accurate near the origin, unlike acosh(X0).
    return asinh(hypot(x(1), x(2)));
}

template <typename Scalar>
Scalar polar_angle(const Vec3<Scalar>& x) {
    using std::atan2;
    return atan2(x(2), x(1));
}

template <typename Scalar>
Scalar distance(const Vec3<Scalar>& x, const Vec3<Scalar>& y) {
    using std::acosh;
    using std::max;
    return acosh(max(Scalar(1), -minkowski_dot(x, y)));
}

/// Null vector representing the ideal point at polar angle `theta`.
template <typename Scalar>
Vec3<Scalar> ideal_point(Scalar theta) {
    using std::cos;
    using std::sin;
    return Vec3<Scalar>(Scalar(1), cos(theta), sin(theta));
}

/// Busemann function of the ideal point at `theta`, normalized to vanish at o;
/// decreases toward the ideal point.
template <typename Scalar>
Scalar busemann(const Vec3<Scalar>& x, Scalar theta) {
    using std::log;
    return log(-minkowski_dot(x, ideal_point(theta)));
}

/// A geodesic stored by its unit spacelike normal N; the signed distance of
/// X is asinh(<X, N>), positive on the side N points to.
struct Geodesic {
    Vec3<double> normal;

    /// Geodesic with ideal endpoints center -/+ half_width, oriented so the
    /// ideal arc around `center` lies on the positive side.
    static Geodesic from_endpoints(double center, double half_width) {
        const double d0 = std::acosh(1.0 / std::sin(half_width));
        return {Vec3<double>(std::sinh(d0), std::cosh(d0) * std::cos(center),
                             std::cosh(d0) * std::sin(center))};
    }

    double signed_distance(const Vec3<double>& x) const {
        return std::asinh(minkowski_dot(x, normal));
    }

    /// Distance from o to the geodesic.
    double distance_from_origin() const { return std::abs(std::asinh(normal(0))); }
};

/// Isometry taking `o_new` to the chart center, composed of a rotation to
/// the X1 axis, a boost, and the inverse rotation (so angles at o_new stay
/// aligned with the chart frame).
inline Eigen::Matrix3d recentering_isometry(const Vec3<double>& o_new) {
    const double a = polar_radius(o_new);
    const double beta = polar_angle(o_new);
    Eigen::Matrix3d rot = Eigen::Matrix3d::Identity();
    rot(1, 1) = std::cos(beta);
    rot(1, 2) = -std::sin(beta);
    rot(2, 1) = std::sin(beta);
    rot(2, 2) = std::cos(beta);
    Eigen::Matrix3d boost = Eigen::Matrix3d::Identity();
    boost(0, 0) = std::cosh(a);
    boost(0, 1) = -std::sinh(a);
    boost(1, 0) = -std::sinh(a);
    boost(1, 1) = std::cosh(a);
    return rot * boost * rot.transpose();
}

}  // namespace hypgraph

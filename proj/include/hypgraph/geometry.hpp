#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hypgraph/hyperbolic.hpp"

namespace hypgraph {

/// Closed-form warp families f(r) for dr^2 + f(r)^2 dsigma^2.
enum class WarpFamily {
    Hyperbolic,     ///< f = sinh r, K = -1
    ConstantCurv,   ///< f = sinh(k r)/k, K = -k^2
    SinhMixed,      ///< f = (1+a) sinh r - a r, radial K = -(1+a) sinh r / f
};

/// Rotationally symmetric model manifold with radial curvature -f''/f <= -1.
/// Immutable after construction; the constructor checks the warp invariants
/// on a sample grid of the working range (0, r_max].
class ModelManifold {
public:
    ModelManifold(int dimension, WarpFamily family, double parameter = 0.0, double r_max = 20.0);

    static ModelManifold hyperbolic(int dimension) { return ModelManifold(dimension, WarpFamily::Hyperbolic); }

    int dimension() const { return n_; }
    WarpFamily family() const { return family_; }
    double parameter() const { return param_; }
    double working_radius() const { return r_max_; }
    bool is_hyperbolic() const { return family_ == WarpFamily::Hyperbolic; }

    double warp(double r) const;
    double warp_d1(double r) const;
    double warp_d2(double r) const;

    /// -f''/f, the sectional curvature of planes containing the radial direction.
    double radial_curvature(double r) const;
    /// (1 - f'^2)/f^2, curvature of planes tangent to the geodesic sphere (n >= 3).
    double tangential_curvature(double r) const;
    /// Minimum sectional curvature at radius r.
    double min_curvature(double r) const;

    std::string id() const;

private:
    int n_;
    WarpFamily family_;
    double param_;
    double r_max_;
};

enum class ChartKind { GeodesicPolar, Fermi };

/// Coordinate realization (x1, x2) of the 2-D model.
/// Polar: ds^2 = dr^2 + f(r)^2 dtheta^2. Fermi (hyperbolic only): ds^2 = ds^2 + cosh^2(s) dt^2.
struct Chart {
    ChartKind kind = ChartKind::GeodesicPolar;

    /// Metric coefficients (g11, g22); the metric is diagonal in both charts.
    std::pair<double, double> metric(const ModelManifold& m, double x1) const;
    double volume_density(const ModelManifold& m, double x1) const;
    /// Hyperboloid point of chart coordinates (hyperbolic manifolds only).
    Vec3<double> to_hyperboloid(double x1, double x2) const;
};

enum class DistanceBase { Point, TotallyGeodesicHypersurface };

/// Laplacian of the distance to a point (or a totally geodesic hypersurface)
/// in the model manifold, at distance s > 0.
double laplacian_of_distance(const ModelManifold& m, DistanceBase base, double s);

/// Closed set of ideal directions, as polar angles about the chart center.
struct IdealSet {
    bool full_circle = false;
    std::vector<std::pair<double, double>> arcs;  ///< closed arcs [a, b], a <= b
    std::vector<double> points;

    bool contains(double angle, double tol = 1e-12) const;
    bool empty() const { return !full_circle && arcs.empty() && points.empty(); }
};

/// Connected piece of the finite boundary.
struct BoundaryPiece {
    std::string name;
    /// Mean curvature w.r.t. the normal pointing into the domain.
    std::function<double(const Vec3<double>&)> mean_curvature;
    /// Ideal angles where this piece reaches the ideal boundary.
    std::vector<double> ideal_endpoints;
    /// Far point of the piece approaching an ideal endpoint (for continuity checks).
    std::function<Vec3<double>(double endpoint, double depth)> approach;
};

enum class DomainKind { Full, HalfPlane, BallExterior, Disk, Horoball };

/// Region of the hyperbolic plane with its finite and ideal boundary.
/// Orientation convention: mean curvature is taken w.r.t. the normal into the domain.
struct DomainSpec {
    DomainKind kind = DomainKind::Full;
    ModelManifold manifold = ModelManifold::hyperbolic(2);
    Chart chart;
    double rho = 0.0;          ///< ball radius (BallExterior, Disk)
    double offset = 0.0;       ///< HalfPlane: domain is {s > offset} in the Fermi chart
    double horo_angle = 0.0;   ///< Horoball ideal point
    double horo_depth = 0.0;   ///< Horoball: Busemann level, domain is {b < -depth}
    std::vector<BoundaryPiece> finite_boundary;
    IdealSet ideal_boundary;

    static DomainSpec full(const ModelManifold& m);
    /// Ball-type domains are centered at the chart center o.
    static DomainSpec ball_exterior(const ModelManifold& m, double rho);
    static DomainSpec disk(const ModelManifold& m, double rho);
    /// {s > offset} for Fermi coordinates about the geodesic through o (hyperbolic plane only).
    static DomainSpec half_plane(double offset = 0.0);
    /// Horoball at ideal angle `angle`; its closest point to o is at signed distance `depth`.
    static DomainSpec horoball(double angle, double depth);

    bool contains(const Vec3<double>& x) const;
    /// Distance to the finite boundary (d in the barrier estimates); nullopt when there is none.
    std::optional<double> boundary_distance(const Vec3<double>& x) const;
    /// Laplacian of boundary_distance at x.
    double laplacian_of_boundary_distance(const Vec3<double>& x) const;

    std::string id() const;
};

/// Mean curvature of the finite boundary at y w.r.t. the inward normal.
/// Throws if y is not on a finite boundary piece (within `tol`).
double inward_mean_curvature(const DomainSpec& domain, const Vec3<double>& y, double tol = 1e-9);

/// True iff min curvature on B_{R+1} >= -exp(2kR)/R^(2+2 eps) at every sampled R in [R_star, R_max].
bool sc_decay_check(const ModelManifold& m, double k, double eps, double r_star, double r_max,
                    int samples = 200);

enum class WitnessKind { GeodesicHalfPlane, BallComplement };

/// Subdomain V of an ideal point x whose relative boundary has nonnegative
/// principal curvatures toward the rest of the domain, with the signed
/// distance s to that relative boundary (s > 0 inside V).
struct SCWitness {
    WitnessKind kind = WitnessKind::GeodesicHalfPlane;
    double ideal_angle = 0.0;
    std::optional<Geodesic> geodesic;  ///< GeodesicHalfPlane
    Vec3<double> ball_center = Vec3<double>(1, 0, 0);  ///< BallComplement
    double ball_radius = 0.0;
    double arc_half_width = 0.0;  ///< ideal arc of V about ideal_angle (GeodesicHalfPlane)
    DomainSpec domain;

    double distance(const Vec3<double>& x) const;
    bool contains(const Vec3<double>& x) const;
    /// Lower bound on the Laplacian of s available from curvature comparison.
    double laplacian_lower_bound(double s) const;
    DistanceBase base() const;
};

/// Constructive witness for cataloged domains. `half_width` is the angular
/// radius of the neighborhood W of x in the ideal boundary.
SCWitness sc_witness(const DomainSpec& domain, double ideal_angle, double half_width);

/// Smallest positive angular distance between two angles.
double angular_distance(double a, double b);

ModelManifold manifold_from_id(const std::string& id);
DomainSpec domain_from_id(const std::string& id, const ModelManifold& m);

}  // namespace hypgraph

#pragma once

#include <vector>

#include "hypgraph/boundary_data.hpp"
#include "hypgraph/solver.hpp"

namespace hypgraph {

/// Non-mean-convex domain with a boundary point y, the collar radius s and the
/// barrier constants; phi equals `amplitude` at y, tapers (cosine) to 0 at
/// arc length s along the boundary, and vanishes elsewhere.
struct CounterexampleSpec {
    DomainSpec domain;
    Vec3<double> y = Vec3<double>(1, 0, 0);
    double s = 1.0;
    double eps = 0.0;        ///< -H(y)/2
    double A = 0.0;          ///< min_barrier_constant(eps)
    double B = 0.0;          ///< universal_constant_B(n)
    double amplitude = 0.0;  ///< phi(y)
    BoundaryData phi;

    /// pi (A + B): the data height that cannot be attained.
    double critical_amplitude() const;
    /// A pi/2 + B pi/2 + sup of phi off B_s(y) (which is 0).
    double ceiling() const;
};

/// Builds the counterexample on a ball exterior or a half-plane {s > offset > 0}.
/// `amplitude_scale` multiplies phi(y) = pi (A + B) (1 for the counterexample, small for controls).
/// Throws if H(y) >= 0 or if Delta d > eps fails on the collar.
CounterexampleSpec build_counterexample(const DomainSpec& domain, std::optional<double> s_request = std::nullopt,
                                        double amplitude_scale = 1.0);

/// Same boundary taper and amplitude on the mean-convex disk of the exterior's radius.
CounterexampleSpec disk_control(const CounterexampleSpec& spec);

struct BarrierBound {
    double u_near_y = 0.0;        ///< max of u on interior nodes within two steps of y
    double trace_at_y = 0.0;      ///< quadratic extrapolation of u to y along the normal
    double sphere_sup = 0.0;      ///< sup of u on the sphere of radius s about y, inside the domain
    double outside_sup = 0.0;     ///< sup of the data off B_s(y)
    double ceiling = 0.0;
    double collar_violation = 0.0;   ///< max of u - (A psi(d) + sphere_sup) over collar nodes
    double exterior_violation = 0.0; ///< max of u - (B psi(r) + outside_sup) off the ball
    int collar_nodes = 0;
    int exterior_nodes = 0;
};

/// Lattice of the truncation at `radius` with step h, matched to the counterexample's domain.
Grid counterexample_grid(const CounterexampleSpec& spec, double radius, double h);

/// Reads the collar and sphere values of a solved field and evaluates both barrier fields nodewise.
BarrierBound jenkins_serrin_bound(const CounterexampleSpec& spec, const Grid& grid, const DiscreteField& field);

struct GapLevel {
    double h = 0.0;
    Grid grid;
    DiscreteField field;
    BarrierBound bound;
    double trace_error = 0.0;  ///< |trace_at_y - phi(y)|
};

struct GapReport {
    double amplitude = 0.0;
    double ceiling = 0.0;
    double radius = 0.0;
    std::vector<GapLevel> levels;
    bool gap_persists = false;       ///< phi(y) - u_near_y >= 25% of ceiling at every level
    bool attains_data = false;       ///< trace error <= attainment_tol at every level
    bool barriers_dominate = false;  ///< both violations <= 1e-6 at every level
};

GapReport run_gap_study(const CounterexampleSpec& spec, const std::vector<double>& steps, double radius = 8.0,
                        const SolveParams& params = {}, double attainment_tol = 5e-3);

}  // namespace hypgraph

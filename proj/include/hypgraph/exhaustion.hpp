#pragma once

#include <optional>
#include <vector>

#include "hypgraph/boundary_data.hpp"
#include "hypgraph/solver.hpp"

namespace hypgraph {

struct GridResolution {
    double h = 0.1;   ///< radial (or Fermi) step
    int angular = 0;  ///< polar nodes per ring; 0 picks about 2 pi f(max(rho, 1)) / h (a multiple of 4)
};

/// Bounded lattice for the truncation of the domain at radius R about the
/// chart center: a polar disk or annulus for ball-type domains, the Fermi box
/// [offset, R] x [-R, R] for half-planes. New boundary nodes are tagged as caps.
Grid truncate(const DomainSpec& domain, double radius, const GridResolution& resolution = {});

/// Axis-aligned box in chart coordinates; polar angle ranges wrap, a range of at least 2 pi is the full circle.
struct ProbeBox {
    double x1_min = 0.0;
    double x1_max = 1.0;
    double x2_min = 0.0;
    double x2_max = 7.0;

    bool contains(double x1, double x2, ChartKind chart) const;
};

struct ExhaustionSchedule {
    std::vector<double> radii;   ///< strictly increasing truncation radii
    std::vector<ProbeBox> probes;
    double theta_conv = 1e-6;    ///< Cauchy tolerance for the last two differences
    int burn_in = 0;             ///< differences skipped before checking monotone decrease
    GridResolution resolution;

    void validate(const DomainSpec& domain) const;
};

struct ExhaustionStage {
    double radius = 0.0;
    Grid grid;
    Eigen::VectorXd boundary_values;
    DiscreteField field;
};

struct AsymptoticReport {
    std::vector<ExhaustionStage> stages;
    /// differences[p][k]: max over probe p's nodes of |u_{k+1} - u_k|.
    std::vector<std::vector<double>> differences;
    bool monotone = false;
    bool converged = false;
};

/// Solves on each truncation in turn, seeding from the previous stage, and
/// records probe Cauchy differences between consecutive stages.
AsymptoticReport run_exhaustion(const DomainSpec& domain, const BoundaryData& phi, const ExhaustionSchedule& schedule,
                                const SolveParams& params = {});

struct AttainmentCertificate {
    double ideal_angle = 0.0;
    double half_width = 0.0;
    double eps = 0.0;        ///< twice the data deviation from phi(x) on the boundary inside V
    double height = 0.0;     ///< barrier cap C
    double measured_sup_error = 0.0;  ///< max |u - phi(x)| on nodes of V
    double barrier_bound = 0.0;       ///< eps + Sigma at the node attaining the smallest margin
    double min_margin = 0.0;          ///< min over V of eps + Sigma - |u - phi(x)|
    double slack = 0.0;
    int nodes_checked = 0;
    bool pass = false;
};

/// Checks |u - phi(x)| <= eps + Sigma on the final stage's nodes inside the
/// witness V of x. `height` defaults to max(osc phi, max |phi|) over the stage's boundary values.
AttainmentCertificate attainment_certificate(const AsymptoticReport& report, const DomainSpec& domain,
                                             const BoundaryData& phi, double ideal_angle, double half_width,
                                             std::optional<double> height = std::nullopt, double slack = 1e-3,
                                             const SolveParams& params = {});

}  // namespace hypgraph

#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "hypgraph/barriers.hpp"
#include "hypgraph/grid.hpp"

namespace hypgraph {

struct SolveParams {
    OperatorKind op = OperatorKind::MinimalSurface;
    double p = 2.0;                 ///< p-Laplace exponent
    double newton_tol = 1e-10;      ///< max over interior nodes of |M_h(u)|
    int max_iters = 100;            ///< Newton iterations per continuation stage
    int continuation_steps = 4;     ///< stages when the data is steep
    double steep_oscillation = 2.0; ///< boundary oscillation above which continuation is used
    int max_halvings = 40;
    double p_regularization = 1e-8; ///< delta in (|grad u|^2 + delta^2)^{(p-2)/2}

    void validate() const;
};

struct SolveMetadata {
    int iterations = 0;
    int continuation_stages = 0;
    double residual_norm = 0.0;
    double energy = 0.0;
    std::vector<double> energy_history;  ///< energy after each accepted step, per stage concatenated
    std::vector<int> stage_starts;       ///< offsets into energy_history where each stage begins
};

struct DiscreteField {
    Eigen::VectorXd values;
    SolveMetadata meta;
};

struct Residual {
    Eigen::VectorXd per_node;  ///< zero on boundary nodes
    double norm = 0.0;         ///< max over interior nodes
};

/// Riemannian area (minimal surface) or sum of |grad u|^p / p (p-Laplace) of the
/// piecewise-linear field.
double discrete_energy(const Grid& grid, const Eigen::VectorXd& values, OperatorKind op, double p = 2.0);

/// Discrete divergence-form operator: minus the energy gradient divided by the node's dual area.
Residual discrete_residual(const Grid& grid, const Eigen::VectorXd& values, OperatorKind op, double p = 2.0,
                           double p_regularization = 1e-8);

/// Laplace-Beltrami extension of the boundary values (one linear solve).
Eigen::VectorXd harmonic_extension(const Grid& grid, const Eigen::VectorXd& boundary_values);

/// Minimizes the discrete energy with the boundary nodes fixed to
/// `boundary_values` (interior entries are ignored) by damped Newton with
/// boundary-data continuation. An optional initial guess replaces the
/// harmonic extension. Throws NumericalFailure on non-convergence.
DiscreteField solve_dirichlet(const Grid& grid, const Eigen::VectorXd& boundary_values, const SolveParams& params,
                              const std::optional<Eigen::VectorXd>& initial_guess = std::nullopt);

}  // namespace hypgraph

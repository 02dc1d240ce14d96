#pragma once

#include <functional>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "hypgraph/geometry.hpp"
#include "hypgraph/grid.hpp"

namespace hypgraph {

/// Continuous data on the cone-topology boundary: a finite part evaluated at
/// boundary points and an ideal part evaluated at ideal angles (about the chart center).
struct BoundaryData {
    std::string name;
    std::function<double(const Vec3<double>&)> finite;
    std::function<double(double)> ideal;
    /// Optional continuous extension into the domain; when set, truncation-cap
    /// nodes take its value at the node instead of the ideal value of their direction.
    std::function<double(const Vec3<double>&)> extension;
    /// Angular window for linear blending at shared finite/ideal endpoints (0 = reject mismatches).
    double blending_window = 0.0;

    static BoundaryData constant(double c);
    /// Data given as a function of the polar angle of the point (finite part) or of the ideal point.
    static BoundaryData angular(std::string name, std::function<double(double)> f);
};

/// Named presets: "const:<v>", "cos", "step:<a>:<b>[,<a>:<b>...]", "table:<csv path>",
/// "g" (exact barrier solution g(s) on half-planes), "gp:<c>" (p = 2 analogue).
BoundaryData phi_preset(const std::string& spec, const DomainSpec& domain);

/// Nodewise Dirichlet values: finite-boundary nodes get the finite part at
/// their position; truncation-cap nodes get the ideal part at the ideal
/// endpoint of the ray from `cone_vertex` through the node. Interior entries are 0.
/// Throws DiscontinuousData when the two parts disagree at a shared ideal
/// endpoint and no blending window is configured.
Eigen::VectorXd transfer_boundary_data(const BoundaryData& phi, const Grid& grid, const DomainSpec& domain,
                                       const Vec3<double>& cone_vertex = Vec3<double>(1, 0, 0));

/// Ideal angle (about the chart center) of the ray from `vertex` through x.
double ideal_direction(const Vec3<double>& x, const Vec3<double>& vertex);

}  // namespace hypgraph

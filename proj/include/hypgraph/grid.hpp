#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "hypgraph/geometry.hpp"

namespace hypgraph {

enum class NodeTag { Interior, FiniteBoundary, TruncationCap };

struct Node {
    double x1 = 0.0;  ///< r (polar) or s (Fermi)
    double x2 = 0.0;  ///< theta (polar) or t (Fermi)
    Vec3<double> point = Vec3<double>(1, 0, 0);  ///< hyperboloid point; polar encoding for warped manifolds
    NodeTag tag = NodeTag::Interior;
};

/// Piecewise-linear gradient piece: a = gradient * u(nodes) gives the metric-
/// orthonormal gradient components, so |grad_g u|^2 = |a|^2 on the piece.
struct Element {
    std::array<int, 3> nodes{};
    Eigen::Matrix<double, 2, 3> gradient = Eigen::Matrix<double, 2, 3>::Zero();
    double weight = 0.0;  ///< Riemannian area carried by the piece
};

/// Structured lattice in polar or Fermi coordinates. Each coordinate cell is
/// split into four corner pieces (one per vertex, a quarter of the cell area
/// each); cells touching the polar center are triangles.
class Grid {
public:
    ChartKind chart = ChartKind::GeodesicPolar;
    ModelManifold manifold = ModelManifold::hyperbolic(2);
    std::vector<Node> nodes;
    std::vector<Element> elements;
    Eigen::VectorXd node_volume;  ///< dual-cell area per node
    int count1 = 0;               ///< nodes along x1 (rings or s-levels), center counted once
    int count2 = 0;               ///< nodes along x2
    bool has_center = false;
    double h1 = 0.0;
    double h2 = 0.0;

    int size() const { return static_cast<int>(nodes.size()); }
    /// Node index of lattice position (i, j); i = 0 is the center when has_center.
    int index(int i, int j) const;
    int interior_count() const;
    double total_area() const;
};

/// Polar lattice r in [r_inner, r_outer] with `radial` intervals and
/// `angular` periodic nodes. r_inner = 0 produces a center node.
Grid make_polar_grid(const ModelManifold& m, double r_inner, double r_outer, int radial, int angular,
                     NodeTag inner_tag, NodeTag outer_tag);

struct FermiSideTags {
    NodeTag s_low = NodeTag::FiniteBoundary;
    NodeTag s_high = NodeTag::TruncationCap;
    NodeTag t_sides = NodeTag::TruncationCap;
};

/// Bilinear interpolation of nodal values at chart coordinates (x1, x2);
/// polar angles wrap. Throws when the point lies outside the lattice.
double interpolate(const Grid& grid, const Eigen::VectorXd& values, double x1, double x2);
/// True iff (x1, x2) lies in the lattice's coordinate range.
bool covers(const Grid& grid, double x1, double x2, double tol = 1e-12);

/// Fermi lattice [s0, s1] x [t0, t1] in the hyperbolic plane. Corner nodes take the s-side tag.
Grid make_fermi_grid(double s0, double s1, double t0, double t1, int ns, int nt, FermiSideTags tags = {});

}  // namespace hypgraph

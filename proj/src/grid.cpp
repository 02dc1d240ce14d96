#include "hypgraph/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hypgraph/error.hpp"

namespace hypgraph {

namespace {

// Simpson's rule is ample here: the warp is smooth on a cell.
double integrate_warp(const ModelManifold& m, double a, double b) {
    if (b <= a) return 0.0;
    if (m.family() == WarpFamily::Hyperbolic) return std::cosh(b) - std::cosh(a);
    const double mid = 0.5 * (a + b);
    return (b - a) / 6.0 * (m.warp(a) + 4.0 * m.warp(mid) + m.warp(b));
}

Element corner_piece(int corner, int along1, int along2, double step1, double step2_metric, double weight) {
    Element e;
    e.nodes = {corner, along1, along2};
    e.gradient << -1.0 / step1, 1.0 / step1, 0.0,
                  -1.0 / step2_metric, 0.0, 1.0 / step2_metric;
    e.weight = weight;
    return e;
}

void add_cell(std::vector<Element>& out, int a, int b, int c, int d, double step1, double step2_metric, double area) {
    // a=(i,j) b=(i+1,j) c=(i,j+1) d=(i+1,j+1)
    const double w = 0.25 * area;
    out.push_back(corner_piece(a, b, c, step1, step2_metric, w));
    out.push_back(corner_piece(b, a, d, step1, step2_metric, w));
    out.push_back(corner_piece(c, d, a, step1, step2_metric, w));
    out.push_back(corner_piece(d, c, b, step1, step2_metric, w));
}

}  // namespace

int Grid::index(int i, int j) const {
    if (has_center) {
        if (i == 0) return 0;
        return 1 + (i - 1) * count2 + j;
    }
    return i * count2 + j;
}

int Grid::interior_count() const {
    int n = 0;
    for (const auto& node : nodes) n += node.tag == NodeTag::Interior;
    return n;
}

double Grid::total_area() const {
    double a = 0.0;
    for (const auto& e : elements) a += e.weight;
    return a;
}

Grid make_polar_grid(const ModelManifold& m, double r_inner, double r_outer, int radial, int angular,
                     NodeTag inner_tag, NodeTag outer_tag) {
    if (!(r_inner >= 0) || !(r_outer > r_inner)) throw InvalidArgument("make_polar_grid: need 0 <= r_inner < r_outer");
    if (radial < 2 || angular < 4) throw InvalidArgument("make_polar_grid: lattice too coarse");
    if (r_outer > m.working_radius()) throw InvalidArgument("make_polar_grid: radius beyond the manifold's working range");
    Grid g;
    g.chart = ChartKind::GeodesicPolar;
    g.manifold = m;
    g.has_center = (r_inner == 0.0);
    g.count1 = radial + 1;
    g.count2 = angular;
    g.h1 = (r_outer - r_inner) / radial;
    g.h2 = 2.0 * std::numbers::pi / angular;
    const double dr = g.h1;
    const double dth = g.h2;

    auto radius = [&](int i) { return i == radial ? r_outer : r_inner + i * dr; };
    auto tag_of = [&](int i) {
        if (i == radial) return outer_tag;
        if (i == 0 && !g.has_center) return inner_tag;
        return NodeTag::Interior;
    };
    if (g.has_center) g.nodes.push_back({0.0, 0.0, Vec3<double>(1, 0, 0), NodeTag::Interior});
    for (int i = g.has_center ? 1 : 0; i <= radial; ++i) {
        for (int j = 0; j < angular; ++j) {
            const double r = radius(i);
            const double th = j * dth;
            g.nodes.push_back({r, th, from_polar(r, th), tag_of(i)});
        }
    }

    g.node_volume = Eigen::VectorXd::Zero(g.size());
    if (g.has_center) g.node_volume(0) = 2.0 * std::numbers::pi * integrate_warp(m, 0.0, 0.5 * dr);
    for (int i = g.has_center ? 1 : 0; i <= radial; ++i) {
        const double r = radius(i);
        const double vol = dth * integrate_warp(m, std::max(r_inner, r - 0.5 * dr), std::min(r_outer, r + 0.5 * dr));
        for (int j = 0; j < angular; ++j) g.node_volume(g.index(i, j)) = vol;
    }

    for (int i = 0; i < radial; ++i) {
        const double ra = radius(i);
        const double rb = radius(i + 1);
        const double area = dth * integrate_warp(m, ra, rb);
        if (i == 0 && g.has_center) {
            // Linear pieces on tangent-plane triangles (0, P_j, P_{j+1}).
            for (int j = 0; j < angular; ++j) {
                const int jn = (j + 1) % angular;
                Eigen::Matrix2d edges;
                edges << rb * std::cos(j * dth), rb * std::sin(j * dth),
                         rb * std::cos((j + 1) * dth), rb * std::sin((j + 1) * dth);
                Eigen::Matrix<double, 2, 3> diff;
                diff << -1, 1, 0,
                        -1, 0, 1;
                Element e;
                e.nodes = {0, g.index(1, j), g.index(1, jn)};
                e.gradient = edges.inverse() * diff;
                e.weight = area;
                g.elements.push_back(e);
            }
            continue;
        }
        const double f_mid = m.warp(0.5 * (ra + rb));
        for (int j = 0; j < angular; ++j) {
            const int jn = (j + 1) % angular;
            add_cell(g.elements, g.index(i, j), g.index(i + 1, j), g.index(i, jn), g.index(i + 1, jn), dr,
                     dth * f_mid, area);
        }
    }
    return g;
}

Grid make_fermi_grid(double s0, double s1, double t0, double t1, int ns, int nt, FermiSideTags tags) {
    if (!(s1 > s0) || !(t1 > t0)) throw InvalidArgument("make_fermi_grid: empty coordinate box");
    if (ns < 2 || nt < 2) throw InvalidArgument("make_fermi_grid: lattice too coarse");
    Grid g;
    g.chart = ChartKind::Fermi;
    g.manifold = ModelManifold::hyperbolic(2);
    g.count1 = ns + 1;
    g.count2 = nt + 1;
    g.h1 = (s1 - s0) / ns;
    g.h2 = (t1 - t0) / nt;
    auto s_of = [&](int i) { return i == ns ? s1 : s0 + i * g.h1; };
    auto t_of = [&](int j) { return j == nt ? t1 : t0 + j * g.h2; };
    for (int i = 0; i <= ns; ++i) {
        for (int j = 0; j <= nt; ++j) {
            NodeTag tag = NodeTag::Interior;
            if (j == 0 || j == nt) tag = tags.t_sides;
            if (i == 0) tag = tags.s_low;
            if (i == ns) tag = tags.s_high;
            const double s = s_of(i);
            const double t = t_of(j);
            g.nodes.push_back({s, t, from_fermi(s, t), tag});
        }
    }
    g.node_volume = Eigen::VectorXd::Zero(g.size());
    for (int i = 0; i <= ns; ++i) {
        const double sa = std::max(s0, s_of(i) - 0.5 * g.h1);
        const double sb = std::min(s1, s_of(i) + 0.5 * g.h1);
        for (int j = 0; j <= nt; ++j) {
            const double dt = std::min(t1, t_of(j) + 0.5 * g.h2) - std::max(t0, t_of(j) - 0.5 * g.h2);
            g.node_volume(g.index(i, j)) = dt * (std::sinh(sb) - std::sinh(sa));
        }
    }
    for (int i = 0; i < ns; ++i) {
        const double sa = s_of(i);
        const double sb = s_of(i + 1);
        const double c_mid = std::cosh(0.5 * (sa + sb));
        for (int j = 0; j < nt; ++j) {
            const double dt = t_of(j + 1) - t_of(j);
            const double area = dt * (std::sinh(sb) - std::sinh(sa));
            add_cell(g.elements, g.index(i, j), g.index(i + 1, j), g.index(i, j + 1), g.index(i + 1, j + 1),
                     sb - sa, dt * c_mid, area);
        }
    }
    return g;
}

}  // namespace hypgraph

namespace hypgraph {

namespace {

struct Extent {
    double x1_lo, x1_hi, x2_lo, x2_hi;
};

Extent extent(const Grid& g) {
    const Node& first = g.nodes.front();
    const Node& last = g.nodes.back();
    if (g.chart == ChartKind::GeodesicPolar) return {first.x1, last.x1, 0.0, 2.0 * std::numbers::pi};
    return {first.x1, last.x1, first.x2, last.x2};
}

}  // namespace

bool covers(const Grid& grid, double x1, double x2, double tol) {
    const Extent e = extent(grid);
    if (x1 < e.x1_lo - tol || x1 > e.x1_hi + tol) return false;
    if (grid.chart == ChartKind::GeodesicPolar) return true;
    return x2 >= e.x2_lo - tol && x2 <= e.x2_hi + tol;
}

double interpolate(const Grid& grid, const Eigen::VectorXd& values, double x1, double x2) {
    if (!covers(grid, x1, x2, 1e-9)) throw InvalidArgument("interpolate: point outside the lattice");
    const Extent e = extent(grid);
    const double a = std::clamp((x1 - e.x1_lo) / grid.h1, 0.0, double(grid.count1 - 1));
    const int i = std::min(static_cast<int>(a), grid.count1 - 2);
    const double fa = a - i;
    if (grid.chart == ChartKind::GeodesicPolar) {
        double th = std::fmod(x2, 2.0 * std::numbers::pi);
        if (th < 0) th += 2.0 * std::numbers::pi;
        const double b = th / grid.h2;
        const int j = std::min(static_cast<int>(b), grid.count2 - 1);
        const double fb = b - j;
        const int jn = (j + 1) % grid.count2;
        auto ring = [&](int k) {
            if (grid.has_center && k == 0) return values(0);
            return (1.0 - fb) * values(grid.index(k, j)) + fb * values(grid.index(k, jn));
        };
        return (1.0 - fa) * ring(i) + fa * ring(i + 1);
    }
    const double b = std::clamp((x2 - e.x2_lo) / grid.h2, 0.0, double(grid.count2 - 1));
    const int j = std::min(static_cast<int>(b), grid.count2 - 2);
    const double fb = b - j;
    auto at = [&](int k, int l) { return values(grid.index(k, l)); };
    return (1.0 - fa) * ((1.0 - fb) * at(i, j) + fb * at(i, j + 1)) + fa * ((1.0 - fb) * at(i + 1, j) + fb * at(i + 1, j + 1));
}

}  // namespace hypgraph

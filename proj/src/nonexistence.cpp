#include "hypgraph/nonexistence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hypgraph/barriers.hpp"
#include "hypgraph/error.hpp"

namespace hypgraph {

namespace {

constexpr double kPi = std::numbers::pi;

// Arc length along the boundary from y, and the boundary point at signed arc length l.
double boundary_arc(const DomainSpec& d, const Vec3<double>& x) {
    if (d.kind == DomainKind::HalfPlane) return std::cosh(d.offset) * std::abs(std::atanh(x(1) / x(0)));
    return d.manifold.warp(d.rho) * angular_distance(polar_angle(x), 0.0);
}

double taper(double arc, double s) { return arc >= s ? 0.0 : 0.5 * (1.0 + std::cos(kPi * arc / s)); }

BoundaryData taper_data(const DomainSpec& domain, double amplitude, double s) {
    BoundaryData b;
    b.name = "counterexample";
    b.finite = [domain, amplitude, s](const Vec3<double>& x) { return amplitude * taper(boundary_arc(domain, x), s); };
    b.ideal = [](double) { return 0.0; };
    return b;
}

std::pair<double, double> chart_of(ChartKind chart, const Vec3<double>& x) {
    if (chart == ChartKind::Fermi) return {std::asinh(x(2)), std::atanh(x(1) / x(0))};
    return {polar_radius(x), polar_angle(x)};
}

int polar_steps(double length, double h) { return std::max(2, static_cast<int>(std::lround(length / h))); }

int polar_angular(const DomainSpec& d, double h) {
    return 4 * std::max(1, static_cast<int>(std::ceil(2.0 * kPi * d.manifold.warp(d.rho) / h / 4.0)));
}

}  // namespace

double CounterexampleSpec::critical_amplitude() const { return kPi * (A + B); }

double CounterexampleSpec::ceiling() const { return A * kPi / 2 + B * kPi / 2 + 0.0; }

CounterexampleSpec build_counterexample(const DomainSpec& domain, std::optional<double> s_request,
                                        double amplitude_scale) {
    if (!domain.manifold.is_hyperbolic() || domain.manifold.dimension() != 2)
        throw InvalidArgument("build_counterexample: counterexamples are gridded in the hyperbolic plane");
    if (!(amplitude_scale > 0)) throw InvalidArgument("build_counterexample: amplitude scale must be positive");
    CounterexampleSpec spec;
    spec.domain = domain;
    switch (domain.kind) {
        case DomainKind::BallExterior: spec.y = from_polar(domain.rho, 0.0); break;
        case DomainKind::HalfPlane: spec.y = from_fermi(domain.offset, 0.0); break;
        case DomainKind::Full: throw InvalidArgument("build_counterexample: domain has no finite boundary");
        default: throw InvalidArgument("build_counterexample: no boundary point with negative mean curvature");
    }
    const double H = inward_mean_curvature(domain, spec.y);
    if (!(H < 0)) throw InvalidArgument("build_counterexample: no boundary point with negative mean curvature");
    spec.eps = -H / 2.0;

    // Delta d is monotone in d for both shapes, so checking along the normal suffices.
    auto delta_d_ok = [&](double s) {
        for (int i = 1; i <= 400; ++i) {
            const double d = s * i / 400.0;
            const Vec3<double> x = domain.kind == DomainKind::HalfPlane ? from_fermi(domain.offset + d, 0.0)
                                                                        : from_polar(domain.rho + d, 0.0);
            if (!(domain.laplacian_of_boundary_distance(x) > spec.eps)) return false;
        }
        return true;
    };
    if (s_request) {
        if (!(*s_request > 0)) throw InvalidArgument("build_counterexample: s must be positive");
        if (!delta_d_ok(*s_request))
            throw InvalidArgument("build_counterexample: Delta d > eps fails on the requested collar");
        spec.s = *s_request;
    } else {
        spec.s = 1.0;
        while (!delta_d_ok(spec.s)) {
            spec.s *= 0.5;
            if (spec.s < 1e-6) throw InvalidArgument("build_counterexample: no admissible collar radius");
        }
    }
    spec.A = min_barrier_constant(spec.eps);
    spec.B = universal_constant_B(domain.manifold.dimension());
    spec.amplitude = amplitude_scale * spec.critical_amplitude();
    spec.phi = taper_data(domain, spec.amplitude, spec.s);
    return spec;
}

CounterexampleSpec disk_control(const CounterexampleSpec& spec) {
    if (spec.domain.kind != DomainKind::BallExterior)
        throw InvalidArgument("disk_control: control is defined for ball exteriors");
    CounterexampleSpec c = spec;
    c.domain = DomainSpec::disk(spec.domain.manifold, spec.domain.rho);
    c.phi = taper_data(c.domain, c.amplitude, c.s);
    return c;
}

Grid counterexample_grid(const CounterexampleSpec& spec, double radius, double h) {
    const DomainSpec& d = spec.domain;
    switch (d.kind) {
        case DomainKind::BallExterior:
            if (!(radius > d.rho + spec.s)) throw InvalidArgument("counterexample grid: radius must exceed rho + s");
            return make_polar_grid(d.manifold, d.rho, radius, polar_steps(radius - d.rho, h), polar_angular(d, h),
                                   NodeTag::FiniteBoundary, NodeTag::TruncationCap);
        case DomainKind::Disk:
            return make_polar_grid(d.manifold, 0.0, d.rho, polar_steps(d.rho, h), polar_angular(d, h),
                                   NodeTag::Interior, NodeTag::FiniteBoundary);
        case DomainKind::HalfPlane: {
            if (!(radius > d.offset + spec.s)) throw InvalidArgument("counterexample grid: radius must exceed offset + s");
            const int nt = 2 * polar_steps(radius, h);
            return make_fermi_grid(d.offset, radius, -radius, radius, polar_steps(radius - d.offset, h), nt);
        }
        default: break;
    }
    throw InvalidArgument("counterexample grid: unsupported domain");
}

BarrierBound jenkins_serrin_bound(const CounterexampleSpec& spec, const Grid& grid, const DiscreteField& field) {
    if (field.values.size() != grid.size()) throw InvalidArgument("jenkins_serrin_bound: field does not match grid");
    const DomainSpec& d = spec.domain;
    const bool is_disk = d.kind == DomainKind::Disk;
    if ((grid.chart == ChartKind::Fermi) != (d.kind == DomainKind::HalfPlane))
        throw InvalidArgument("jenkins_serrin_bound: grid chart does not match the domain");
    const Eigen::VectorXd& u = field.values;
    BarrierBound out;
    out.ceiling = spec.ceiling();

    // Nodes next to y and the trace along the inward normal.
    const double step = grid.h1;
    out.u_near_y = -HUGE_VAL;
    for (int i = 0; i < grid.size(); ++i) {
        if (grid.nodes[i].tag != NodeTag::Interior) continue;
        if (distance(grid.nodes[i].point, spec.y) <= 2.0 * step * (1.0 + 1e-9)) out.u_near_y = std::max(out.u_near_y, u(i));
    }
    const int j0 = grid.chart == ChartKind::Fermi ? (grid.count2 - 1) / 2 : 0;
    auto along = [&](int k) {
        const int i = is_disk ? grid.count1 - 1 - k : k;
        return u(grid.index(i, j0));
    };
    out.trace_at_y = 3.0 * along(1) - 3.0 * along(2) + along(3);

    // Sup over the sphere of radius s about y, inside the domain.
    const Eigen::Matrix3d T = recentering_isometry(spec.y);
    const Eigen::Matrix3d eta = Eigen::Vector3d(-1, 1, 1).asDiagonal();
    const Eigen::Matrix3d Tinv = eta * T.transpose() * eta;
    out.sphere_sup = -HUGE_VAL;
    for (int k = 0; k < 4096; ++k) {
        const Vec3<double> p = Tinv * from_polar(spec.s, 2.0 * kPi * k / 4096);
        if (!d.contains(p)) continue;
        const auto [x1, x2] = chart_of(grid.chart, p);
        if (!covers(grid, x1, x2)) continue;
        out.sphere_sup = std::max(out.sphere_sup, interpolate(grid, u, x1, x2));
    }
    if (out.sphere_sup == -HUGE_VAL) throw InvalidArgument("jenkins_serrin_bound: sphere about y misses the grid");

    out.outside_sup = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
        const Node& node = grid.nodes[i];
        if (node.tag != NodeTag::Interior && distance(node.point, spec.y) > spec.s)
            out.outside_sup = std::max(out.outside_sup, u(i));
    }
    out.collar_violation = -HUGE_VAL;
    out.exterior_violation = -HUGE_VAL;
    for (int i = 0; i < grid.size(); ++i) {
        const Node& node = grid.nodes[i];
        const double dist_y = distance(node.point, spec.y);
        const double dd = *d.boundary_distance(node.point);
        if (dist_y < spec.s && dd > 1e-12 && dd < spec.s) {
            const double w = spec.A * psi_eval(dd).value + out.sphere_sup;
            out.collar_violation = std::max(out.collar_violation, u(i) - w);
            ++out.collar_nodes;
        } else if (dist_y > spec.s) {
            const double v = spec.B * psi_eval(dist_y - spec.s).value + out.outside_sup;
            out.exterior_violation = std::max(out.exterior_violation, u(i) - v);
            ++out.exterior_nodes;
        }
    }
    return out;
}

GapReport run_gap_study(const CounterexampleSpec& spec, const std::vector<double>& steps, double radius,
                        const SolveParams& params, double attainment_tol) {
    if (steps.empty()) throw InvalidArgument("run_gap_study: no refinement levels");
    GapReport report;
    report.amplitude = spec.amplitude;
    report.ceiling = spec.ceiling();
    report.radius = radius;
    report.gap_persists = report.attains_data = report.barriers_dominate = true;
    for (double h : steps) {
        if (!(h > 0)) throw InvalidArgument("run_gap_study: mesh sizes must be positive");
        GapLevel level;
        level.h = h;
        level.grid = counterexample_grid(spec, radius, h);
        const Eigen::VectorXd bvals = transfer_boundary_data(spec.phi, level.grid, spec.domain);
        level.field = solve_dirichlet(level.grid, bvals, params);
        level.bound = jenkins_serrin_bound(spec, level.grid, level.field);
        level.trace_error = std::abs(level.bound.trace_at_y - spec.amplitude);
        if (spec.amplitude - level.bound.u_near_y < 0.25 * report.ceiling) report.gap_persists = false;
        if (level.trace_error > attainment_tol) report.attains_data = false;
        if (level.bound.collar_violation > 1e-6 || level.bound.exterior_violation > 1e-6)
            report.barriers_dominate = false;
        report.levels.push_back(std::move(level));
    }
    return report;
}

}  // namespace hypgraph

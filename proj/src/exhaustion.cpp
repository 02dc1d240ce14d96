#include "hypgraph/exhaustion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hypgraph/error.hpp"

namespace hypgraph {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int auto_angular(const DomainSpec& domain, const GridResolution& res) {
    if (res.angular > 0) return res.angular;
    const double r_ref = std::max(domain.rho, 1.0);
    const int n = static_cast<int>(std::ceil(kTwoPi * domain.manifold.warp(r_ref) / res.h / 4.0));
    return std::max(4, 4 * n);
}

int steps(double length, double h) { return std::max(2, static_cast<int>(std::lround(length / h))); }

}  // namespace

Grid truncate(const DomainSpec& domain, double radius, const GridResolution& res) {
    if (!(res.h > 0)) throw InvalidArgument("truncate: step must be positive");
    if (!(radius > 0)) throw InvalidArgument("truncate: radius must be positive");
    if (radius > domain.manifold.working_radius())
        throw InvalidArgument("truncate: radius beyond the chart's working range");
    const ModelManifold& m = domain.manifold;
    switch (domain.kind) {
        case DomainKind::Full:
            return make_polar_grid(m, 0.0, radius, steps(radius, res.h), auto_angular(domain, res), NodeTag::Interior,
                                   NodeTag::TruncationCap);
        case DomainKind::BallExterior:
            if (radius <= domain.rho) throw InvalidArgument("truncate: truncation of the ball exterior is empty");
            return make_polar_grid(m, domain.rho, radius, steps(radius - domain.rho, res.h), auto_angular(domain, res),
                                   NodeTag::FiniteBoundary, NodeTag::TruncationCap);
        case DomainKind::Disk: {
            const bool whole = radius >= domain.rho;
            const double r = std::min(radius, domain.rho);
            return make_polar_grid(m, 0.0, r, steps(r, res.h), auto_angular(domain, res), NodeTag::Interior,
                                   whole ? NodeTag::FiniteBoundary : NodeTag::TruncationCap);
        }
        case DomainKind::HalfPlane:
            if (radius <= domain.offset) throw InvalidArgument("truncate: truncation of the half-plane is empty");
            return make_fermi_grid(domain.offset, radius, -radius, radius, steps(radius - domain.offset, res.h),
                                   steps(2.0 * radius, res.h));
        case DomainKind::Horoball: break;
    }
    throw InvalidArgument("truncate: horoball domains are not gridded");
}

bool ProbeBox::contains(double x1, double x2, ChartKind chart) const {
    if (x1 < x1_min - 1e-12 || x1 > x1_max + 1e-12) return false;
    if (chart == ChartKind::GeodesicPolar) {
        if (x2_max - x2_min >= kTwoPi) return true;
        double off = std::fmod(x2 - x2_min, kTwoPi);
        if (off < 0) off += kTwoPi;
        return off <= x2_max - x2_min + 1e-12;
    }
    return x2 >= x2_min - 1e-12 && x2 <= x2_max + 1e-12;
}

void ExhaustionSchedule::validate(const DomainSpec& domain) const {
    if (radii.empty()) throw InvalidArgument("exhaustion: empty radius schedule");
    for (std::size_t k = 1; k < radii.size(); ++k)
        if (!(radii[k] > radii[k - 1])) throw InvalidArgument("exhaustion: radii must be strictly increasing");
    if (!(theta_conv > 0)) throw InvalidArgument("exhaustion: theta_conv must be positive");
    if (burn_in < 0) throw InvalidArgument("exhaustion: burn_in must be nonnegative");
    const double r0 = radii.front();
    for (const auto& p : probes) {
        if (!(p.x1_max >= p.x1_min) || !(p.x2_max >= p.x2_min)) throw InvalidArgument("exhaustion: empty probe box");
        bool inside = true;
        switch (domain.kind) {
            case DomainKind::Full: inside = p.x1_min >= 0 && p.x1_max <= r0; break;
            case DomainKind::BallExterior: inside = p.x1_min >= domain.rho && p.x1_max <= r0; break;
            case DomainKind::Disk: inside = p.x1_min >= 0 && p.x1_max <= std::min(r0, domain.rho); break;
            case DomainKind::HalfPlane:
                inside = p.x1_min >= domain.offset && p.x1_max <= r0 && p.x2_min >= -r0 && p.x2_max <= r0;
                break;
            case DomainKind::Horoball: inside = false; break;
        }
        if (!inside) throw InvalidArgument("exhaustion: probe box not contained in the smallest truncation");
    }
}

AsymptoticReport run_exhaustion(const DomainSpec& domain, const BoundaryData& phi, const ExhaustionSchedule& schedule,
                                const SolveParams& params) {
    schedule.validate(domain);
    params.validate();
    AsymptoticReport report;
    report.differences.assign(schedule.probes.size(), {});
    for (double R : schedule.radii) {
        ExhaustionStage stage;
        stage.radius = R;
        stage.grid = truncate(domain, R, schedule.resolution);
        stage.boundary_values = transfer_boundary_data(phi, stage.grid, domain);
        std::optional<Eigen::VectorXd> seed;
        if (!report.stages.empty()) {
            const ExhaustionStage& prev = report.stages.back();
            Eigen::VectorXd guess = harmonic_extension(stage.grid, stage.boundary_values);
            for (int i = 0; i < stage.grid.size(); ++i) {
                const Node& node = stage.grid.nodes[i];
                if (node.tag == NodeTag::Interior && covers(prev.grid, node.x1, node.x2))
                    guess(i) = interpolate(prev.grid, prev.field.values, node.x1, node.x2);
            }
            seed = guess;
        }
        stage.field = solve_dirichlet(stage.grid, stage.boundary_values, params, seed);
        if (!report.stages.empty()) {
            const ExhaustionStage& prev = report.stages.back();
            for (std::size_t p = 0; p < schedule.probes.size(); ++p) {
                double diff = 0.0;
                for (int i = 0; i < stage.grid.size(); ++i) {
                    const Node& node = stage.grid.nodes[i];
                    if (!schedule.probes[p].contains(node.x1, node.x2, stage.grid.chart)) continue;
                    diff = std::max(diff, std::abs(stage.field.values(i) -
                                                   interpolate(prev.grid, prev.field.values, node.x1, node.x2)));
                }
                report.differences[p].push_back(diff);
            }
        }
        report.stages.push_back(std::move(stage));
    }

    report.monotone = true;
    report.converged = !schedule.probes.empty() && schedule.radii.size() >= 3;
    for (const auto& d : report.differences) {
        for (std::size_t k = schedule.burn_in + 1; k < d.size(); ++k)
            if (d[k] > d[k - 1] * (1.0 + 1e-9) + 1e-14) report.monotone = false;
        if (d.size() >= 2 && (d[d.size() - 1] > schedule.theta_conv || d[d.size() - 2] > schedule.theta_conv))
            report.converged = false;
    }
    return report;
}

AttainmentCertificate attainment_certificate(const AsymptoticReport& report, const DomainSpec& domain,
                                             const BoundaryData& phi, double ideal_angle, double half_width,
                                             std::optional<double> height, double slack, const SolveParams& params) {
    if (report.stages.empty()) throw InvalidArgument("attainment_certificate: no stages");
    const ExhaustionStage& last = report.stages.back();
    const Grid& grid = last.grid;
    const SCWitness witness = sc_witness(domain, ideal_angle, half_width);

    double lo = HUGE_VAL, hi = -HUGE_VAL;
    for (int i = 0; i < grid.size(); ++i) {
        if (grid.nodes[i].tag == NodeTag::Interior) continue;
        lo = std::min(lo, last.boundary_values(i));
        hi = std::max(hi, last.boundary_values(i));
    }
    const double max_abs = std::max(std::abs(lo), std::abs(hi));
    const double C = height.value_or(std::max(hi - lo, max_abs));
    if (C < max_abs) throw InvalidArgument("attainment_certificate: height must be at least max |phi|");

    AttainmentCertificate cert;
    cert.ideal_angle = ideal_angle;
    cert.half_width = witness.arc_half_width;
    cert.height = C;
    cert.slack = slack;

    const double target = phi.ideal(ideal_angle);
    double dev = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
        if (grid.nodes[i].tag == NodeTag::Interior || !witness.contains(grid.nodes[i].point)) continue;
        dev = std::max(dev, std::abs(last.boundary_values(i) - target));
    }
    cert.eps = 2.0 * dev;

    const UpperBarrier sigma = upper_barrier_field(witness, C, params.op, params.p);
    cert.min_margin = HUGE_VAL;
    for (int i = 0; i < grid.size(); ++i) {
        if (!witness.contains(grid.nodes[i].point)) continue;
        const double err = std::abs(last.field.values(i) - target);
        const double bound = cert.eps + sigma(grid.nodes[i].point);
        cert.measured_sup_error = std::max(cert.measured_sup_error, err);
        if (bound - err < cert.min_margin) {
            cert.min_margin = bound - err;
            cert.barrier_bound = bound;
        }
        ++cert.nodes_checked;
    }
    if (cert.nodes_checked == 0) throw InvalidArgument("attainment_certificate: no stage nodes inside the witness");
    cert.pass = cert.min_margin >= -slack;
    return cert;
}

}  // namespace hypgraph

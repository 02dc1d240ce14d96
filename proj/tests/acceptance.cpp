// Acceptance suite: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "hypgraph/barriers.hpp"
#include "hypgraph/config.hpp"
#include "hypgraph/exhaustion.hpp"
#include "hypgraph/nonexistence.hpp"

using namespace hypgraph;

namespace {

constexpr double kPi = std::numbers::pi;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass;
    std::string detail;
};

double log_coth_half(double s) { return std::log(1.0 / std::tanh(s / 2)); }

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

Outcome fermi_rectangle() {
    const double hs[] = {0.1, 0.05, 0.025};
    double err[3], worst_time = 0.0;
    for (int k = 0; k < 3; ++k) {
        const auto t0 = Clock::now();
        const int ns = static_cast<int>(std::lround(4.5 / hs[k])), nt = static_cast<int>(std::lround(6.0 / hs[k]));
        const Grid grid = make_fermi_grid(0.5, 5.0, -3.0, 3.0, ns, nt);
        Eigen::VectorXd b = Eigen::VectorXd::Zero(grid.size());
        for (int i = 0; i < grid.size(); ++i)
            if (grid.nodes[i].tag != NodeTag::Interior) b(i) = log_coth_half(grid.nodes[i].x1);
        const DiscreteField f = solve_dirichlet(grid, b, {});
        err[k] = 0.0;
        for (int i = 0; i < grid.size(); ++i)
            err[k] = std::max(err[k], std::abs(f.values(i) - log_coth_half(grid.nodes[i].x1)));
        worst_time = std::max(worst_time, seconds_since(t0));
    }
    // Least-squares slope of log err against log h.
    double mx = 0, my = 0;
    for (int k = 0; k < 3; ++k) mx += std::log(hs[k]) / 3, my += std::log(err[k]) / 3;
    double sxy = 0, sxx = 0;
    for (int k = 0; k < 3; ++k) {
        sxy += (std::log(hs[k]) - mx) * (std::log(err[k]) - my);
        sxx += (std::log(hs[k]) - mx) * (std::log(hs[k]) - mx);
    }
    const double order = sxy / sxx;
    const bool pass = err[1] <= 5e-3 && order >= 1.8 && worst_time <= 60.0;
    return {pass, fmt("err(h=0.05)=%.3e", err[1]) + fmt(" order=%.3f", order) + fmt(" max_level_time=%.2fs", worst_time)};
}

// g for n = 2, 3, 4 from closed-form derivatives: g' = -1/sqrt(c^{2m} - 1), m = n - 1.
double radial_residual_oracle(int n, double s, double lap) {
    const double m = n - 1, c = std::cosh(s), sh = std::sinh(s);
    const double w = std::pow(c, 2 * m) - 1.0;
    const double d1 = -1.0 / std::sqrt(w);
    const double d2 = m * std::pow(c, 2 * m - 1) * sh / std::pow(w, 1.5);
    const double W = 1.0 + d1 * d1;
    return d2 / std::pow(W, 1.5) + d1 / std::sqrt(W) * lap;
}

Outcome g_residual() {
    double worst = 0.0, worst_oracle = 0.0, max_excess_residual = -HUGE_VAL;
    for (int n : {2, 3, 4}) {
        for (int i = 0; i <= 400; ++i) {
            const double s = 0.1 + 9.9 * i / 400.0;
            const double lap = (n - 1) * std::tanh(s);
            worst = std::max(worst, std::abs(radial_supersolution_residual(BarrierProfile::g(n), OperatorKind::MinimalSurface, lap, s)));
            if (s < 6) worst_oracle = std::max(worst_oracle, std::abs(radial_residual_oracle(n, s, lap)));
            // excess 0 is the identity case, covered by the residual bound above
            for (int j = 1; j <= 50; ++j) {
                const double excess = 5.0 * j / 50.0;
                max_excess_residual = std::max(
                    max_excess_residual,
                    radial_supersolution_residual(BarrierProfile::g(n), OperatorKind::MinimalSurface, lap + excess, s));
            }
        }
    }
    const bool pass = worst <= 1e-10 && max_excess_residual <= 0.0 && worst_oracle <= 1e-8;
    return {pass, fmt("max|residual|=%.3e", worst) + fmt(" max residual with excess=%.3e", max_excess_residual) +
                      fmt(" closed-form residual=%.3e", worst_oracle)};
}

// A_min^2 = max_{t>=0} Q(t)/eps, located through the real roots of Q'.
double a_min_oracle(double eps) {
    const double c4 = -eps, c3 = 2 - 4 * eps, c2 = 6 - 5 * eps, c1 = 5 - 2 * eps, c0 = 1;
    auto Q = [&](double t) { return (((c4 * t + c3) * t + c2) * t + c1) * t + c0; };
    Eigen::Matrix3d C = Eigen::Matrix3d::Zero();
    C(1, 0) = C(2, 1) = 1.0;
    C(0, 2) = -c1 / (4 * c4);
    C(1, 2) = -2 * c2 / (4 * c4);
    C(2, 2) = -3 * c3 / (4 * c4);
    const Eigen::Vector3cd roots = C.eigenvalues();
    double best = Q(0.0);
    for (int i = 0; i < 3; ++i)
        if (std::abs(roots(i).imag()) < 1e-9 && roots(i).real() > 0) best = std::max(best, Q(roots(i).real()));
    return std::sqrt(best / eps);
}

Outcome constant_sharpness() {
    bool pass = true;
    double worst_oracle = 0.0;
    for (double eps : {0.25, 0.5, 1.0, 2.0}) {
        const double A = min_barrier_constant(eps);
        worst_oracle = std::max(worst_oracle, std::abs(A - a_min_oracle(eps)));
        bool upper = true, lower = false;
        const double t_max = std::max(200.0, 3.0 / eps);
        for (int i = 0; i <= 400000; ++i) {
            const double t = t_max * i / 400000.0;
            upper = upper && barrier_polynomial(t, eps, A + 1e-3) < 0;
            lower = lower || barrier_polynomial(t, eps, A - 1e-3) > 0;
        }
        pass = pass && upper && lower && A > 1.0 / std::sqrt(eps);
    }
    double spread = 0.0;
    const double a1 = min_barrier_constant(1.0, 0);
    for (unsigned seed = 1; seed <= 20; ++seed) spread = std::max(spread, std::abs(min_barrier_constant(1.0, seed) - a1));
    pass = pass && spread <= 1e-6 && worst_oracle <= 1e-8;
    return {pass, fmt("A_min(1)=%.9f", a1) + fmt(" seed spread=%.2e", spread) + fmt(" |A-oracle|=%.2e", worst_oracle)};
}

Outcome gp_residual() {
    double worst = 0.0;
    const std::pair<int, double> cases[] = {{2, 2.0}, {3, 2.0}, {2, 3.0}, {3, 1.5}};
    for (const auto& [n, p] : cases) {
        for (int i = 0; i <= 400; ++i) {
            const double s = 0.1 + 9.9 * i / 400.0;
            worst = std::max(worst, std::abs(radial_supersolution_residual(BarrierProfile::gp(n, p, 1.0), OperatorKind::PLaplace,
                                                                           (n - 1) * std::tanh(s), s)));
        }
    }
    const double at_zero = gp_eval(2, 2.0, 1.0, 0.0).value;
    const bool pass = worst <= 1e-10 && std::abs(at_zero - kPi / 2) <= 1e-8;
    return {pass, fmt("max|residual|=%.3e", worst) + fmt(" g_p(0)-pi/2=%.2e", at_zero - kPi / 2)};
}

// Random low-order trigonometric data in the polar angle, plus a radial tilt.
struct RandomData {
    double c0, tilt, a[4], b[4];
    double operator()(const Node& n) const {
        const double th = polar_angle(n.point);
        double v = c0 + tilt * polar_radius(n.point);
        for (int k = 0; k < 4; ++k) v += a[k] * std::cos((k + 1) * th) + b[k] * std::sin((k + 1) * th);
        return v;
    }
};

Outcome comparison_suite(unsigned seed) {
    const auto t0 = Clock::now();
    const ModelManifold h2 = ModelManifold::hyperbolic(2);
    const std::vector<Grid> grids = {
        make_polar_grid(h2, 0.0, 2.0, 20, 48, NodeTag::Interior, NodeTag::FiniteBoundary),
        make_polar_grid(h2, 1.0, 4.0, 30, 48, NodeTag::FiniteBoundary, NodeTag::TruncationCap),
        make_fermi_grid(0.0, 3.0, -3.0, 3.0, 30, 60),
    };
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0), P(0.0, 1.0);
    double order_violation = -HUGE_VAL, bound_violation = -HUGE_VAL;
    for (int pair = 0; pair < 50; ++pair) {
        const Grid& grid = grids[pair % 3];
        const double scale = 0.5 + 2.0 * P(rng);
        RandomData low{scale * U(rng), 0.3 * U(rng), {}, {}};
        RandomData gap{0.0, 0.0, {}, {}};
        for (int k = 0; k < 4; ++k) {
            low.a[k] = scale * U(rng) / (k + 1);
            low.b[k] = scale * U(rng) / (k + 1);
            gap.a[k] = 0.5 * U(rng) / (k + 1);
            gap.b[k] = 0.5 * U(rng) / (k + 1);
        }
        Eigen::VectorXd b1 = Eigen::VectorXd::Zero(grid.size()), b2 = b1;
        for (int i = 0; i < grid.size(); ++i) {
            if (grid.nodes[i].tag == NodeTag::Interior) continue;
            b1(i) = low(grid.nodes[i]);
            b2(i) = b1(i) + std::abs(gap(grid.nodes[i])) + 0.05 * P(rng);
        }
        const DiscreteField u1 = solve_dirichlet(grid, b1, {});
        const DiscreteField u2 = solve_dirichlet(grid, b2, {});
        order_violation = std::max(order_violation, (u1.values - u2.values).maxCoeff());
        for (const auto& [u, b] : {std::pair{&u1, &b1}, std::pair{&u2, &b2}}) {
            double lo = HUGE_VAL, hi = -HUGE_VAL;
            for (int i = 0; i < grid.size(); ++i)
                if (grid.nodes[i].tag != NodeTag::Interior) lo = std::min(lo, (*b)(i)), hi = std::max(hi, (*b)(i));
            bound_violation = std::max({bound_violation, lo - u->values.minCoeff(), u->values.maxCoeff() - hi});
        }
    }
    const double elapsed = seconds_since(t0);
    const bool pass = order_violation <= 1e-9 && bound_violation <= 1e-9 && elapsed <= 300.0;
    return {pass, "seed=" + std::to_string(seed) + fmt(" max(u1-u2)=%.3e", order_violation) +
                      fmt(" max-principle excess=%.3e", bound_violation) + fmt(" time=%.1fs", elapsed)};
}

struct GapRuns {
    GapReport main, control;
    double seconds;
};

GapRuns gap_runs() {
    const auto t0 = Clock::now();
    const DomainSpec ext = DomainSpec::ball_exterior(ModelManifold::hyperbolic(2), 1.0);
    const std::vector<double> hs = {0.1, 0.05, 0.025};
    GapRuns r;
    r.main = run_gap_study(build_counterexample(ext), hs, 8.0);
    r.control = run_gap_study(build_counterexample(ext, std::nullopt, 0.01), hs, 8.0);
    r.seconds = seconds_since(t0);
    return r;
}

Outcome nonexistence_gap(const GapRuns& r) {
    const double phi_y = r.main.amplitude;
    const double limit = phi_y / 2 + 0.05 * phi_y;
    bool pass = r.seconds <= 600.0;
    std::string detail = fmt("phi(y)=%.4f", phi_y) + fmt(" limit=%.4f", limit) + " u_near_y=";
    for (const auto& l : r.main.levels) {
        pass = pass && l.bound.u_near_y <= limit;
        detail += fmt("%.4f,", l.bound.u_near_y);
    }
    detail += " control trace error=";
    for (const auto& l : r.control.levels) {
        pass = pass && l.trace_error <= 5e-3;
        detail += fmt("%.2e,", l.trace_error);
    }
    return {pass, detail + fmt(" time=%.1fs", r.seconds)};
}

Outcome barrier_domination(const GapRuns& r) {
    double collar = -HUGE_VAL, exterior = -HUGE_VAL;
    for (const auto* rep : {&r.main, &r.control})
        for (const auto& l : rep->levels) {
            collar = std::max(collar, l.bound.collar_violation);
            exterior = std::max(exterior, l.bound.exterior_violation);
        }
    return {collar <= 1e-6 && exterior <= 1e-6,
            fmt("max(u - A psi(d) - sphere_sup)=%.3e", collar) + fmt(" max(u - B psi(r) - outside_sup)=%.3e", exterior)};
}

Outcome exhaustion() {
    const auto t0 = Clock::now();
    const DomainSpec full = DomainSpec::full(ModelManifold::hyperbolic(2));
    const BoundaryData phi = BoundaryData::angular("cos", [](double t) { return std::cos(t); });
    ExhaustionSchedule s;
    s.radii = {4, 5, 6, 7, 8, 9, 10};
    s.probes = {{0.0, 2.0, 0.0, 7.0}};
    const AsymptoticReport report = run_exhaustion(full, phi, s);
    const auto& d = report.differences[0];
    bool monotone = true;
    for (std::size_t k = 1; k < d.size(); ++k) monotone = monotone && d[k] < d[k - 1];
    int certified = 0;
    for (int k = 0; k < 8; ++k) certified += attainment_certificate(report, full, phi, k * kPi / 4, 0.3).pass;
    const double elapsed = seconds_since(t0);
    const bool pass = monotone && d.back() < 1e-3 && certified == 8 && elapsed <= 600.0;
    return {pass, fmt("last difference=%.3e", d.back()) + (monotone ? " monotone" : " not monotone") +
                      " certificates=" + std::to_string(certified) + "/8" + fmt(" time=%.1fs", elapsed)};
}

}  // namespace

int main() {
    const unsigned seed = seed_from_env();
    int failures = 0;
    auto report = [&](int id, const char* name, const std::function<Outcome()>& run) {
        Outcome o{false, ""};
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("[%s] criterion %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
        std::fflush(stdout);
    };
    report(1, "fermi rectangle minimal-surface solve", fermi_rectangle);
    report(2, "g radial residual", g_residual);
    report(3, "barrier constant sharpness", constant_sharpness);
    report(4, "g_p radial residual", gp_residual);
    report(5, "randomized comparison suite", [&] { return comparison_suite(seed); });
    GapRuns gaps;
    bool have_gaps = false;
    std::string gap_error;
    try {
        gaps = gap_runs();
        have_gaps = true;
    } catch (const std::exception& e) {
        gap_error = e.what();
    }
    report(6, "nonexistence gap", [&] {
        if (!have_gaps) throw std::runtime_error(gap_error);
        return nonexistence_gap(gaps);
    });
    report(7, "barrier domination", [&] {
        if (!have_gaps) throw std::runtime_error(gap_error);
        return barrier_domination(gaps);
    });
    report(8, "exhaustion of the plane", exhaustion);
    std::printf("%d of 8 criteria passed\n", 8 - failures);
    return failures == 0 ? 0 : 1;
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hypgraph/error.hpp"
#include "hypgraph/solver.hpp"

using namespace hypgraph;

namespace {

double log_coth_half(double s) { return std::log(1.0 / std::tanh(s / 2)); }

Eigen::VectorXd boundary_from(const Grid& grid, const std::function<double(const Node&)>& f) {
    Eigen::VectorXd b = Eigen::VectorXd::Zero(grid.size());
    for (int i = 0; i < grid.size(); ++i)
        if (grid.nodes[i].tag != NodeTag::Interior) b(i) = f(grid.nodes[i]);
    return b;
}

double max_error_on_fermi_box(double h) {
    const int ns = static_cast<int>(std::lround(4.5 / h)), nt = static_cast<int>(std::lround(6.0 / h));
    const Grid grid = make_fermi_grid(0.5, 5.0, -3.0, 3.0, ns, nt);
    const Eigen::VectorXd b = boundary_from(grid, [](const Node& n) { return log_coth_half(n.x1); });
    const DiscreteField f = solve_dirichlet(grid, b, {});
    double err = 0.0;
    for (int i = 0; i < grid.size(); ++i) err = std::max(err, std::abs(f.values(i) - log_coth_half(grid.nodes[i].x1)));
    return err;
}

}  // namespace

TEST_CASE("grid areas match the exact Riemannian areas") {
    const ModelManifold h2 = ModelManifold::hyperbolic(2);
    const Grid disk = make_polar_grid(h2, 0.0, 2.0, 20, 64, NodeTag::Interior, NodeTag::FiniteBoundary);
    CHECK(disk.total_area() == doctest::Approx(2 * std::numbers::pi * (std::cosh(2.0) - 1)).epsilon(1e-12));
    CHECK(disk.node_volume.sum() == doctest::Approx(disk.total_area()).epsilon(1e-12));
    const Grid box = make_fermi_grid(0.0, 1.0, -2.0, 2.0, 10, 40);
    CHECK(box.total_area() == doctest::Approx(4.0 * std::sinh(1.0)).epsilon(1e-12));
    CHECK(box.node_volume.sum() == doctest::Approx(box.total_area()).epsilon(1e-12));
    CHECK(disk.index(0, 5) == 0);
    CHECK(disk.nodes[disk.index(3, 7)].x1 == doctest::Approx(0.3));
    CHECK_THROWS(make_polar_grid(h2, 1.0, 0.5, 10, 16, NodeTag::FiniteBoundary, NodeTag::TruncationCap));
    CHECK_THROWS(make_fermi_grid(0.0, 1.0, 0.0, 1.0, 1, 10));
}

TEST_CASE("interpolation reproduces linear data in chart coordinates") {
    const Grid box = make_fermi_grid(0.0, 2.0, -1.0, 1.0, 8, 8);
    Eigen::VectorXd v(box.size());
    for (int i = 0; i < box.size(); ++i) v(i) = 2 * box.nodes[i].x1 - 3 * box.nodes[i].x2;
    CHECK(interpolate(box, v, 1.37, 0.21) == doctest::Approx(2 * 1.37 - 3 * 0.21));
    CHECK_THROWS(interpolate(box, v, 2.5, 0.0));
}

TEST_CASE("Fermi box with planar barrier data converges at second order") {
    const double e1 = max_error_on_fermi_box(0.1), e2 = max_error_on_fermi_box(0.05), e3 = max_error_on_fermi_box(0.025);
    CHECK(e2 <= 5e-3);
    const double slope = (std::log(e1) - std::log(e3)) / (std::log(0.1) - std::log(0.025));
    CHECK(slope >= 1.8);
}

TEST_CASE("comparison, max principle and shift equivariance") {
    const ModelManifold h2 = ModelManifold::hyperbolic(2);
    const Grid grid = make_polar_grid(h2, 1.0, 3.0, 20, 40, NodeTag::FiniteBoundary, NodeTag::TruncationCap);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        const double a = U(rng), b = U(rng), c = U(rng);
        const auto low = boundary_from(grid, [&](const Node& n) { return a * std::cos(n.x2) + b * std::sin(2 * n.x2) + c * n.x1; });
        const auto high = boundary_from(grid, [&](const Node& n) { return a * std::cos(n.x2) + b * std::sin(2 * n.x2) + c * n.x1 + 0.2 * (1 + std::sin(n.x2)); });
        const auto u1 = solve_dirichlet(grid, low, {});
        const auto u2 = solve_dirichlet(grid, high, {});
        CHECK((u1.values - u2.values).maxCoeff() <= 1e-9);
        double lo = HUGE_VAL, hi = -HUGE_VAL;
        for (int i = 0; i < grid.size(); ++i)
            if (grid.nodes[i].tag != NodeTag::Interior) lo = std::min(lo, low(i)), hi = std::max(hi, low(i));
        CHECK(u1.values.minCoeff() >= lo - 1e-9);
        CHECK(u1.values.maxCoeff() <= hi + 1e-9);
        const auto shifted = solve_dirichlet(grid, (low.array() + 0.75).matrix(), {});
        CHECK((shifted.values.array() - 0.75 - u1.values.array()).abs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("energy decreases and solves are deterministic") {
    const ModelManifold h2 = ModelManifold::hyperbolic(2);
    const Grid grid = make_polar_grid(h2, 0.0, 2.0, 20, 32, NodeTag::Interior, NodeTag::FiniteBoundary);
    const auto b = boundary_from(grid, [](const Node& n) { return 4.0 * std::cos(n.x2); });
    const auto f = solve_dirichlet(grid, b, {});
    CHECK(f.meta.continuation_stages == 4);
    CHECK(f.meta.residual_norm <= 1e-10);
    CHECK(discrete_residual(grid, f.values, OperatorKind::MinimalSurface).norm <= 1e-9);
    CHECK(f.meta.energy <= discrete_energy(grid, harmonic_extension(grid, b), OperatorKind::MinimalSurface) + 1e-12);
    for (std::size_t st = 0; st < f.meta.stage_starts.size(); ++st) {
        const std::size_t from = f.meta.stage_starts[st];
        const std::size_t to = st + 1 < f.meta.stage_starts.size() ? f.meta.stage_starts[st + 1] : f.meta.energy_history.size();
        for (std::size_t k = from + 1; k < to; ++k) CHECK(f.meta.energy_history[k] <= f.meta.energy_history[k - 1] + 1e-12);
    }
    const auto again = solve_dirichlet(grid, b, {});
    CHECK(again.values == f.values);
}

TEST_CASE("p-Laplace variant") {
    // p = 2 on a Fermi box: u = A t is not harmonic, but u depending on s through
    // its primitive int sech is: (cosh s u')' = 0.
    const Grid grid = make_fermi_grid(0.0, 2.0, -1.0, 1.0, 40, 40);
    auto exact = [](double s) { return 2.0 * std::atan(std::tanh(s / 2)); };
    const auto b = boundary_from(grid, [&](const Node& n) { return exact(n.x1); });
    SolveParams p;
    p.op = OperatorKind::PLaplace;
    const auto f = solve_dirichlet(grid, b, p);
    double err = 0.0;
    for (int i = 0; i < grid.size(); ++i) err = std::max(err, std::abs(f.values(i) - exact(grid.nodes[i].x1)));
    CHECK(err < 1e-3);
    p.p = 3.0;
    const auto g = solve_dirichlet(grid, b, p);
    CHECK(g.values.maxCoeff() <= b.maxCoeff() + 1e-9);
    SolveParams bad;
    bad.op = OperatorKind::PLaplace;
    bad.p = 0.5;
    CHECK_THROWS_AS(solve_dirichlet(grid, b, bad), InvalidArgument);
}

TEST_CASE("solver input validation and failure reporting") {
    const Grid grid = make_fermi_grid(0.0, 1.0, -1.0, 1.0, 10, 10);
    CHECK_THROWS_AS(solve_dirichlet(grid, Eigen::VectorXd::Zero(3), {}), InvalidArgument);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(grid.size());
    b(0) = NAN;
    CHECK_THROWS_AS(solve_dirichlet(grid, b, {}), InvalidArgument);
    const auto flat = solve_dirichlet(grid, Eigen::VectorXd::Constant(grid.size(), 2.0), {});
    CHECK(flat.meta.iterations == 0);
    CHECK((flat.values.array() == 2.0).all());
    Eigen::VectorXd steep = Eigen::VectorXd::Zero(grid.size());
    for (int i = 0; i < grid.size(); ++i) steep(i) = 50.0 * grid.nodes[i].x2;
    SolveParams one;
    one.max_iters = 1;
    one.continuation_steps = 1;
    // 50 t is itself a discrete solution, so start from zero inside
    Eigen::VectorXd guess = steep;
    for (int i = 0; i < grid.size(); ++i)
        if (grid.nodes[i].tag == NodeTag::Interior) guess(i) = 0.0;
    SolveParams direct;
    direct.continuation_steps = 1;
    CHECK(solve_dirichlet(grid, steep, direct).meta.iterations == 0);
    try {
        solve_dirichlet(grid, steep, one, guess);
        FAIL("expected a numerical failure");
    } catch (const NumericalFailure& e) {
        CHECK(e.last_residual() > 1e-10);
    }
}

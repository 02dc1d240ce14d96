#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hypgraph/barriers.hpp"
#include "hypgraph/error.hpp"
#include "hypgraph/nonexistence.hpp"

using namespace hypgraph;

namespace {

constexpr double kPi = std::numbers::pi;
const ModelManifold kH2 = ModelManifold::hyperbolic(2);

}  // namespace

TEST_CASE("counterexample constants on the exterior of the unit ball") {
    const auto spec = build_counterexample(DomainSpec::ball_exterior(kH2, 1.0));
    CHECK(spec.eps == doctest::Approx(0.5 / std::tanh(1.0)).epsilon(1e-12));
    CHECK(spec.eps == doctest::Approx(0.6565).epsilon(1e-4));
    CHECK(spec.A == min_barrier_constant(spec.eps));
    CHECK(spec.B == doctest::Approx(1.63).epsilon(1e-2));
    CHECK(spec.s == 1.0);
    CHECK(spec.amplitude == doctest::Approx(kPi * (spec.A + spec.B)));
    CHECK(spec.ceiling() == spec.A * kPi / 2 + spec.B * kPi / 2);
    CHECK(spec.ceiling() < spec.amplitude);
    // Data: peak at y, cosine taper, zero beyond arc length s.
    CHECK(spec.phi.finite(spec.y) == doctest::Approx(spec.amplitude));
    const double beyond = 1.01 * spec.s / std::sinh(1.0);
    CHECK(spec.phi.finite(from_polar(1.0, beyond)) == 0.0);
    CHECK(spec.phi.finite(from_polar(1.0, 0.3)) < spec.amplitude);
    CHECK(spec.phi.ideal(0.0) == 0.0);

    const auto smaller = build_counterexample(DomainSpec::ball_exterior(kH2, 1.0), 0.5);
    CHECK(smaller.eps == spec.eps);
    CHECK(smaller.A == spec.A);
    CHECK(smaller.s == 0.5);
}

TEST_CASE("counterexample preconditions") {
    CHECK_THROWS_AS(build_counterexample(DomainSpec::half_plane()), InvalidArgument);
    CHECK_THROWS_AS(build_counterexample(DomainSpec::disk(kH2, 1.0)), InvalidArgument);
    CHECK_THROWS_AS(build_counterexample(DomainSpec::full(kH2)), InvalidArgument);
    CHECK_NOTHROW(build_counterexample(DomainSpec::half_plane(0.5)));
    // Small balls have large eps; long collars leave the region where Delta d > eps.
    CHECK_THROWS_AS(build_counterexample(DomainSpec::ball_exterior(kH2, 0.2), 3.0), InvalidArgument);
    const auto auto_s = build_counterexample(DomainSpec::ball_exterior(kH2, 0.2));
    CHECK(1.0 / std::tanh(0.2 + auto_s.s) > auto_s.eps);
}

TEST_CASE("zero data is trivially below both barriers") {
    auto spec = build_counterexample(DomainSpec::ball_exterior(kH2, 1.0));
    const Grid grid = counterexample_grid(spec, 4.0, 0.1);
    DiscreteField zero;
    zero.values = Eigen::VectorXd::Zero(grid.size());
    const auto b = jenkins_serrin_bound(spec, grid, zero);
    CHECK(b.collar_violation < 0);
    CHECK(b.exterior_violation < 0);
    CHECK(b.sphere_sup == 0.0);
    CHECK(b.collar_nodes > 0);
    DiscreteField wrong;
    wrong.values = Eigen::VectorXd::Zero(3);
    CHECK_THROWS(jenkins_serrin_bound(spec, grid, wrong));
}

TEST_CASE("gap study on a coarse level") {
    const auto spec = build_counterexample(DomainSpec::ball_exterior(kH2, 1.0));
    const auto report = run_gap_study(spec, {0.1}, 5.0);
    CHECK(report.gap_persists);
    CHECK(report.barriers_dominate);
    CHECK_FALSE(report.attains_data);
    const auto& l = report.levels.front();
    CHECK(l.bound.u_near_y <= report.ceiling);

    // Doubling the peak leaves the sphere sup controlled by the outside data.
    const auto doubled = build_counterexample(DomainSpec::ball_exterior(kH2, 1.0), std::nullopt, 2.0);
    const auto r2 = run_gap_study(doubled, {0.1}, 5.0);
    CHECK(r2.levels.front().bound.sphere_sup <= spec.B * kPi / 2 + 0.0);

    const auto small = build_counterexample(DomainSpec::ball_exterior(kH2, 1.0), std::nullopt, 0.01);
    const auto r3 = run_gap_study(small, {0.1}, 5.0);
    CHECK(r3.attains_data);
    CHECK_FALSE(r3.gap_persists);

    const auto disk = run_gap_study(disk_control(spec), {0.1, 0.05}, 5.0);
    CHECK(disk.levels[1].trace_error < disk.levels[0].trace_error);
    CHECK(disk.levels[1].trace_error < 0.1);
    CHECK_THROWS(run_gap_study(spec, {}, 5.0));
}

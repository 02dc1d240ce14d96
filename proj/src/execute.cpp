#include "hypgraph/execute.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <numbers>

#include "hypgraph/barriers.hpp"
#include "hypgraph/error.hpp"
#include "hypgraph/verify.hpp"

namespace hypgraph {

namespace fs = std::filesystem;

namespace {

class Run {
public:
    explicit Run(const RunConfig& cfg) : cfg_(cfg), dir_(cfg.output_dir) {
        fs::create_directories(dir_);
        manifest_.config = cfg.echo;
    }

    void json(const std::string& name, const Json& doc) {
        write_json((dir_ / name).string(), doc);
        record(name);
    }
    void csv(const std::string& name, const Grid& grid, const Eigen::VectorXd& values) {
        write_field_csv((dir_ / name).string(), grid, values);
        record(name);
    }
    void check(const std::string& name, bool pass) { manifest_.checks.push_back({name, pass}); }

    template <typename F>
    auto timed(const std::string& stage, F&& f) {
        const auto t0 = std::chrono::steady_clock::now();
        auto result = f();
        manifest_.timings.push_back(
            {stage, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()});
        return result;
    }

    RunManifest finish() {
        manifest_.pass = true;
        for (const auto& c : manifest_.checks) manifest_.pass = manifest_.pass && c.pass;
        write_json((dir_ / "manifest.json").string(), manifest_.to_json());
        return manifest_;
    }

    const RunConfig& cfg() const { return cfg_; }

private:
    void record(const std::string& name) {
        const fs::path p = dir_ / name;
        manifest_.artifacts.push_back({name, sha256_file(p.string()), fs::file_size(p)});
    }

    const RunConfig& cfg_;
    fs::path dir_;
    RunManifest manifest_;
};

// Sharpness of A_min on a dense grid of [0, max(200, 3/eps)].
std::pair<bool, bool> sharpness(double eps, double A) {
    const double t_max = std::max(200.0, 3.0 / eps);
    bool upper = true, lower = false;
    for (int i = 0; i <= 200000; ++i) {
        const double t = t_max * i / 200000.0;
        upper = upper && barrier_polynomial(t, eps, A + 1e-3) < 0;
        lower = lower || barrier_polynomial(t, eps, A - 1e-3) > 0;
    }
    return {upper, lower};
}

void run_constants(Run& run) {
    const auto& cfg = run.cfg();
    const double A = run.timed("min_barrier_constant", [&] { return min_barrier_constant(cfg.eps, cfg.seed); });
    const double B = universal_constant_B(cfg.n);
    const auto [upper, lower] = sharpness(cfg.eps, A);
    run.json("constants.json", Json{{"eps", cfg.eps},
                                    {"n", cfg.n},
                                    {"A_min", A},
                                    {"B", B},
                                    {"inverse_sqrt_eps", 1.0 / std::sqrt(cfg.eps)},
                                    {"exceeds_inverse_sqrt_eps", A > 1.0 / std::sqrt(cfg.eps)},
                                    {"negative_above", upper},
                                    {"positive_somewhere_below", lower}});
    run.check("negative_above_A_min", upper);
    run.check("positive_somewhere_below_A_min", lower);
}

void run_barrier(Run& run) {
    const auto& cfg = run.cfg();
    std::vector<double> samples;
    for (int i = 0; i < cfg.samples; ++i)
        samples.push_back(cfg.samples == 1 ? cfg.s_min : cfg.s_min + (cfg.s_max - cfg.s_min) * i / (cfg.samples - 1));
    const ModelManifold m = ModelManifold::hyperbolic(cfg.n);
    auto hyperplane_lap = [&m](double s) { return laplacian_of_distance(m, DistanceBase::TotallyGeodesicHypersurface, s); };
    SupersolutionCertificate cert;
    if (cfg.profile == "g") {
        cert = certify_supersolution(BarrierProfile::g(cfg.n), OperatorKind::MinimalSurface, samples, hyperplane_lap,
                                     cfg.excess);
    } else if (cfg.profile == "gp") {
        cert = certify_supersolution(BarrierProfile::gp(cfg.n, cfg.p, cfg.c), OperatorKind::PLaplace, samples,
                                     hyperplane_lap, cfg.excess);
    } else {
        const double A = cfg.amplitude > 0 ? cfg.amplitude : min_barrier_constant(cfg.eps, cfg.seed) + 1e-3;
        const double eps = cfg.eps;
        cert = certify_supersolution(BarrierProfile::psi(A), OperatorKind::MinimalSurface, samples,
                                     [eps](double) { return eps; }, cfg.excess);
    }
    run.json("certificate.json", to_json(cert));
    run.check("supersolution", cert.pass);
}

Eigen::VectorXd data_for(const RunConfig& cfg, const DomainSpec& d, const Grid& grid) {
    if (cfg.phi == "counterexample") return transfer_boundary_data(build_counterexample(d).phi, grid, d);
    return transfer_boundary_data(phi_preset(cfg.phi, d), grid, d);
}

void run_solve(Run& run) {
    const auto& cfg = run.cfg();
    const DomainSpec d = domain_from_id(cfg.domain, manifold_from_id(cfg.manifold));
    const Grid grid = truncate(d, cfg.radius, cfg.resolution());
    const Eigen::VectorXd bvals = data_for(cfg, d, grid);
    const SolveParams params = cfg.solve_params();
    const DiscreteField field = run.timed("solve", [&] { return solve_dirichlet(grid, bvals, params); });
    double lo = HUGE_VAL, hi = -HUGE_VAL;
    for (int i = 0; i < grid.size(); ++i) {
        if (grid.nodes[i].tag == NodeTag::Interior) continue;
        lo = std::min(lo, bvals(i));
        hi = std::max(hi, bvals(i));
    }
    const double umin = field.values.minCoeff(), umax = field.values.maxCoeff();
    const bool bounded = umin >= lo - 1e-9 && umax <= hi + 1e-9;
    Json meta = to_json(field.meta);
    meta["manifold"] = cfg.manifold;
    meta["domain"] = d.id();
    meta["phi"] = cfg.phi;
    meta["radius"] = cfg.radius;
    meta["h"] = cfg.h;
    meta["nodes"] = grid.size();
    meta["max_principle"] = Json{{"data_min", lo}, {"data_max", hi}, {"u_min", umin}, {"u_max", umax}, {"pass", bounded}};
    run.csv("field.csv", grid, field.values);
    run.json("solve.json", meta);
    run.check("max_principle", bounded);
}

std::vector<ProbeBox> default_probes(const DomainSpec& d, double r0) {
    switch (d.kind) {
        case DomainKind::HalfPlane: return {{d.offset, std::min(d.offset + 1.0, r0), -1.0, 1.0}};
        case DomainKind::BallExterior: return {{d.rho, std::min(d.rho + 1.0, r0), 0.0, 7.0}};
        default: return {{0.0, std::min(2.0, r0), 0.0, 7.0}};
    }
}

void run_asymptotic(Run& run) {
    const auto& cfg = run.cfg();
    const DomainSpec d = domain_from_id(cfg.domain, manifold_from_id(cfg.manifold));
    const BoundaryData phi = cfg.phi == "counterexample" ? build_counterexample(d).phi : phi_preset(cfg.phi, d);
    ExhaustionSchedule schedule;
    schedule.radii = cfg.radii;
    schedule.probes = cfg.probes.empty() ? default_probes(d, cfg.radii.front()) : cfg.probes;
    schedule.theta_conv = cfg.theta_conv;
    schedule.burn_in = cfg.burn_in;
    schedule.resolution = cfg.resolution();
    const SolveParams params = cfg.solve_params();
    const AsymptoticReport report = run.timed("exhaustion", [&] { return run_exhaustion(d, phi, schedule, params); });
    Json doc = to_json(report);
    Json certs = Json::array();
    bool all_pass = true;
    for (double x : cfg.certify) {
        const auto cert = attainment_certificate(report, d, phi, x, cfg.certify_width, std::nullopt, 1e-3, params);
        certs.push_back(to_json(cert));
        all_pass = all_pass && cert.pass;
    }
    doc["certificates"] = certs;
    for (std::size_t k = 0; k < report.stages.size(); ++k)
        run.csv("stage_" + std::to_string(k) + ".csv", report.stages[k].grid, report.stages[k].field.values);
    run.json("report.json", doc);
    run.check("probe_differences_monotone", report.monotone);
    if (!cfg.certify.empty()) run.check("attainment_certificates", all_pass);
}

void run_nonexist(Run& run) {
    const auto& cfg = run.cfg();
    const ModelManifold m = manifold_from_id(cfg.manifold);
    const DomainSpec d =
        cfg.echo.contains("domain") ? domain_from_id(cfg.domain, m) : DomainSpec::ball_exterior(m, cfg.rho);
    const CounterexampleSpec spec = build_counterexample(d, cfg.s);
    std::vector<double> steps;
    for (int k = 0; k < cfg.levels; ++k) steps.push_back(cfg.h / std::pow(2.0, k));
    const SolveParams params = cfg.solve_params();
    const GapReport main = run.timed("gap_study", [&] { return run_gap_study(spec, steps, cfg.radius, params); });
    Json doc{{"spec", to_json(spec)}, {"gap", to_json(main)}};
    for (std::size_t k = 0; k < main.levels.size(); ++k)
        run.csv("level_" + std::to_string(k) + ".csv", main.levels[k].grid, main.levels[k].field.values);
    run.check("gap_persists", main.gap_persists);
    run.check("barriers_dominate", main.barriers_dominate);
    if (cfg.controls) {
        const CounterexampleSpec small = build_counterexample(d, cfg.s, 0.01);
        const GapReport control = run.timed("small_data_control", [&] { return run_gap_study(small, steps, cfg.radius, params); });
        doc["small_data_control"] = to_json(control);
        run.check("small_data_control_attains", control.attains_data);
        run.check("small_data_control_no_gap", !control.gap_persists);
        if (d.kind == DomainKind::BallExterior) {
            const GapReport disk =
                run.timed("disk_control", [&] { return run_gap_study(disk_control(spec), steps, cfg.radius, params); });
            doc["disk_control"] = to_json(disk);
        }
    }
    run.json("gap.json", doc);
}

void run_verify(Run& run) {
    const auto results = run.timed("invariants", [&] { return run_invariant_suite(run.cfg().seed); });
    Json list = Json::array();
    for (const auto& r : results) {
        list.push_back(Json{{"name", r.name}, {"pass", r.pass}, {"measured", r.measured}, {"tolerance", r.tolerance},
                            {"detail", r.detail}});
        run.check(r.name, r.pass);
    }
    run.json("verify.json", Json{{"seed", run.cfg().seed}, {"invariants", list}});
}

}  // namespace

Json RunManifest::to_json() const {
    Json arts = Json::array();
    for (const auto& a : artifacts) arts.push_back(Json{{"path", a.path}, {"sha256", a.sha256}, {"bytes", a.bytes}});
    Json times = Json::array();
    for (const auto& [name, sec] : timings) times.push_back(Json{{"stage", name}, {"seconds", sec}});
    Json cks = Json::array();
    for (const auto& c : checks) cks.push_back(Json{{"name", c.name}, {"pass", c.pass}});
    return Json{{"config", config}, {"artifacts", arts}, {"timings", times}, {"checks", cks}, {"pass", pass}};
}

RunManifest execute(const RunConfig& config) {
    Run run(config);
    switch (config.command) {
        case Command::Constants: run_constants(run); break;
        case Command::Barrier: run_barrier(run); break;
        case Command::Solve: run_solve(run); break;
        case Command::SolveAsymptotic: run_asymptotic(run); break;
        case Command::Nonexist: run_nonexist(run); break;
        case Command::Verify: run_verify(run); break;
    }
    return run.finish();
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const NumericalFailure*>(&e)) return kExitNumerical;
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const std::invalid_argument*>(&e)) return kExitUsage;
    return kExitNumerical;
}

Json error_record(const std::exception& e) {
    Json rec{{"error", e.what()}, {"exit_code", exit_code_for(e)}};
    if (const auto* c = dynamic_cast<const ConfigError*>(&e)) {
        rec["kind"] = "config";
        rec["locator"] = c->locator();
    } else if (const auto* n = dynamic_cast<const NumericalFailure*>(&e)) {
        rec["kind"] = "numerical";
        rec["last_residual"] = n->last_residual();
        rec["iterations"] = n->iterations();
    } else if (dynamic_cast<const std::invalid_argument*>(&e)) {
        rec["kind"] = "invalid-argument";
    } else {
        rec["kind"] = "runtime";
    }
    return rec;
}

}  // namespace hypgraph

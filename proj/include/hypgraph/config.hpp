#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypgraph/exhaustion.hpp"
#include "hypgraph/io.hpp"

namespace hypgraph {

enum class Command { Barrier, Solve, SolveAsymptotic, Nonexist, Constants, Verify };

Command command_from_name(const std::string& name);
std::string command_name(Command c);

/// Validated run description. Every field has a default; parsing rejects unknown keys.
struct RunConfig {
    Command command = Command::Constants;
    std::string manifold = "h2";
    std::string domain = "full";
    std::string phi = "cos";
    std::string output_dir = "out";
    unsigned seed = 42;

    // solver
    OperatorKind op = OperatorKind::MinimalSurface;
    double p = 2.0;
    double newton_tol = 1e-10;
    int max_iters = 100;
    int continuation_steps = 4;
    double h = 0.1;
    int angular = 0;

    // solve
    double radius = 5.0;

    // solve-asymptotic
    std::vector<double> radii{4, 5, 6, 7, 8, 9, 10};
    std::vector<ProbeBox> probes;
    std::vector<double> certify;
    double certify_width = 0.3;
    double theta_conv = 1e-6;
    int burn_in = 0;

    // constants / barrier
    double eps = 1.0;
    int n = 2;
    std::string profile = "g";
    double c = 1.0;
    double amplitude = 0.0;  ///< psi profile amplitude; 0 picks A_min(eps) + 1e-3
    double excess = 0.0;
    int samples = 200;
    double s_min = 0.1;
    double s_max = 10.0;

    // nonexist
    double rho = 1.0;
    std::optional<double> s;
    int levels = 3;
    bool controls = true;

    Json echo;  ///< normalized config as parsed

    SolveParams solve_params() const;
    GridResolution resolution() const { return {h, angular}; }
};

/// Parses a JSON document. Errors carry "line N" for syntax and "$.key" for fields.
RunConfig parse_config(const std::string& json_text);
/// Parses a structured object (already decoded JSON).
RunConfig config_from_json(const Json& doc);
/// Parses a flag set: args[0] is the subcommand, followed by --key value pairs
/// and an optional --config <file> whose keys the flags override.
RunConfig parse_config_args(const std::vector<std::string>& args);

/// Seed for randomized suites: HYPGRAPH_SEED if set, else 42.
unsigned seed_from_env();

}  // namespace hypgraph

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hypgraph/error.hpp"
#include "hypgraph/execute.hpp"

namespace {

const char* kUsage =
    "usage: hypgraph <command> [--flag value ...] [--config file.json]\n"
    "       hypgraph --config file.json\n"
    "commands: barrier, solve, solve-asymptotic, nonexist, constants, verify\n"
    "common flags: --manifold --domain --phi --h --radius --output-dir --op --p\n"
    "solve-asymptotic: --radii --probes x1a:x1b[:x2a:x2b] --certify x=<angle> --certify-width --theta-conv\n"
    "nonexist: --rho --s --radius --levels --no-controls\n"
    "constants/barrier: --eps --n --profile g|gp|psi --c --A --samples --s-min --s-max --excess\n"
    "exit codes: 0 pass, 1 check failure, 2 usage error, 3 numerical failure\n";

}  // namespace

int main(int argc, char** argv) {
    using namespace hypgraph;
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "--help" || args[0] == "-h") {
        std::cout << kUsage;
        return args.empty() ? kExitUsage : kExitPass;
    }
    try {
        RunConfig cfg;
        if (args[0] == "--config") {
            if (args.size() != 2) throw ConfigError("argv", "--config alone takes exactly one file");
            std::ifstream in(args[1]);
            if (!in) throw ConfigError("--config", "cannot read '" + args[1] + "'");
            std::stringstream ss;
            ss << in.rdbuf();
            cfg = parse_config(ss.str());
        } else {
            cfg = parse_config_args(args);
        }
        const RunManifest manifest = execute(cfg);
        Json summary{{"command", command_name(cfg.command)}, {"output_dir", cfg.output_dir}, {"pass", manifest.pass}};
        Json checks = Json::object();
        for (const auto& c : manifest.checks) checks[c.name] = c.pass;
        summary["checks"] = checks;
        std::cout << summary.dump(2) << '\n';
        return manifest.exit_code();
    } catch (const std::exception& e) {
        std::cerr << error_record(e).dump() << '\n';
        return exit_code_for(e);
    }
}

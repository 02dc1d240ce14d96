#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hypgraph/config.hpp"

namespace hypgraph {

enum ExitCode : int { kExitPass = 0, kExitCheckFailure = 1, kExitUsage = 2, kExitNumerical = 3 };

struct Artifact {
    std::string path;  ///< relative to the output directory
    std::string sha256;
    std::uintmax_t bytes = 0;
};

struct CheckResult {
    std::string name;
    bool pass = false;
};

struct RunManifest {
    Json config;
    std::vector<Artifact> artifacts;
    std::vector<std::pair<std::string, double>> timings;  ///< wall-clock seconds per stage
    std::vector<CheckResult> checks;
    bool pass = false;

    int exit_code() const { return pass ? kExitPass : kExitCheckFailure; }
    Json to_json() const;
};

/// Runs the configured command, writes its artifacts and manifest.json into
/// config.output_dir, and reports the declared checks.
RunManifest execute(const RunConfig& config);

/// Exit code and machine-readable error record for an exception escaping execute or parsing.
int exit_code_for(const std::exception& e);
Json error_record(const std::exception& e);

}  // namespace hypgraph

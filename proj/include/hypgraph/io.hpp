#pragma once

#include <string>

#include <json.hpp>

#include "hypgraph/exhaustion.hpp"
#include "hypgraph/nonexistence.hpp"

namespace hypgraph {

using Json = nlohmann::ordered_json;

/// Node chart coordinates and value, one row per node, full precision.
void write_field_csv(const std::string& path, const Grid& grid, const Eigen::VectorXd& values);
void write_json(const std::string& path, const Json& doc);

Json to_json(const SolveMetadata& meta);
Json to_json(const SupersolutionCertificate& cert);
Json to_json(const AsymptoticReport& report);
Json to_json(const AttainmentCertificate& cert);
Json to_json(const BarrierBound& bound);
Json to_json(const GapReport& report);
Json to_json(const CounterexampleSpec& spec);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

}  // namespace hypgraph

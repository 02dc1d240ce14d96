#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "hypgraph/error.hpp"
#include "hypgraph/execute.hpp"

using namespace hypgraph;
namespace fs = std::filesystem;

namespace {

std::string scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("hypgraph_cli_" + name);
    fs::remove_all(p);
    return p.string();
}

std::string locator_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.locator();
    }
    return "";
}

Json read_json(const std::string& path) {
    std::ifstream in(path);
    return Json::parse(in);
}

}  // namespace

TEST_CASE("config documents") {
    const RunConfig c = parse_config(R"({"command":"constants","eps":1.0})");
    CHECK(c.command == Command::Constants);
    CHECK(c.eps == 1.0);
    const RunConfig n = parse_config(R"({"command":"nonexist","rho":1.0,"levels":3})");
    CHECK(n.command == Command::Nonexist);
    CHECK(n.levels == 3);
    CHECK(n.radius == 8.0);
    try {
        parse_config(R"({"command":"solve","p":0.5})");
        FAIL("expected a config error");
    } catch (const ConfigError& e) {
        CHECK(e.locator() == "$.p");
        CHECK(std::string(e.what()).find("p must exceed 1") != std::string::npos);
    }
    CHECK(locator_of(R"({"command":"solve","colour":1})") == "$.colour");
    CHECK(locator_of(R"({"command":"solve","domain":"annulus"})") == "$.domain");
    CHECK(locator_of(R"({"command":"solve","phi":"wave"})") == "$.phi");
    CHECK(locator_of(R"({"command":"fly"})") == "$.command");
    CHECK(locator_of(R"({"command":"solve","radii":[3,2]})") == "$.radii");
    CHECK(locator_of("{\"command\":\n\"solve\",\n}") == "line 3");
    CHECK(locator_of(R"({"command":"solve","h":"small"})") == "$.h");
    CHECK(parse_config(R"({"command":"solve","p":3})").op == OperatorKind::PLaplace);
}

TEST_CASE("flag sets") {
    const RunConfig a = parse_config_args({"solve-asymptotic", "--domain", "full", "--phi", "cos", "--radii", "4:6:1",
                                           "--probes", "0:2", "--certify", "x=0", "--certify", "x=1.5"});
    CHECK(a.radii == std::vector<double>{4, 5, 6});
    REQUIRE(a.probes.size() == 1);
    CHECK(a.probes[0].x1_max == 2.0);
    CHECK(a.certify == std::vector<double>{0.0, 1.5});
    const RunConfig n = parse_config_args({"nonexist", "--rho", "1", "--s", "0.5", "--radius", "6", "--levels", "2"});
    CHECK(n.s.value() == 0.5);
    CHECK(n.radius == 6.0);
    CHECK_THROWS_AS(parse_config_args({"solve", "--colour", "red"}), ConfigError);
    CHECK_THROWS_AS(parse_config_args({"solve", "--p", "0.5"}), ConfigError);
    CHECK_THROWS_AS(parse_config_args({"nonexist", "--levels", "2.5"}), ConfigError);
    CHECK_THROWS_AS(parse_config_args({}), ConfigError);
}

TEST_CASE("seed from the environment") {
    unsetenv("HYPGRAPH_SEED");
    CHECK(seed_from_env() == 42u);
    setenv("HYPGRAPH_SEED", "7", 1);
    CHECK(seed_from_env() == 7u);
    CHECK(parse_config(R"({"command":"verify"})").seed == 7u);
    setenv("HYPGRAPH_SEED", "x", 1);
    CHECK_THROWS_AS(seed_from_env(), ConfigError);
    unsetenv("HYPGRAPH_SEED");
}

TEST_CASE("constants command and deterministic manifests") {
    RunConfig cfg = parse_config(R"({"command":"constants","eps":1.0})");
    cfg.output_dir = scratch("constants_a");
    const RunManifest m1 = execute(cfg);
    CHECK(m1.pass);
    CHECK(m1.exit_code() == kExitPass);
    const Json doc = read_json(cfg.output_dir + "/constants.json");
    CHECK(doc["A_min"].get<double>() == doctest::Approx(1.63).epsilon(1e-2));
    REQUIRE(m1.artifacts.size() == 1);
    CHECK(m1.artifacts[0].sha256 == sha256_file(cfg.output_dir + "/constants.json"));
    CHECK(fs::exists(cfg.output_dir + "/manifest.json"));
    cfg.output_dir = scratch("constants_b");
    const RunManifest m2 = execute(cfg);
    CHECK(m2.artifacts[0].sha256 == m1.artifacts[0].sha256);
}

TEST_CASE("barrier command certificate layout") {
    RunConfig cfg = parse_config(R"({"command":"barrier","profile":"g","n":3,"samples":20})");
    cfg.output_dir = scratch("barrier");
    CHECK(execute(cfg).pass);
    const Json cert = read_json(cfg.output_dir + "/certificate.json");
    for (const char* key : {"profile", "params", "sample_grid", "residuals", "max_residual", "pass"}) CHECK(cert.contains(key));
    CHECK(cert["sample_grid"].size() == 20);
    RunConfig psi = parse_config(R"({"command":"barrier","profile":"psi","eps":0.5})");
    psi.output_dir = scratch("barrier_psi");
    CHECK(execute(psi).pass);
    RunConfig small = parse_config(R"({"command":"barrier","profile":"psi","eps":1.0,"A":1.0})");
    small.output_dir = scratch("barrier_small");
    CHECK(execute(small).exit_code() == kExitCheckFailure);
}

TEST_CASE("solve command writes fields and metadata") {
    RunConfig cfg = parse_config(R"({"command":"solve","domain":"halfplane:offset=0.5","phi":"g","radius":3,"h":0.1})");
    cfg.output_dir = scratch("solve");
    const RunManifest m1 = execute(cfg);
    CHECK(m1.pass);
    const Json meta = read_json(cfg.output_dir + "/solve.json");
    CHECK(meta["residual_norm"].get<double>() <= 1e-10);
    std::ifstream csv(cfg.output_dir + "/field.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == "s,t,value");
    cfg.output_dir = scratch("solve_again");
    const RunManifest m2 = execute(cfg);
    for (std::size_t i = 0; i < m1.artifacts.size(); ++i) CHECK(m1.artifacts[i].sha256 == m2.artifacts[i].sha256);
}

TEST_CASE("asymptotic command reports stages and certificates") {
    RunConfig cfg = parse_config_args({"solve-asymptotic", "--radii", "3,4,5", "--certify", "x=0,3.14159"});
    cfg.output_dir = scratch("asym");
    const RunManifest m = execute(cfg);
    CHECK(m.pass);
    const Json rep = read_json(cfg.output_dir + "/report.json");
    CHECK(rep["stages"].size() == 3);
    CHECK(rep["certificates"].size() == 2);
    CHECK(fs::exists(cfg.output_dir + "/stage_2.csv"));
}

TEST_CASE("error records and exit codes") {
    try {
        parse_config(R"({"command":"solve","p":0.5})");
    } catch (const std::exception& e) {
        CHECK(exit_code_for(e) == kExitUsage);
        CHECK(error_record(e)["locator"] == "$.p");
    }
    const NumericalFailure nf("stalled", 1e-3, 7);
    CHECK(exit_code_for(nf) == kExitNumerical);
    CHECK(error_record(nf)["iterations"] == 7);
    CHECK(exit_code_for(InvalidArgument("bad")) == kExitUsage);
}

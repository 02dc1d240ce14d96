#include "hypgraph/config.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "hypgraph/error.hpp"

namespace hypgraph {

namespace {

const std::vector<std::pair<Command, std::string>> kCommands = {
    {Command::Barrier, "barrier"},   {Command::Solve, "solve"},         {Command::SolveAsymptotic, "solve-asymptotic"},
    {Command::Nonexist, "nonexist"}, {Command::Constants, "constants"}, {Command::Verify, "verify"}};

const std::set<std::string> kKeys = {
    "command", "manifold", "domain", "phi", "output_dir", "seed", "op", "p", "newton_tol", "max_iters",
    "continuation_steps", "h", "angular", "radius", "radii", "probes", "certify", "certify_width", "theta_conv",
    "burn_in", "eps", "n", "profile", "c", "A", "excess", "samples", "s_min", "s_max", "rho", "s", "levels",
    "controls"};

std::string loc(const std::string& key) { return "$." + key; }

double number(const Json& doc, const std::string& key) {
    const Json& v = doc.at(key);
    if (!v.is_number()) throw ConfigError(loc(key), "expected a number");
    return v.get<double>();
}

int integer(const Json& doc, const std::string& key) {
    const Json& v = doc.at(key);
    if (!v.is_number_integer()) throw ConfigError(loc(key), "expected an integer");
    return v.get<int>();
}

std::string text(const Json& doc, const std::string& key) {
    const Json& v = doc.at(key);
    if (!v.is_string()) throw ConfigError(loc(key), "expected a string");
    return v.get<std::string>();
}

std::vector<double> numbers(const Json& doc, const std::string& key) {
    const Json& v = doc.at(key);
    if (!v.is_array()) throw ConfigError(loc(key), "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) throw ConfigError(loc(key) + "[" + std::to_string(i) + "]", "expected a number");
        out.push_back(v[i].get<double>());
    }
    return out;
}

void require(bool ok, const std::string& key, const std::string& what) {
    if (!ok) throw ConfigError(loc(key), what);
}

// "4,5,6" or "start:stop:step".
std::vector<double> parse_list(const std::string& value, const std::string& flag) {
    std::vector<double> out;
    auto num = [&](const std::string& t) {
        try {
            std::size_t used = 0;
            const double v = std::stod(t, &used);
            if (used == t.size()) return v;
        } catch (const std::exception&) {
        }
        throw ConfigError(flag, "bad number '" + t + "'");
    };
    if (value.find(':') != std::string::npos) {
        std::vector<double> parts;
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(num(item));
        if (parts.size() != 3 || !(parts[2] > 0)) throw ConfigError(flag, "ranges are start:stop:step");
        for (double x = parts[0]; x <= parts[1] + 1e-9 * parts[2]; x += parts[2]) out.push_back(x);
        return out;
    }
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(num(item));
    return out;
}

}  // namespace

Command command_from_name(const std::string& name) {
    for (const auto& [c, n] : kCommands)
        if (n == name) return c;
    throw ConfigError(loc("command"), "unknown command '" + name + "'");
}

std::string command_name(Command c) {
    for (const auto& [k, n] : kCommands)
        if (k == c) return n;
    return "?";
}

SolveParams RunConfig::solve_params() const {
    SolveParams sp;
    sp.op = op;
    sp.p = p;
    sp.newton_tol = newton_tol;
    sp.max_iters = max_iters;
    sp.continuation_steps = continuation_steps;
    return sp;
}

unsigned seed_from_env() {
    const char* env = std::getenv("HYPGRAPH_SEED");
    if (!env || !*env) return 42;
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (*end != '\0') throw ConfigError("HYPGRAPH_SEED", "expected a nonnegative integer");
    return static_cast<unsigned>(v);
}

RunConfig config_from_json(const Json& doc) {
    if (!doc.is_object()) throw ConfigError("$", "expected a JSON object");
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (!kKeys.count(key)) throw ConfigError(loc(key), "unknown key");
    }
    if (!doc.contains("command")) throw ConfigError(loc("command"), "missing");
    RunConfig cfg;
    cfg.command = command_from_name(text(doc, "command"));
    cfg.seed = seed_from_env();

    if (doc.contains("manifold")) cfg.manifold = text(doc, "manifold");
    if (doc.contains("domain")) cfg.domain = text(doc, "domain");
    if (doc.contains("phi")) cfg.phi = text(doc, "phi");
    if (doc.contains("output_dir")) cfg.output_dir = text(doc, "output_dir");
    if (doc.contains("seed")) {
        const int v = integer(doc, "seed");
        require(v >= 0, "seed", "must be nonnegative");
        cfg.seed = static_cast<unsigned>(v);
    }
    if (doc.contains("op")) {
        const std::string op = text(doc, "op");
        if (op == "minimal-surface") cfg.op = OperatorKind::MinimalSurface;
        else if (op == "p-laplace") cfg.op = OperatorKind::PLaplace;
        else throw ConfigError(loc("op"), "expected 'minimal-surface' or 'p-laplace'");
    }
    if (doc.contains("p")) {
        cfg.p = number(doc, "p");
        require(cfg.p > 1, "p", "p must exceed 1");
        if (!doc.contains("op")) cfg.op = OperatorKind::PLaplace;
    }
    if (doc.contains("newton_tol")) cfg.newton_tol = number(doc, "newton_tol");
    require(cfg.newton_tol > 0, "newton_tol", "must be positive");
    if (doc.contains("max_iters")) cfg.max_iters = integer(doc, "max_iters");
    require(cfg.max_iters >= 1, "max_iters", "must be at least 1");
    if (doc.contains("continuation_steps")) cfg.continuation_steps = integer(doc, "continuation_steps");
    require(cfg.continuation_steps >= 1, "continuation_steps", "must be at least 1");
    if (doc.contains("h")) cfg.h = number(doc, "h");
    require(cfg.h > 0 && cfg.h <= 1, "h", "must lie in (0, 1]");
    if (doc.contains("angular")) cfg.angular = integer(doc, "angular");
    require(cfg.angular == 0 || cfg.angular >= 4, "angular", "must be 0 (auto) or at least 4");
    if (doc.contains("radius")) cfg.radius = number(doc, "radius");
    require(cfg.radius > 0, "radius", "must be positive");

    if (doc.contains("radii")) cfg.radii = numbers(doc, "radii");
    require(!cfg.radii.empty(), "radii", "must not be empty");
    for (std::size_t k = 0; k < cfg.radii.size(); ++k) {
        require(cfg.radii[k] > 0, "radii", "radii must be positive");
        require(k == 0 || cfg.radii[k] > cfg.radii[k - 1], "radii", "radii must be strictly increasing");
    }
    if (doc.contains("probes")) {
        const Json& v = doc.at("probes");
        if (!v.is_array()) throw ConfigError(loc("probes"), "expected an array of boxes");
        for (std::size_t i = 0; i < v.size(); ++i) {
            const std::string where = loc("probes") + "[" + std::to_string(i) + "]";
            if (!v[i].is_array() || (v[i].size() != 2 && v[i].size() != 4))
                throw ConfigError(where, "expected [x1_min, x1_max] or [x1_min, x1_max, x2_min, x2_max]");
            std::vector<double> b;
            for (const auto& x : v[i]) {
                if (!x.is_number()) throw ConfigError(where, "expected numbers");
                b.push_back(x.get<double>());
            }
            ProbeBox box{b[0], b[1], 0.0, 7.0};
            if (b.size() == 4) {
                box.x2_min = b[2];
                box.x2_max = b[3];
            }
            if (!(box.x1_max >= box.x1_min) || !(box.x2_max >= box.x2_min)) throw ConfigError(where, "empty box");
            cfg.probes.push_back(box);
        }
    }
    if (doc.contains("certify")) cfg.certify = numbers(doc, "certify");
    if (doc.contains("certify_width")) cfg.certify_width = number(doc, "certify_width");
    require(cfg.certify_width > 0 && cfg.certify_width < std::numbers::pi, "certify_width", "must lie in (0, pi)");
    if (doc.contains("theta_conv")) cfg.theta_conv = number(doc, "theta_conv");
    require(cfg.theta_conv > 0, "theta_conv", "must be positive");
    if (doc.contains("burn_in")) cfg.burn_in = integer(doc, "burn_in");
    require(cfg.burn_in >= 0, "burn_in", "must be nonnegative");

    if (doc.contains("eps")) cfg.eps = number(doc, "eps");
    require(cfg.eps > 0, "eps", "must be positive");
    if (doc.contains("n")) cfg.n = integer(doc, "n");
    require(cfg.n >= 2 && cfg.n <= 10, "n", "must lie in [2, 10]");
    if (doc.contains("profile")) cfg.profile = text(doc, "profile");
    require(cfg.profile == "g" || cfg.profile == "gp" || cfg.profile == "psi", "profile",
            "expected 'g', 'gp' or 'psi'");
    if (doc.contains("c")) cfg.c = number(doc, "c");
    require(cfg.c > 0, "c", "must be positive");
    if (doc.contains("A")) cfg.amplitude = number(doc, "A");
    require(cfg.amplitude >= 0, "A", "must be nonnegative");
    if (doc.contains("excess")) cfg.excess = number(doc, "excess");
    require(cfg.excess >= 0, "excess", "must be nonnegative");
    if (doc.contains("samples")) cfg.samples = integer(doc, "samples");
    require(cfg.samples >= 1 && cfg.samples <= 1000000, "samples", "must lie in [1, 1e6]");
    if (doc.contains("s_min")) cfg.s_min = number(doc, "s_min");
    if (doc.contains("s_max")) cfg.s_max = number(doc, "s_max");
    require(cfg.s_min > 0, "s_min", "must be positive");
    require(cfg.s_max >= cfg.s_min, "s_max", "must be at least s_min");

    if (doc.contains("rho")) cfg.rho = number(doc, "rho");
    require(cfg.rho > 0, "rho", "must be positive");
    if (doc.contains("s")) {
        cfg.s = number(doc, "s");
        require(*cfg.s > 0, "s", "must be positive");
    }
    if (doc.contains("levels")) cfg.levels = integer(doc, "levels");
    require(cfg.levels >= 1 && cfg.levels <= 6, "levels", "must lie in [1, 6]");
    if (doc.contains("controls")) {
        if (!doc.at("controls").is_boolean()) throw ConfigError(loc("controls"), "expected a boolean");
        cfg.controls = doc.at("controls").get<bool>();
    }
    if (cfg.command == Command::Nonexist && !doc.contains("radius")) cfg.radius = 8.0;

    // Referenced ids and presets must resolve.
    ModelManifold m = ModelManifold::hyperbolic(2);
    try {
        m = manifold_from_id(cfg.manifold);
    } catch (const InvalidArgument& e) {
        throw ConfigError(loc("manifold"), e.what());
    }
    if (cfg.command == Command::Solve || cfg.command == Command::SolveAsymptotic) {
        DomainSpec d;
        try {
            d = domain_from_id(cfg.domain, m);
        } catch (const InvalidArgument& e) {
            throw ConfigError(loc("domain"), e.what());
        }
        if (cfg.phi != "counterexample") {
            try {
                phi_preset(cfg.phi, d);
            } catch (const InvalidArgument& e) {
                throw ConfigError(loc("phi"), e.what());
            }
        } else if (d.kind != DomainKind::BallExterior && d.kind != DomainKind::HalfPlane) {
            throw ConfigError(loc("phi"), "counterexample data needs a ball-exterior or half-plane domain");
        }
    }
    cfg.echo = doc;
    return cfg;
}

RunConfig parse_config(const std::string& json_text) {
    Json doc;
    try {
        doc = Json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        const std::size_t upto = std::min<std::size_t>(e.byte, json_text.size());
        const long line = 1 + std::count(json_text.begin(), json_text.begin() + upto, '\n');
        throw ConfigError("line " + std::to_string(line), "malformed JSON");
    }
    return config_from_json(doc);
}

RunConfig parse_config_args(const std::vector<std::string>& args) {
    if (args.empty()) throw ConfigError("argv", "missing subcommand");
    const std::string command = args[0];
    command_from_name(command);

    CLI::App app{"hypgraph " + command};
    app.set_help_flag();
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file; flags override its keys");

    struct Flag {
        std::string key;
        std::string value;
        bool numeric;
    };
    std::vector<Flag> flags;
    std::vector<std::string> probe_values, certify_values;
    auto flag = [&](const std::string& key, bool numeric) {
        flags.push_back({key, "", numeric});
    };
    const std::vector<std::pair<std::string, bool>> table = {
        {"manifold", false}, {"domain", false}, {"phi", false},    {"output_dir", false}, {"op", false},
        {"p", true},         {"newton_tol", true}, {"max_iters", true}, {"continuation_steps", true},
        {"h", true},         {"angular", true}, {"radius", true},  {"radii", false},     {"certify_width", true},
        {"theta_conv", true}, {"burn_in", true}, {"eps", true},    {"n", true},          {"profile", false},
        {"c", true},         {"A", true},        {"excess", true},  {"samples", true},    {"s_min", true},
        {"s_max", true},     {"rho", true},      {"s", true},       {"levels", true},     {"seed", true}};
    flags.reserve(table.size());
    for (const auto& [key, numeric] : table) flag(key, numeric);
    for (auto& f : flags) {
        std::string name = "--" + f.key;
        std::replace(name.begin(), name.end(), '_', '-');
        app.add_option(name, f.value);
    }
    app.add_option("--probes", probe_values, "probe box x1_min:x1_max[:x2_min:x2_max]");
    app.add_option("--certify", certify_values, "attainment certificate at x=<angle>");
    bool no_controls = false;
    app.add_flag("--no-controls", no_controls, "skip the control runs of nonexist");

    std::vector<std::string> rest(args.begin() + 1, args.end());
    std::reverse(rest.begin(), rest.end());
    try {
        app.parse(rest);
    } catch (const CLI::ParseError& e) {
        throw ConfigError("argv", e.what());
    }

    Json doc = Json::object();
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw ConfigError("--config", "cannot read '" + config_path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        try {
            doc = Json::parse(ss.str());
        } catch (const nlohmann::json::parse_error& e) {
            const std::string body = ss.str();
            const std::size_t upto = std::min<std::size_t>(e.byte, body.size());
            throw ConfigError(config_path + ":" + std::to_string(1 + std::count(body.begin(), body.begin() + upto, '\n')),
                              "malformed JSON");
        }
        if (!doc.is_object()) throw ConfigError(config_path, "expected a JSON object");
        if (doc.contains("command") && doc["command"] != command)
            throw ConfigError(config_path + ": $.command", "does not match the subcommand");
    }
    doc["command"] = command;
    for (const auto& f : flags) {
        if (f.value.empty()) continue;
        const std::string where = "--" + f.key;
        if (f.key == "radii") {
            doc["radii"] = parse_list(f.value, where);
        } else if (f.numeric) {
            const auto nums = parse_list(f.value, where);
            if (nums.size() != 1) throw ConfigError(where, "expected a single number");
            const bool integral = f.key == "max_iters" || f.key == "continuation_steps" || f.key == "angular" ||
                                  f.key == "burn_in" || f.key == "n" || f.key == "samples" || f.key == "levels" ||
                                  f.key == "seed";
            if (integral) {
                if (nums[0] != std::floor(nums[0])) throw ConfigError(where, "expected an integer");
                doc[f.key] = static_cast<long long>(nums[0]);
            } else {
                doc[f.key] = nums[0];
            }
        } else {
            doc[f.key] = f.value;
        }
    }
    if (!probe_values.empty()) {
        Json boxes = Json::array();
        for (const auto& v : probe_values) {
            std::string spec = v;
            std::replace(spec.begin(), spec.end(), ':', ',');
            boxes.push_back(parse_list(spec, "--probes"));
        }
        doc["probes"] = boxes;
    }
    if (!certify_values.empty()) {
        Json angles = Json::array();
        for (const auto& v : certify_values) {
            if (v.rfind("x=", 0) != 0) throw ConfigError("--certify", "expected x=<angle>");
            for (double a : parse_list(v.substr(2), "--certify")) angles.push_back(a);
        }
        doc["certify"] = angles;
    }
    if (no_controls) doc["controls"] = false;
    return config_from_json(doc);
}

}  // namespace hypgraph

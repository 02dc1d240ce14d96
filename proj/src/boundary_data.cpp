#include "hypgraph/boundary_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

#include "hypgraph/barriers.hpp"
#include "hypgraph/error.hpp"

namespace hypgraph {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double a) {
    a = std::fmod(a, kTwoPi);
    return a < 0 ? a + kTwoPi : a;
}

double parse_number(const std::string& text, const std::string& where) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw InvalidArgument("phi preset '" + where + "': bad number '" + text + "'");
}

BoundaryData table_data(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("phi table: cannot open '" + path + "'");
    std::vector<std::pair<double, double>> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double a, v;
        if (!(ss >> a >> v)) {
            if (rows.empty() && line_no == 1) continue;  // header
            throw InvalidArgument("phi table " + path + ":" + std::to_string(line_no) + ": expected 'angle,value'");
        }
        rows.push_back({wrap(a), v});
    }
    if (rows.empty()) throw InvalidArgument("phi table: no rows in '" + path + "'");
    std::sort(rows.begin(), rows.end());
    auto f = [rows](double angle) {
        // Periodic linear interpolation.
        const double a = wrap(angle);
        auto hi = std::upper_bound(rows.begin(), rows.end(), std::make_pair(a, -HUGE_VAL));
        const auto& right = hi == rows.end() ? rows.front() : *hi;
        const auto& left = hi == rows.begin() ? rows.back() : *(hi - 1);
        double span = right.first - left.first;
        double off = a - left.first;
        if (span <= 0) span += kTwoPi;
        if (off < 0) off += kTwoPi;
        if (span == 0) return left.second;
        return left.second + (right.second - left.second) * off / span;
    };
    return BoundaryData::angular("table:" + path, f);
}

}  // namespace

BoundaryData BoundaryData::constant(double c) {
    BoundaryData b;
    std::ostringstream os;
    os << "const:" << c;
    b.name = os.str();
    b.finite = [c](const Vec3<double>&) { return c; };
    b.ideal = [c](double) { return c; };
    return b;
}

BoundaryData BoundaryData::angular(std::string name, std::function<double(double)> f) {
    BoundaryData b;
    b.name = std::move(name);
    b.finite = [f](const Vec3<double>& x) { return f(polar_angle(x)); };
    b.ideal = f;
    return b;
}

BoundaryData phi_preset(const std::string& spec, const DomainSpec& domain) {
    if (spec == "cos") return BoundaryData::angular("cos", [](double a) { return std::cos(a); });
    if (spec.rfind("const:", 0) == 0) return BoundaryData::constant(parse_number(spec.substr(6), spec));
    if (spec.rfind("step:", 0) == 0) {
        std::vector<std::pair<double, double>> ranges;
        std::stringstream ss(spec.substr(5));
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto colon = item.find(':');
            if (colon == std::string::npos) throw InvalidArgument("phi preset '" + spec + "': ranges are a:b");
            const double a = parse_number(item.substr(0, colon), spec);
            const double b = parse_number(item.substr(colon + 1), spec);
            if (!(b > a)) throw InvalidArgument("phi preset '" + spec + "': empty range");
            ranges.push_back({a, b});
        }
        if (ranges.empty()) throw InvalidArgument("phi preset '" + spec + "': no ranges");
        return BoundaryData::angular(spec, [ranges](double angle) {
            for (const auto& [a, b] : ranges)
                if (a + wrap(angle - a) <= b) return 1.0;
            return 0.0;
        });
    }
    if (spec.rfind("table:", 0) == 0) return table_data(spec.substr(6));
    if (spec == "g" || spec.rfind("gp:", 0) == 0) {
        if (domain.kind != DomainKind::HalfPlane)
            throw InvalidArgument("phi preset '" + spec + "' is defined on half-plane domains only");
        std::function<double(double)> profile;
        if (spec == "g") {
            profile = [](double s) { return g_eval(2, s).value; };
        } else {
            const double c = parse_number(spec.substr(3), spec);
            profile = [c](double s) { return gp_eval(2, 2.0, c, s).value; };
        }
        BoundaryData b;
        b.name = spec;
        auto along = [profile](const Vec3<double>& x) { return profile(std::asinh(x(2))); };
        b.finite = along;
        b.extension = along;
        b.ideal = [](double) { return 0.0; };
        return b;
    }
    throw InvalidArgument("unknown phi preset '" + spec + "'");
}

double ideal_direction(const Vec3<double>& x, const Vec3<double>& vertex) {
    if (vertex(1) == 0.0 && vertex(2) == 0.0) return polar_angle(x);
    const Eigen::Matrix3d T = recentering_isometry(vertex);
    const Vec3<double> y = T * x;
    const double alpha = polar_angle(y);
    // Lorentz inverse: eta T^t eta.
    const Eigen::Matrix3d eta = Eigen::Vector3d(-1, 1, 1).asDiagonal();
    const Vec3<double> xi = eta * T.transpose() * eta * ideal_point(alpha);
    return std::atan2(xi(2), xi(1));
}

Eigen::VectorXd transfer_boundary_data(const BoundaryData& phi, const Grid& grid, const DomainSpec& domain,
                                       const Vec3<double>& cone_vertex) {
    const bool centered = cone_vertex(1) == 0.0 && cone_vertex(2) == 0.0;
    if (!centered && !domain.manifold.is_hyperbolic())
        throw InvalidArgument("transfer_boundary_data: off-center cone vertices need the hyperbolic plane");

    // Shared ideal endpoints of finite and ideal boundary.
    struct Endpoint {
        double angle;
        double finite_value;
    };
    std::vector<Endpoint> endpoints;
    if (!phi.extension) {
        for (const auto& piece : domain.finite_boundary) {
            for (double e : piece.ideal_endpoints) {
                const double vf = phi.finite(piece.approach(e, 60.0));
                const double vi = phi.ideal(e);
                if (std::abs(vf - vi) > 1e-6 * (1.0 + std::abs(vi))) {
                    if (phi.blending_window <= 0.0) {
                        std::ostringstream os;
                        os << "transfer_boundary_data: discontinuous data at ideal endpoint " << e << " (finite "
                           << vf << ", ideal " << vi << ")";
                        throw DiscontinuousData(os.str());
                    }
                    endpoints.push_back({e, vf});
                }
            }
        }
    }

    Eigen::VectorXd out = Eigen::VectorXd::Zero(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        const Node& node = grid.nodes[i];
        if (node.tag == NodeTag::FiniteBoundary) {
            out(i) = phi.finite(node.point);
        } else if (node.tag == NodeTag::TruncationCap) {
            if (phi.extension) {
                out(i) = phi.extension(node.point);
                continue;
            }
            const double angle = ideal_direction(node.point, cone_vertex);
            double v = phi.ideal(angle);
            for (const auto& ep : endpoints) {
                const double dist = angular_distance(angle, ep.angle);
                if (dist < phi.blending_window) {
                    const double lambda = dist / phi.blending_window;
                    v = lambda * v + (1.0 - lambda) * ep.finite_value;
                }
            }
            out(i) = v;
        }
    }
    return out;
}

}  // namespace hypgraph

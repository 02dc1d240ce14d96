#include "hypgraph/io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <iterator>
#include <memory>

#include "hypgraph/error.hpp"

namespace hypgraph {

namespace {

const char* op_name(OperatorKind op) { return op == OperatorKind::MinimalSurface ? "minimal-surface" : "p-laplace"; }

}  // namespace

void write_field_csv(const std::string& path, const Grid& grid, const Eigen::VectorXd& values) {
    if (values.size() != grid.size()) throw InvalidArgument("write_field_csv: field does not match grid");
    std::unique_ptr<FILE, int (*)(FILE*)> f(std::fopen(path.c_str(), "w"), &std::fclose);
    if (!f) throw InvalidArgument("cannot write '" + path + "'");
    std::fputs(grid.chart == ChartKind::Fermi ? "s,t,value\n" : "r,theta,value\n", f.get());
    for (int i = 0; i < grid.size(); ++i)
        std::fprintf(f.get(), "%.17g,%.17g,%.17g\n", grid.nodes[i].x1, grid.nodes[i].x2, values(i));
}

void write_json(const std::string& path, const Json& doc) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write '" + path + "'");
    out << doc.dump(2) << '\n';
}

Json to_json(const SolveMetadata& meta) {
    return Json{{"iterations", meta.iterations},
                {"continuation_stages", meta.continuation_stages},
                {"residual_norm", meta.residual_norm},
                {"energy", meta.energy}};
}

Json to_json(const SupersolutionCertificate& cert) {
    Json params{{"n", cert.profile.n}, {"operator", op_name(cert.op)}};
    if (cert.profile.kind == ProfileKind::GP) {
        params["p"] = cert.profile.p;
        params["c"] = cert.profile.scale;
    }
    if (cert.profile.kind == ProfileKind::Psi) params["A"] = cert.profile.scale;
    params["tolerance"] = cert.tolerance;
    params["worst_case_laplacian"] = cert.worst_case_laplacian_used;
    return Json{{"profile", cert.profile.name()},
                {"params", params},
                {"sample_grid", cert.samples},
                {"residuals", cert.residuals},
                {"max_residual", cert.max_residual},
                {"pass", cert.pass}};
}

Json to_json(const AsymptoticReport& report) {
    Json stages = Json::array();
    for (const auto& st : report.stages) {
        Json s = to_json(st.field.meta);
        s["radius"] = st.radius;
        s["nodes"] = st.grid.size();
        stages.push_back(s);
    }
    return Json{{"stages", stages},
                {"probe_differences", report.differences},
                {"monotone", report.monotone},
                {"converged", report.converged}};
}

Json to_json(const AttainmentCertificate& cert) {
    return Json{{"ideal_angle", cert.ideal_angle},
                {"half_width", cert.half_width},
                {"eps", cert.eps},
                {"height", cert.height},
                {"measured_sup_error", cert.measured_sup_error},
                {"barrier_bound", cert.barrier_bound},
                {"min_margin", cert.min_margin},
                {"slack", cert.slack},
                {"nodes_checked", cert.nodes_checked},
                {"pass", cert.pass}};
}

Json to_json(const BarrierBound& b) {
    return Json{{"u_near_y", b.u_near_y},
                {"trace_at_y", b.trace_at_y},
                {"sphere_sup", b.sphere_sup},
                {"outside_sup", b.outside_sup},
                {"ceiling", b.ceiling},
                {"collar_violation", b.collar_violation},
                {"exterior_violation", b.exterior_violation},
                {"collar_nodes", b.collar_nodes},
                {"exterior_nodes", b.exterior_nodes}};
}

Json to_json(const GapReport& report) {
    Json levels = Json::array();
    for (const auto& l : report.levels) {
        Json j{{"h", l.h}, {"nodes", l.grid.size()}, {"solve", to_json(l.field.meta)}, {"bound", to_json(l.bound)},
               {"trace_error", l.trace_error}};
        levels.push_back(j);
    }
    return Json{{"amplitude", report.amplitude},
                {"ceiling", report.ceiling},
                {"radius", report.radius},
                {"levels", levels},
                {"gap_persists", report.gap_persists},
                {"attains_data", report.attains_data},
                {"barriers_dominate", report.barriers_dominate}};
}

Json to_json(const CounterexampleSpec& spec) {
    return Json{{"domain", spec.domain.id()},
                {"y", {spec.y(0), spec.y(1), spec.y(2)}},
                {"s", spec.s},
                {"eps", spec.eps},
                {"A", spec.A},
                {"B", spec.B},
                {"amplitude", spec.amplitude},
                {"critical_amplitude", spec.critical_amplitude()},
                {"ceiling", spec.ceiling()}};
}

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot read '" + path + "'");
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw InvalidArgument("sha256 failed for '" + path + "'");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 15]);
    }
    return out;
}

}  // namespace hypgraph

#include "hypgraph/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "hypgraph/error.hpp"

namespace hypgraph {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a < 0) a += 2.0 * kPi;
    return a;
}

Vec3<double> from_disk(double zx, double zy) {
    const double m = zx * zx + zy * zy;
    return Vec3<double>(1.0 + m, 2.0 * zx, 2.0 * zy) / (1.0 - m);
}

std::map<std::string, double> parse_params(const std::string& text, const std::string& where) {
    std::map<std::string, double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw InvalidArgument(where + ": expected key=value, got '" + item + "'");
        try {
            std::size_t used = 0;
            const std::string value = item.substr(eq + 1);
            out[item.substr(0, eq)] = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw InvalidArgument(where + ": bad number in '" + item + "'");
        }
    }
    return out;
}

double take(std::map<std::string, double>& params, const std::string& key, double fallback, bool required,
            const std::string& where) {
    auto it = params.find(key);
    if (it == params.end()) {
        if (required) throw InvalidArgument(where + ": missing parameter '" + key + "'");
        return fallback;
    }
    const double v = it->second;
    params.erase(it);
    return v;
}

void reject_leftovers(const std::map<std::string, double>& params, const std::string& where) {
    if (!params.empty()) throw InvalidArgument(where + ": unknown parameter '" + params.begin()->first + "'");
}

}  // namespace

double angular_distance(double a, double b) {
    const double d = wrap_angle(a - b);
    return std::min(d, 2.0 * kPi - d);
}

// ---------------------------------------------------------------- manifold

ModelManifold::ModelManifold(int dimension, WarpFamily family, double parameter, double r_max)
    : n_(dimension), family_(family), param_(parameter), r_max_(r_max) {
    if (n_ < 2) throw InvalidArgument("ModelManifold: dimension must be >= 2");
    if (!(r_max_ > 0)) throw InvalidArgument("ModelManifold: working radius must be positive");
    if (family_ == WarpFamily::Hyperbolic) {
        param_ = 1.0;
    } else if (family_ == WarpFamily::ConstantCurv) {
        if (!(param_ >= 1.0)) throw InvalidArgument("ModelManifold: const-curvature profile needs k >= 1");
        r_max_ = std::min(r_max_, 700.0 / param_);
    } else if (!(param_ >= 0.0)) {
        throw InvalidArgument("ModelManifold: mixed profile needs a >= 0");
    }
    r_max_ = std::min(r_max_, 700.0);
    for (int i = 1; i <= 2000; ++i) {
        const double r = r_max_ * i / 2000.0;
        if (!(warp(r) > 0) || !(warp_d1(r) > 0))
            throw InvalidArgument("ModelManifold: warp must be positive and increasing");
        if (radial_curvature(r) > -1.0 + 1e-12)
            throw InvalidArgument("ModelManifold: radial curvature exceeds -1");
    }
}

double ModelManifold::warp(double r) const {
    switch (family_) {
        case WarpFamily::Hyperbolic: return std::sinh(r);
        case WarpFamily::ConstantCurv: return std::sinh(param_ * r) / param_;
        case WarpFamily::SinhMixed: return (1.0 + param_) * std::sinh(r) - param_ * r;
    }
    return 0.0;
}

double ModelManifold::warp_d1(double r) const {
    switch (family_) {
        case WarpFamily::Hyperbolic: return std::cosh(r);
        case WarpFamily::ConstantCurv: return std::cosh(param_ * r);
        case WarpFamily::SinhMixed: return (1.0 + param_) * std::cosh(r) - param_;
    }
    return 0.0;
}

double ModelManifold::warp_d2(double r) const {
    switch (family_) {
        case WarpFamily::Hyperbolic: return std::sinh(r);
        case WarpFamily::ConstantCurv: return param_ * std::sinh(param_ * r);
        case WarpFamily::SinhMixed: return (1.0 + param_) * std::sinh(r);
    }
    return 0.0;
}

double ModelManifold::radial_curvature(double r) const {
    switch (family_) {
        case WarpFamily::Hyperbolic: return -1.0;
        case WarpFamily::ConstantCurv: return -param_ * param_;
        case WarpFamily::SinhMixed: return -warp_d2(r) / warp(r);
    }
    return 0.0;
}

double ModelManifold::tangential_curvature(double r) const {
    switch (family_) {
        case WarpFamily::Hyperbolic: return -1.0;
        case WarpFamily::ConstantCurv: return -param_ * param_;
        case WarpFamily::SinhMixed: {
            const double f = warp(r);
            const double d1 = warp_d1(r);
            return (1.0 - d1) * (1.0 + d1) / (f * f);
        }
    }
    return 0.0;
}

double ModelManifold::min_curvature(double r) const {
    if (n_ == 2) return radial_curvature(r);
    return std::min(radial_curvature(r), tangential_curvature(r));
}

std::string ModelManifold::id() const {
    std::ostringstream os;
    switch (family_) {
        case WarpFamily::Hyperbolic:
            if (n_ <= 3) return "h" + std::to_string(n_);
            os << "warped:sinh:n=" << n_;
            break;
        case WarpFamily::ConstantCurv: os << "warped:const:k=" << param_ << ",n=" << n_; break;
        case WarpFamily::SinhMixed: os << "warped:mixed:a=" << param_ << ",n=" << n_; break;
    }
    return os.str();
}

// ---------------------------------------------------------------- charts

std::pair<double, double> Chart::metric(const ModelManifold& m, double x1) const {
    if (kind == ChartKind::GeodesicPolar) {
        const double f = m.warp(x1);
        return {1.0, f * f};
    }
    const double c = std::cosh(x1);
    return {1.0, c * c};
}

double Chart::volume_density(const ModelManifold& m, double x1) const {
    return kind == ChartKind::GeodesicPolar ? m.warp(x1) : std::cosh(x1);
}

Vec3<double> Chart::to_hyperboloid(double x1, double x2) const {
    return kind == ChartKind::GeodesicPolar ? from_polar(x1, x2) : from_fermi(x1, x2);
}

double laplacian_of_distance(const ModelManifold& m, DistanceBase base, double s) {
    if (!(s > 0)) throw InvalidArgument("laplacian_of_distance: distance must be positive");
    const double nm1 = m.dimension() - 1;
    if (base == DistanceBase::Point) {
        switch (m.family()) {
            case WarpFamily::Hyperbolic: return nm1 / std::tanh(s);
            case WarpFamily::ConstantCurv: return nm1 * m.parameter() / std::tanh(m.parameter() * s);
            case WarpFamily::SinhMixed: return nm1 * m.warp_d1(s) / m.warp(s);
        }
    }
    switch (m.family()) {
        case WarpFamily::Hyperbolic: return nm1 * std::tanh(s);
        case WarpFamily::ConstantCurv: return nm1 * m.parameter() * std::tanh(m.parameter() * s);
        case WarpFamily::SinhMixed: break;
    }
    throw InvalidArgument("laplacian_of_distance: totally geodesic hypersurfaces are only cataloged for constant curvature");
}

// ---------------------------------------------------------------- domains

bool IdealSet::contains(double angle, double tol) const {
    if (full_circle) return true;
    for (const auto& [a, b] : arcs) {
        const double x = a + wrap_angle(angle - a);
        if (x <= b + tol || angular_distance(angle, a) <= tol) return true;
    }
    for (double p : points)
        if (angular_distance(angle, p) <= tol) return true;
    return false;
}

DomainSpec DomainSpec::full(const ModelManifold& m) {
    DomainSpec d;
    d.kind = DomainKind::Full;
    d.manifold = m;
    d.ideal_boundary.full_circle = true;
    return d;
}

DomainSpec DomainSpec::ball_exterior(const ModelManifold& m, double rho) {
    if (!(rho > 0)) throw InvalidArgument("ball-exterior: rho must be positive");
    DomainSpec d;
    d.kind = DomainKind::BallExterior;
    d.manifold = m;
    d.rho = rho;
    d.ideal_boundary.full_circle = true;
    const double h = -(m.dimension() - 1) * m.warp_d1(rho) / m.warp(rho);
    d.finite_boundary.push_back({"sphere", [h](const Vec3<double>&) { return h; }, {}, nullptr});
    return d;
}

DomainSpec DomainSpec::disk(const ModelManifold& m, double rho) {
    if (!(rho > 0)) throw InvalidArgument("disk: rho must be positive");
    DomainSpec d;
    d.kind = DomainKind::Disk;
    d.manifold = m;
    d.rho = rho;
    const double h = (m.dimension() - 1) * m.warp_d1(rho) / m.warp(rho);
    d.finite_boundary.push_back({"sphere", [h](const Vec3<double>&) { return h; }, {}, nullptr});
    return d;
}

DomainSpec DomainSpec::half_plane(double offset) {
    DomainSpec d;
    d.kind = DomainKind::HalfPlane;
    d.chart.kind = ChartKind::Fermi;
    d.offset = offset;
    d.ideal_boundary.arcs.push_back({0.0, kPi});
    const double h = -std::tanh(offset);
    d.finite_boundary.push_back({"equidistant",
                                 [h](const Vec3<double>&) { return h; },
                                 {0.0, kPi},
                                 [offset](double endpoint, double depth) {
                                     return from_fermi(offset, endpoint < 0.5 * kPi ? depth : -depth);
                                 }});
    return d;
}

DomainSpec DomainSpec::horoball(double angle, double depth) {
    DomainSpec d;
    d.kind = DomainKind::Horoball;
    d.horo_angle = angle;
    d.horo_depth = depth;
    d.ideal_boundary.points.push_back(angle);
    d.finite_boundary.push_back({"horocycle",
                                 [](const Vec3<double>&) { return 1.0; },
                                 {angle, angle},
                                 [angle, depth](double, double far) {
                                     // Euclidean circle in the disk tangent to the ideal point.
                                     const double re = 0.5 * (1.0 - std::tanh(0.5 * depth));
                                     const double phi = kPi / (1.0 + far);
                                     const double cx = (1.0 - re) * std::cos(angle) + re * std::cos(angle + phi);
                                     const double cy = (1.0 - re) * std::sin(angle) + re * std::sin(angle + phi);
                                     return from_disk(cx, cy);
                                 }});
    return d;
}

bool DomainSpec::contains(const Vec3<double>& x) const {
    switch (kind) {
        case DomainKind::Full: return true;
        case DomainKind::BallExterior: return polar_radius(x) > rho;
        case DomainKind::Disk: return polar_radius(x) < rho;
        case DomainKind::HalfPlane: return std::asinh(x(2)) > offset;
        case DomainKind::Horoball: return busemann(x, horo_angle) < -horo_depth;
    }
    return false;
}

std::optional<double> DomainSpec::boundary_distance(const Vec3<double>& x) const {
    switch (kind) {
        case DomainKind::Full: return std::nullopt;
        case DomainKind::BallExterior: return polar_radius(x) - rho;
        case DomainKind::Disk: return rho - polar_radius(x);
        case DomainKind::HalfPlane: return std::asinh(x(2)) - offset;
        case DomainKind::Horoball: return -horo_depth - busemann(x, horo_angle);
    }
    return std::nullopt;
}

double DomainSpec::laplacian_of_boundary_distance(const Vec3<double>& x) const {
    const double nm1 = manifold.dimension() - 1;
    switch (kind) {
        case DomainKind::Full: break;
        case DomainKind::BallExterior:
            return laplacian_of_distance(manifold, DistanceBase::Point, polar_radius(x));
        case DomainKind::Disk:
            return -laplacian_of_distance(manifold, DistanceBase::Point, polar_radius(x));
        case DomainKind::HalfPlane: return nm1 * std::tanh(std::asinh(x(2)));
        case DomainKind::Horoball: return -nm1;
    }
    throw InvalidArgument("laplacian_of_boundary_distance: domain has no finite boundary");
}

std::string DomainSpec::id() const {
    std::ostringstream os;
    switch (kind) {
        case DomainKind::Full: return "full";
        case DomainKind::BallExterior: os << "ball-exterior:rho=" << rho; break;
        case DomainKind::Disk: os << "disk:rho=" << rho; break;
        case DomainKind::HalfPlane:
            if (offset == 0.0) return "halfplane";
            os << "halfplane:offset=" << offset;
            break;
        case DomainKind::Horoball: os << "horoball:angle=" << horo_angle << ",depth=" << horo_depth; break;
    }
    return os.str();
}

double inward_mean_curvature(const DomainSpec& domain, const Vec3<double>& y, double tol) {
    if (domain.finite_boundary.empty())
        throw InvalidArgument("inward_mean_curvature: domain has no finite boundary (ideal points have no mean curvature)");
    const auto d = domain.boundary_distance(y);
    if (!d || std::abs(*d) > tol)
        throw InvalidArgument("inward_mean_curvature: point is not on the finite boundary");
    return domain.finite_boundary.front().mean_curvature(y);
}

bool sc_decay_check(const ModelManifold& m, double k, double eps, double r_star, double r_max, int samples) {
    if (!(r_star > 0)) throw InvalidArgument("sc_decay_check: R_star must be positive");
    if (!(r_max >= r_star)) throw InvalidArgument("sc_decay_check: empty radius range");
    if (!(k >= 1) || !(eps > 0)) throw InvalidArgument("sc_decay_check: need k >= 1 and eps > 0");
    if (r_max + 1.0 > m.working_radius())
        throw InvalidArgument("sc_decay_check: curvature not evaluable on [R_star, R_max + 1]");
    // Running minimum of the curvature over a fixed radial sample of [0, R_max + 1].
    const int radial = 4000;
    std::vector<double> running(radial + 1);
    double current = 0.0;
    for (int i = 0; i <= radial; ++i) {
        const double r = std::max(1e-6, (r_max + 1.0) * i / radial);
        current = (i == 0) ? m.min_curvature(r) : std::min(current, m.min_curvature(r));
        running[i] = current;
    }
    for (int j = 0; j < samples; ++j) {
        const double R = samples == 1 ? r_star : r_star + (r_max - r_star) * j / (samples - 1);
        const int idx = std::min(radial, static_cast<int>(std::ceil((R + 1.0) / (r_max + 1.0) * radial)));
        const double bound = -std::exp(2.0 * k * R) / std::pow(R, 2.0 + 2.0 * eps);
        if (running[idx] < bound) return false;
    }
    return true;
}

// ---------------------------------------------------------------- witnesses

double SCWitness::distance(const Vec3<double>& x) const {
    if (kind == WitnessKind::GeodesicHalfPlane) return geodesic->signed_distance(x);
    if (ball_center(0) == 1.0 && ball_center(1) == 0.0 && ball_center(2) == 0.0)
        return polar_radius(x) - ball_radius;
    return hypgraph::distance(x, ball_center) - ball_radius;
}

bool SCWitness::contains(const Vec3<double>& x) const { return distance(x) > 0 && domain.contains(x); }

double SCWitness::laplacian_lower_bound(double s) const {
    return (domain.manifold.dimension() - 1) * std::tanh(s);
}

DistanceBase SCWitness::base() const {
    return kind == WitnessKind::GeodesicHalfPlane ? DistanceBase::TotallyGeodesicHypersurface : DistanceBase::Point;
}

SCWitness sc_witness(const DomainSpec& domain, double ideal_angle, double half_width) {
    if (!(half_width > 0) || !(half_width < kPi))
        throw InvalidArgument("sc_witness: neighborhood half-width must lie in (0, pi)");
    if (!domain.ideal_boundary.contains(ideal_angle, 1e-9))
        throw InvalidArgument("sc_witness: point is not in the ideal boundary of the domain");
    SCWitness w;
    w.domain = domain;
    w.ideal_angle = ideal_angle;

    const bool hyperbolic2 = domain.manifold.is_hyperbolic() && domain.manifold.dimension() == 2;
    switch (domain.kind) {
        case DomainKind::Full:
        case DomainKind::HalfPlane:
        case DomainKind::BallExterior: {
            if (!hyperbolic2) throw InvalidArgument("sc_witness: half-plane witnesses need the hyperbolic plane");
            double width = std::min(half_width, 0.5 * kPi);
            if (domain.kind == DomainKind::BallExterior) {
                // Keep the cutting geodesic strictly outside the excluded ball.
                width = std::min(width, 0.999 * std::asin(1.0 / std::cosh(domain.rho)));
            }
            w.kind = WitnessKind::GeodesicHalfPlane;
            w.geodesic = Geodesic::from_endpoints(ideal_angle, width);
            w.arc_half_width = width;
            return w;
        }
        case DomainKind::Horoball: {
            // V = domain minus a ball about o, large enough that the part of the
            // horocycle outside it stays within the neighborhood.
            const auto& piece = domain.finite_boundary.front();
            double radius = 0.0;
            for (int i = 0; i <= 4000; ++i) {
                const double far = 1e-3 * std::pow(1e6, i / 4000.0);
                const Vec3<double> p = piece.approach(ideal_angle, far);
                if (angular_distance(polar_angle(p), ideal_angle) >= half_width)
                    radius = std::max(radius, polar_radius(p));
            }
            w.kind = WitnessKind::BallComplement;
            w.ball_radius = radius + 1e-3;
            w.arc_half_width = half_width;
            return w;
        }
        case DomainKind::Disk: break;
    }
    throw InvalidArgument("sc_witness: unsupported domain shape");
}

// ---------------------------------------------------------------- ids

ModelManifold manifold_from_id(const std::string& id) {
    if (id == "h2") return ModelManifold::hyperbolic(2);
    if (id == "h3") return ModelManifold::hyperbolic(3);
    const std::string prefix = "warped:";
    if (id.rfind(prefix, 0) != 0) throw InvalidArgument("unknown manifold id '" + id + "'");
    std::string rest = id.substr(prefix.size());
    const auto colon = rest.find(':');
    const std::string family = rest.substr(0, colon);
    auto params = parse_params(colon == std::string::npos ? "" : rest.substr(colon + 1), id);
    const int n = static_cast<int>(take(params, "n", 2, false, id));
    if (family == "sinh") {
        reject_leftovers(params, id);
        return ModelManifold(n, WarpFamily::Hyperbolic);
    }
    if (family == "const") {
        const double k = take(params, "k", 1, true, id);
        reject_leftovers(params, id);
        return ModelManifold(n, WarpFamily::ConstantCurv, k);
    }
    if (family == "mixed") {
        const double a = take(params, "a", 1, true, id);
        reject_leftovers(params, id);
        return ModelManifold(n, WarpFamily::SinhMixed, a);
    }
    throw InvalidArgument("unknown warp profile '" + family + "'");
}

DomainSpec domain_from_id(const std::string& id, const ModelManifold& m) {
    const auto colon = id.find(':');
    const std::string kind = id.substr(0, colon);
    auto params = parse_params(colon == std::string::npos ? "" : id.substr(colon + 1), id);
    auto need_plane = [&] {
        if (!m.is_hyperbolic() || m.dimension() != 2)
            throw InvalidArgument("domain '" + id + "' needs the hyperbolic plane h2");
    };
    DomainSpec d;
    if (kind == "full") {
        d = DomainSpec::full(m);
    } else if (kind == "halfplane") {
        need_plane();
        d = DomainSpec::half_plane(take(params, "offset", 0.0, false, id));
    } else if (kind == "ball-exterior") {
        d = DomainSpec::ball_exterior(m, take(params, "rho", 1.0, true, id));
    } else if (kind == "disk") {
        d = DomainSpec::disk(m, take(params, "rho", 1.0, true, id));
    } else if (kind == "horoball") {
        need_plane();
        const double angle = take(params, "angle", 0.0, false, id);
        d = DomainSpec::horoball(angle, take(params, "depth", 1.0, false, id));
    } else {
        throw InvalidArgument("unknown domain id '" + id + "'");
    }
    reject_leftovers(params, id);
    if (m.dimension() != 2) throw InvalidArgument("domains are gridded for dimension 2 only");
    return d;
}

}  // namespace hypgraph

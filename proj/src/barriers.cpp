#include "hypgraph/barriers.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "hypgraph/quadrature.hpp"

namespace hypgraph {

namespace {

double log_cosh(double t) {
    t = std::abs(t);
    if (t < 20.0) {
        const double sh = std::sinh(0.5 * t);
        return std::log1p(2.0 * sh * sh);
    }
    return t + std::log1p(std::exp(-2.0 * t)) - std::numbers::ln2;
}

// 1 / sqrt(cosh^{2m} t - 1) with L = 2m log cosh t.
double g_integrand(int m, double t) {
    const double L = 2.0 * m * log_cosh(t);
    if (L > 700.0) return std::exp(-0.5 * L) / std::sqrt(-std::expm1(-L));
    return 1.0 / std::sqrt(std::expm1(L));
}

}  // namespace

ProfileValue<double> g_eval(int n, double s) {
    if (n < 2) throw InvalidArgument("g_eval: dimension must be >= 2");
    if (!(s > 0)) throw InvalidArgument("g_eval: s must be positive");
    const int m = n - 1;
    auto integrand = [m](double t) { return g_integrand(m, t); };
    // For t >= T: integrand <= 2^m e^{-m t} / sqrt(1 - cosh^{-2m} T).
    auto tail = [m](double T) {
        const double shrink = -std::expm1(-2.0 * m * log_cosh(T));
        return std::pow(2.0, m) * std::exp(-m * T) / (m * std::sqrt(shrink));
    };
    const QuadratureResult q = integrate_to_infinity(integrand, s, tail, 1e-10, 1e-13);
    const double L = 2.0 * m * log_cosh(s);
    const double ratio = std::exp(-0.5 * L) / std::pow(-std::expm1(-L), 1.5);  // C / (C - 1)^{3/2}
    return {q.value, -g_integrand(m, s), m * std::tanh(s) * ratio};
}

ProfileValue<double> gp_eval(int n, double p, double c, double s) {
    if (n < 2 || !(p > 1)) throw InvalidArgument("gp_eval: integral diverges unless n >= 2 and p > 1");
    if (!(c > 0)) throw InvalidArgument("gp_eval: scale c must be positive");
    if (!(s >= 0)) throw InvalidArgument("gp_eval: s must be nonnegative");
    const double alpha = (n - 1) / (p - 1);
    auto integrand = [alpha](double t) { return std::exp(-alpha * log_cosh(t)); };
    auto tail = [alpha](double T) { return std::pow(2.0, alpha) * std::exp(-alpha * T) / alpha; };
    const QuadratureResult q = integrate_to_infinity(integrand, s, tail, 1e-11, 1e-14);
    const double w = integrand(s);
    return {c * q.value, -c * w, c * alpha * std::tanh(s) * w};
}

double gp_suggested_scale(int n, double p, double height) {
    if (n < 2 || !(p > 1)) throw InvalidArgument("gp_suggested_scale: need n >= 2 and p > 1");
    return 2.0 * height * std::pow(std::cosh(1.0), (n - 1) / (p - 1));
}

double min_barrier_constant(double eps, unsigned seed) {
    if (!(eps > 0)) throw InvalidArgument("min_barrier_constant: eps must be positive");
    // Q(t) = P(t) + eps A^2 does not depend on A. In u = t + 1,
    // Q'(u) = -4 eps u^3 + 6 u^2 + 2 eps u - 1 < u^2 (6 - 2 eps u) for u >= 1,
    // so Q decreases beyond t = 3/eps and the maximum lies in [0, 3/eps].
    auto Q = [eps](double t) { return barrier_polynomial(t, eps, 0.0); };
    const double t_max = std::max(200.0, 3.0 / eps);
    int points = 10000;
    double jitter = 0.0;
    if (seed != 0) {
        std::mt19937 rng(seed);
        points += static_cast<int>(rng() % 997);
        jitter = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    }
    const double step = t_max / points;
    double best_t = 0.0;
    double best_q = Q(0.0);
    for (int i = 0; i <= points; ++i) {
        const double t = std::min(t_max, (i + jitter) * step);
        const double q = Q(t);
        if (q > best_q) {
            best_q = q;
            best_t = t;
        }
    }
    // Golden-section refinement on the bracketing cells.
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = std::max(0.0, best_t - 2.0 * step);
    double hi = best_t + 2.0 * step;
    double x1 = hi - ratio * (hi - lo);
    double x2 = lo + ratio * (hi - lo);
    double q1 = Q(x1);
    double q2 = Q(x2);
    while (hi - lo > 1e-10) {
        if (q1 < q2) {
            lo = x1;
            x1 = x2;
            q1 = q2;
            x2 = lo + ratio * (hi - lo);
            q2 = Q(x2);
        } else {
            hi = x2;
            x2 = x1;
            q2 = q1;
            x1 = hi - ratio * (hi - lo);
            q1 = Q(x1);
        }
    }
    const double q_max = std::max({best_q, Q(lo), Q(hi), Q(0.5 * (lo + hi))});
    return std::sqrt(q_max / eps);
}

double universal_constant_B(int n) {
    if (n < 2) throw InvalidArgument("universal_constant_B: dimension must be >= 2");
    return min_barrier_constant(1.0);
}

ProfileValue<double> BarrierProfile::eval(double s) const {
    switch (kind) {
        case ProfileKind::Psi: {
            const auto v = psi_eval(s);
            return {scale * v.value + offset, scale * v.d1, scale * v.d2};
        }
        case ProfileKind::G: {
            const auto v = g_eval(n, s);
            return {scale * v.value, scale * v.d1, scale * v.d2};
        }
        case ProfileKind::GP: return gp_eval(n, p, scale, s);
    }
    return {};
}

std::string BarrierProfile::name() const {
    switch (kind) {
        case ProfileKind::Psi: return "psi";
        case ProfileKind::G: return "g";
        case ProfileKind::GP: return "g_p";
    }
    return "";
}

double radial_supersolution_residual(const BarrierProfile& profile, OperatorKind op, double laplacian_of_s, double s) {
    if (profile.kind != ProfileKind::GP && !(s > 0))
        throw InvalidArgument("radial_supersolution_residual: profile derivative is singular at s = 0");
    if (profile.kind == ProfileKind::GP && !(s >= 0))
        throw InvalidArgument("radial_supersolution_residual: s must be nonnegative");
    const auto h = profile.eval(s);
    if (op == OperatorKind::MinimalSurface) {
        const double w = 1.0 + h.d1 * h.d1;
        return h.d2 / (w * std::sqrt(w)) + h.d1 / std::sqrt(w) * laplacian_of_s;
    }
    const double p = profile.p;
    const double mag = std::pow(std::abs(h.d1), p - 2.0);
    return (p - 1.0) * mag * h.d2 + mag * h.d1 * laplacian_of_s;
}

SupersolutionCertificate certify_supersolution(const BarrierProfile& profile, OperatorKind op,
                                               const std::vector<double>& samples,
                                               const std::function<double(double)>& laplacian_of_s,
                                               double excess, double tolerance) {
    SupersolutionCertificate cert;
    cert.profile = profile;
    cert.op = op;
    cert.samples = samples;
    cert.tolerance = tolerance;
    cert.worst_case_laplacian_used = (excess == 0.0);
    cert.max_residual = -std::numeric_limits<double>::infinity();
    for (double s : samples) {
        const double lap = laplacian_of_s(s) + excess;
        const double r = radial_supersolution_residual(profile, op, lap, s);
        cert.laplacians.push_back(lap);
        cert.residuals.push_back(r);
        cert.max_residual = std::max(cert.max_residual, r);
    }
    cert.pass = !samples.empty() && cert.max_residual <= tolerance;
    return cert;
}

UpperBarrier::UpperBarrier(SCWitness witness, double height, OperatorKind op, double p)
    : witness_(std::move(witness)), height_(height) {
    if (!(height >= 0)) throw InvalidArgument("upper_barrier_field: height must be nonnegative");
    const int n = witness_.domain.manifold.dimension();
    if (op == OperatorKind::MinimalSurface) {
        profile_ = BarrierProfile::g(n);
    } else {
        profile_ = BarrierProfile::gp(n, p, gp_suggested_scale(n, p, std::max(height, 1e-300)));
    }
}

double UpperBarrier::operator()(const Vec3<double>& x) const {
    if (height_ == 0.0) return 0.0;
    if (!witness_.contains(x)) return height_;
    return std::min(profile_.value(witness_.distance(x)), height_);
}

UpperBarrier upper_barrier_field(const SCWitness& witness, double height, OperatorKind op, double p) {
    return UpperBarrier(witness, height, op, p);
}

}  // namespace hypgraph

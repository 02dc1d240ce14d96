#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "hypgraph/error.hpp"
#include "hypgraph/geometry.hpp"

namespace hypgraph {

enum class OperatorKind { MinimalSurface, PLaplace };

template <typename Scalar>
struct ProfileValue {
    Scalar value;
    Scalar d1;
    Scalar d2;
};

/// psi(t) = pi/2 - arcsec(t + 1) with its first two derivatives.
/// At t = 0 the derivatives are the one-sided limits -inf and +inf.
template <typename Scalar>
ProfileValue<Scalar> psi_eval(Scalar t) {
    using std::asin;
    using std::sqrt;
    if (!(t >= Scalar(0))) throw InvalidArgument("psi_eval: t must be nonnegative");
    const Scalar u = t + Scalar(1);
    // pi/2 - arcsec(u) = arcsin(1/u), which keeps full precision for large t.
    const Scalar value = asin(Scalar(1) / u);
    if (t == Scalar(0)) {
        return {value, -std::numeric_limits<Scalar>::infinity(), std::numeric_limits<Scalar>::infinity()};
    }
    const Scalar q = t * (t + Scalar(2));
    const Scalar rq = sqrt(q);
    return {value, -Scalar(1) / (u * rq), Scalar(1) / (u * u * rq) + Scalar(1) / (q * rq)};
}

/// Degree-4 bracket polynomial whose negativity on t >= 0 makes
/// A*psi(d) + const a supersolution wherever the Laplacian of d exceeds eps.
template <typename Scalar>
Scalar barrier_polynomial(Scalar t, Scalar eps, Scalar amplitude) {
    const Scalar u = t + Scalar(1);
    const Scalar q = t * (t + Scalar(2));
    return u * q + u * u * u - eps * u * u * q - eps * amplitude * amplitude;
}

/// g(s) = int_s^inf dt / sqrt(cosh^{2(n-1)} t - 1) and its derivatives, s > 0.
ProfileValue<double> g_eval(int n, double s);

/// g_p(s) = c int_s^inf cosh^{(1-n)/(p-1)} t dt and its derivatives, s >= 0.
ProfileValue<double> gp_eval(int n, double p, double c, double s);

/// Scale for g_p that guarantees g_p(0) >= 2 C: c = 2 C cosh(1)^{(n-1)/(p-1)}.
double gp_suggested_scale(int n, double p, double height);

/// Least A with barrier_polynomial(t, eps, A') < 0 on t >= 0 for every A' > A.
/// `seed` jitters the coarse search grid; the result is grid-independent to ~1e-9.
double min_barrier_constant(double eps, unsigned seed = 0);

/// Dimension-free constant for the barrier off a small ball: the eps = 1 value.
double universal_constant_B(int n);

enum class ProfileKind { Psi, G, GP };

/// Radial barrier profile h(s). For Psi the profile is scale * psi(s) + offset.
struct BarrierProfile {
    ProfileKind kind = ProfileKind::G;
    int n = 2;
    double p = 2.0;
    double scale = 1.0;
    double offset = 0.0;

    static BarrierProfile psi(double amplitude, double offset = 0.0) { return {ProfileKind::Psi, 2, 2.0, amplitude, offset}; }
    static BarrierProfile g(int n) { return {ProfileKind::G, n, 2.0, 1.0, 0.0}; }
    static BarrierProfile gp(int n, double p, double c) { return {ProfileKind::GP, n, p, c, 0.0}; }

    ProfileValue<double> eval(double s) const;
    double value(double s) const { return eval(s).value; }
    std::string name() const;
};

/// Radial reduction of the operator applied to h(s(x)) given the Laplacian of s.
/// For PLaplace the exponent is the profile's p.
double radial_supersolution_residual(const BarrierProfile& profile, OperatorKind op, double laplacian_of_s, double s);

struct SupersolutionCertificate {
    BarrierProfile profile;
    OperatorKind op = OperatorKind::MinimalSurface;
    std::vector<double> samples;
    std::vector<double> laplacians;
    std::vector<double> residuals;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool worst_case_laplacian_used = true;
    bool pass = false;
};

/// Evaluates the residual at each sample with laplacian_of_s(s) + excess and
/// passes when every residual is <= tolerance.
SupersolutionCertificate certify_supersolution(const BarrierProfile& profile, OperatorKind op,
                                               const std::vector<double>& samples,
                                               const std::function<double(double)>& laplacian_of_s,
                                               double excess = 0.0, double tolerance = 1e-10);

/// Sigma = min(h(s), C) inside the witness, C elsewhere. h is g for the
/// minimal surface operator and g_p (with the suggested scale) for p-Laplace.
class UpperBarrier {
public:
    UpperBarrier(SCWitness witness, double height, OperatorKind op = OperatorKind::MinimalSurface, double p = 2.0);

    double operator()(const Vec3<double>& x) const;
    double height() const { return height_; }
    const SCWitness& witness() const { return witness_; }
    const BarrierProfile& profile() const { return profile_; }

private:
    SCWitness witness_;
    double height_;
    BarrierProfile profile_;
};

UpperBarrier upper_barrier_field(const SCWitness& witness, double height,
                                 OperatorKind op = OperatorKind::MinimalSurface, double p = 2.0);

}  // namespace hypgraph

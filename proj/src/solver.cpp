#include "hypgraph/solver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>

#include "hypgraph/error.hpp"

namespace hypgraph {

namespace {

// Integrand F(q) of the energy as a function of q = |grad u|^2.
struct Integrand {
    OperatorKind op;
    double p;
    double delta2;
    double delta_p;

    Integrand(OperatorKind op_, double p_, double delta)
        : op(op_), p(p_), delta2(delta * delta), delta_p(std::pow(delta, p_)) {}

    double value(double q) const {
        if (op == OperatorKind::MinimalSurface) return std::sqrt(1.0 + q);
        if (p == 2.0) return 0.5 * q;
        return (std::pow(q + delta2, 0.5 * p) - delta_p) / p;
    }
    // 2 F'(q)
    double d1x2(double q) const {
        if (op == OperatorKind::MinimalSurface) return 1.0 / std::sqrt(1.0 + q);
        if (p == 2.0) return 1.0;
        return std::pow(q + delta2, 0.5 * p - 1.0);
    }
    // 4 F''(q)
    double d2x4(double q) const {
        if (op == OperatorKind::MinimalSurface) return -1.0 / ((1.0 + q) * std::sqrt(1.0 + q));
        if (p == 2.0) return 0.0;
        return (p - 2.0) * std::pow(q + delta2, 0.5 * p - 2.0);
    }
};

Eigen::Vector3d gather(const Element& e, const Eigen::VectorXd& u) {
    return {u(e.nodes[0]), u(e.nodes[1]), u(e.nodes[2])};
}

double energy(const Grid& grid, const Eigen::VectorXd& u, const Integrand& F) {
    double total = 0.0;
    for (const auto& e : grid.elements) {
        const Eigen::Vector2d a = e.gradient * gather(e, u);
        total += e.weight * F.value(a.squaredNorm());
    }
    return total;
}

// Full-length energy gradient (boundary entries included).
Eigen::VectorXd energy_gradient(const Grid& grid, const Eigen::VectorXd& u, const Integrand& F) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(grid.size());
    for (const auto& e : grid.elements) {
        const Eigen::Vector2d a = e.gradient * gather(e, u);
        const Eigen::Vector3d local = e.weight * F.d1x2(a.squaredNorm()) * (e.gradient.transpose() * a);
        for (int k = 0; k < 3; ++k) g(e.nodes[k]) += local(k);
    }
    return g;
}

class NewtonSystem {
public:
    NewtonSystem(const Grid& grid, const Integrand& F) : grid_(grid), F_(F), unknown_(grid.size(), -1) {
        int next = 0;
        for (int i = 0; i < grid.size(); ++i)
            if (grid.nodes[i].tag == NodeTag::Interior) unknown_[i] = next++;
        count_ = next;
        for (int i = 0; i < grid.size(); ++i)
            if (unknown_[i] >= 0) inv_volume_.push_back(1.0 / grid.node_volume(i));
    }

    int count() const { return count_; }

    Eigen::VectorXd reduced_gradient(const Eigen::VectorXd& u) const {
        const Eigen::VectorXd full = energy_gradient(grid_, u, F_);
        Eigen::VectorXd g(count_);
        for (int i = 0; i < grid_.size(); ++i)
            if (unknown_[i] >= 0) g(unknown_[i]) = full(i);
        return g;
    }

    double residual_norm(const Eigen::VectorXd& reduced_grad) const {
        double m = 0.0;
        for (int k = 0; k < count_; ++k) m = std::max(m, std::abs(reduced_grad(k)) * inv_volume_[k]);
        return m;
    }

    Eigen::SparseMatrix<double> hessian(const Eigen::VectorXd& u) const {
        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(grid_.elements.size() * 9);
        for (const auto& e : grid_.elements) {
            const Eigen::Vector2d a = e.gradient * gather(e, u);
            const double q = a.squaredNorm();
            const Eigen::Matrix2d K = F_.d1x2(q) * Eigen::Matrix2d::Identity() + F_.d2x4(q) * a * a.transpose();
            const Eigen::Matrix3d local = e.weight * e.gradient.transpose() * K * e.gradient;
            for (int r = 0; r < 3; ++r) {
                const int ur = unknown_[e.nodes[r]];
                if (ur < 0) continue;
                for (int c = 0; c < 3; ++c) {
                    const int uc = unknown_[e.nodes[c]];
                    if (uc >= 0) trip.emplace_back(ur, uc, local(r, c));
                }
            }
        }
        Eigen::SparseMatrix<double> H(count_, count_);
        H.setFromTriplets(trip.begin(), trip.end());
        return H;
    }

    void add_reduced(Eigen::VectorXd& u, const Eigen::VectorXd& step, double t) const {
        for (int i = 0; i < grid_.size(); ++i)
            if (unknown_[i] >= 0) u(i) += t * step(unknown_[i]);
    }

private:
    const Grid& grid_;
    const Integrand& F_;
    std::vector<int> unknown_;
    std::vector<double> inv_volume_;
    int count_ = 0;
};

void check_shape(const Grid& grid, const Eigen::VectorXd& values) {
    if (values.size() != grid.size()) throw InvalidArgument("field does not conform to grid");
}

// Runs damped Newton on u in place; returns the final residual norm.
double newton(const Grid& grid, const Integrand& F, const SolveParams& params, Eigen::VectorXd& u,
              SolveMetadata& meta) {
    NewtonSystem sys(grid, F);
    if (sys.count() == 0) return 0.0;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    bool analyzed = false;
    double e0 = energy(grid, u, F);
    meta.stage_starts.push_back(static_cast<int>(meta.energy_history.size()));
    meta.energy_history.push_back(e0);
    double res = 0.0;
    for (int it = 0; it <= params.max_iters; ++it) {
        const Eigen::VectorXd g = sys.reduced_gradient(u);
        res = sys.residual_norm(g);
        if (res <= params.newton_tol) return res;
        if (it == params.max_iters) break;

        Eigen::SparseMatrix<double> H = sys.hessian(u);
        if (!analyzed) {
            ldlt.analyzePattern(H);
            analyzed = true;
        }
        ldlt.factorize(H);
        double shift = 0.0;
        const double diag_scale = H.diagonal().cwiseAbs().maxCoeff();
        for (int retry = 0; ldlt.info() != Eigen::Success || (ldlt.vectorD().array() <= 0).any(); ++retry) {
            if (retry == 6) throw NumericalFailure("solve_dirichlet: singular linearization", res, meta.iterations);
            shift = shift == 0.0 ? 1e-12 * diag_scale : 100.0 * shift;
            Eigen::SparseMatrix<double> I(sys.count(), sys.count());
            I.setIdentity();
            ldlt.factorize(H + shift * I);
        }
        const Eigen::VectorXd step = ldlt.solve(-g);
        const double slope = g.dot(step);
        // The step no longer changes u in double precision: the residual is at its floor.
        if (step.lpNorm<Eigen::Infinity>() <= 1e-14 * (1.0 + u.lpNorm<Eigen::Infinity>()) &&
            res <= 1e4 * params.newton_tol)
            return res;

        // Predicted decrease below the energy's round-off: no line search can resolve it.
        const double noise = 1e-13 * (1.0 + std::abs(e0));
        const bool flat = -slope <= noise;
        double t = 1.0;
        bool accepted = false;
        Eigen::VectorXd trial = u;
        double e1 = e0;
        for (int k = 0; !flat && k <= params.max_halvings; ++k, t *= 0.5) {
            trial = u;
            sys.add_reduced(trial, step, t);
            e1 = energy(grid, trial, F);
            if (e1 <= e0 + 1e-4 * t * slope) {
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            // Energy differences below round-off: take the full Newton step.
            trial = u;
            sys.add_reduced(trial, step, 1.0);
            e1 = energy(grid, trial, F);
            if (!(e1 - e0 <= noise))
                throw NumericalFailure("solve_dirichlet: line search failed", res, meta.iterations);
        }
        u.swap(trial);
        e0 = e1;
        meta.energy_history.push_back(e0);
        ++meta.iterations;
    }
    throw NumericalFailure("solve_dirichlet: Newton did not converge within max_iters", res, meta.iterations);
}

}  // namespace

void SolveParams::validate() const {
    if (!(newton_tol > 0)) throw InvalidArgument("SolveParams: newton_tol must be positive");
    if (max_iters < 1) throw InvalidArgument("SolveParams: max_iters must be >= 1");
    if (continuation_steps < 1) throw InvalidArgument("SolveParams: continuation_steps must be >= 1");
    if (op == OperatorKind::PLaplace && !(p > 1)) throw InvalidArgument("SolveParams: p must exceed 1");
    if (!(p_regularization > 0)) throw InvalidArgument("SolveParams: p_regularization must be positive");
}

double discrete_energy(const Grid& grid, const Eigen::VectorXd& values, OperatorKind op, double p) {
    check_shape(grid, values);
    if (op == OperatorKind::PLaplace && !(p > 1)) throw InvalidArgument("discrete_energy: p must exceed 1");
    // Reported energy is unregularized.
    if (op == OperatorKind::PLaplace && p != 2.0) {
        double total = 0.0;
        for (const auto& e : grid.elements) {
            const Eigen::Vector2d a = e.gradient * gather(e, values);
            total += e.weight * std::pow(a.norm(), p) / p;
        }
        return total;
    }
    return energy(grid, values, Integrand(op, p, 0.0));
}

Residual discrete_residual(const Grid& grid, const Eigen::VectorXd& values, OperatorKind op, double p,
                           double p_regularization) {
    check_shape(grid, values);
    const Integrand F(op, p, p_regularization);
    const Eigen::VectorXd g = energy_gradient(grid, values, F);
    Residual r;
    r.per_node = Eigen::VectorXd::Zero(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        if (grid.nodes[i].tag != NodeTag::Interior) continue;
        r.per_node(i) = -g(i) / grid.node_volume(i);
        r.norm = std::max(r.norm, std::abs(r.per_node(i)));
    }
    return r;
}

Eigen::VectorXd harmonic_extension(const Grid& grid, const Eigen::VectorXd& boundary_values) {
    check_shape(grid, boundary_values);
    const Integrand F(OperatorKind::PLaplace, 2.0, 0.0);
    NewtonSystem sys(grid, F);
    Eigen::VectorXd u = boundary_values;
    for (int i = 0; i < grid.size(); ++i)
        if (grid.nodes[i].tag == NodeTag::Interior) u(i) = 0.0;
    if (sys.count() == 0) return u;
    const Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(sys.hessian(u));
    if (ldlt.info() != Eigen::Success) throw NumericalFailure("harmonic_extension: factorization failed", 0.0, 0);
    sys.add_reduced(u, ldlt.solve(-sys.reduced_gradient(u)), 1.0);
    return u;
}

DiscreteField solve_dirichlet(const Grid& grid, const Eigen::VectorXd& boundary_values, const SolveParams& params,
                              const std::optional<Eigen::VectorXd>& initial_guess) {
    params.validate();
    check_shape(grid, boundary_values);
    if (initial_guess) check_shape(grid, *initial_guess);
    const Integrand F(params.op, params.p, params.p_regularization);

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i < grid.size(); ++i) {
        if (grid.nodes[i].tag == NodeTag::Interior) continue;
        if (!std::isfinite(boundary_values(i))) throw InvalidArgument("solve_dirichlet: boundary values must be finite");
        lo = std::min(lo, boundary_values(i));
        hi = std::max(hi, boundary_values(i));
    }

    DiscreteField field;
    if (lo == hi) {
        field.values = Eigen::VectorXd::Constant(grid.size(), lo);
        field.meta.energy = energy(grid, field.values, F);
        field.meta.energy_history.push_back(field.meta.energy);
        field.meta.stage_starts.push_back(0);
        return field;
    }

    const bool quadratic = params.op == OperatorKind::PLaplace && params.p == 2.0;
    const int stages = (!quadratic && !initial_guess && hi - lo > params.steep_oscillation) ? params.continuation_steps : 1;
    Eigen::VectorXd u;
    for (int k = 1; k <= stages; ++k) {
        const double lambda = static_cast<double>(k) / stages;
        Eigen::VectorXd target = boundary_values;
        if (k < stages) target = (lo + lambda * (boundary_values.array() - lo)).matrix();
        if (k == 1) {
            u = initial_guess ? *initial_guess : harmonic_extension(grid, target);
        }
        for (int i = 0; i < grid.size(); ++i)
            if (grid.nodes[i].tag != NodeTag::Interior) u(i) = target(i);
        field.meta.residual_norm = newton(grid, F, params, u, field.meta);
        ++field.meta.continuation_stages;
    }
    field.values = std::move(u);
    field.meta.energy = energy(grid, field.values, F);
    return field;
}

}  // namespace hypgraph

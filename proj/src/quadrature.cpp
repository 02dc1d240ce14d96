#include "hypgraph/quadrature.hpp"

#include <cmath>
#include <vector>

#include "hypgraph/error.hpp"

namespace hypgraph {

namespace {

// QUADPACK qk15 abscissae and weights.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
};

}  // namespace

QuadratureResult gauss_kronrod15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * pair;
        if (j % 2 == 1) gauss += kWg[j / 2] * pair;
    }
    return {kronrod * half, std::abs((kronrod - gauss) * half), 1};
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, int max_panels) {
    if (!(b >= a)) throw InvalidArgument("integrate_adaptive: need a <= b");
    if (a == b) return {};
    const double length = b - a;
    std::vector<Panel> stack{{a, b}};
    QuadratureResult total;
    while (!stack.empty()) {
        const Panel p = stack.back();
        stack.pop_back();
        const QuadratureResult r = gauss_kronrod15(f, p.a, p.b);
        const double share = abs_tol * (p.b - p.a) / length;
        const bool tiny = (p.b - p.a) < 1e-14 * (1.0 + std::abs(p.a));
        if (r.error_estimate <= share || tiny) {
            total.value += r.value;
            total.error_estimate += r.error_estimate;
            ++total.panels;
            continue;
        }
        if (total.panels + static_cast<int>(stack.size()) + 2 > max_panels) {
            throw NumericalFailure("integrate_adaptive: panel budget exhausted",
                                   r.error_estimate, total.panels);
        }
        const double mid = 0.5 * (p.a + p.b);
        // Right half first so the left half is processed next; summation order is fixed.
        stack.push_back({mid, p.b});
        stack.push_back({p.a, mid});
    }
    return total;
}

QuadratureResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                       const std::function<double(double)>& tail_bound,
                                       double abs_tol, double tail_tol) {
    double cutoff = a + 1.0;
    while (tail_bound(cutoff) >= tail_tol) {
        cutoff = a + 2.0 * (cutoff - a);
        if (cutoff - a > 1e8) throw NumericalFailure("integrate_to_infinity: tail bound does not decay", tail_bound(cutoff), 0);
    }
    QuadratureResult r = integrate_adaptive(f, a, cutoff, abs_tol);
    r.error_estimate += tail_bound(cutoff);
    return r;
}

}  // namespace hypgraph

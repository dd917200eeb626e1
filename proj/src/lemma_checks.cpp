#include "fracwave/lemma_checks.hpp"

#include "fracwave/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fracwave {

PowerInequalityReport check_pointwise_inequality(const AmbientFunction& psi, double l, FracOrder s, int n,
                                                 std::span<const Point> points,
                                                 const QuadratureScheme& scheme) {
    if (!(l >= 1.0)) throw ConfigError("check_pointwise_inequality: l must be >= 1");
    PowerInequalityReport rep;
    rep.l = l;
    rep.s = s.s;
    rep.n = n;
    rep.points.assign(points.begin(), points.end());

    const AmbientFunction psi_l = ambient_power(psi, l);
    for (const Point& x : points) {
        const double op_pow = frac_laplacian_quadrature_at(psi_l, s, n, x, scheme);
        double rhs;
        if (l == 1.0) {
            rhs = op_pow; // identical evaluation, exact equality by construction
        } else {
            const double base = psi.radial_profile
                                    ? psi.radial_profile(std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]))
                                    : psi.value(x);
            if (base < 0.0)
                throw ConfigError("check_pointwise_inequality: psi must be nonnegative");
            const double op_base = frac_laplacian_quadrature_at(psi, s, n, x, scheme);
            rhs = l * std::pow(base, l - 1.0) * op_base;
        }
        rep.lhs.push_back(op_pow);
        rep.rhs.push_back(rhs);
        rep.scale = std::max({rep.scale, std::abs(op_pow), std::abs(rhs)});
        rep.max_violation = std::max(rep.max_violation, op_pow - rhs);
    }
    rep.passed = rep.max_violation <= 1e-6 * rep.scale;
    return rep;
}

namespace {

// Supplied derivatives must agree with central differences. The tolerance is
// relative with a floor at the function's own magnitude: profiles of cutoff
// type have derivative plateaus around 1e-16 that finite differences cannot
// see, and those are accepted.
void validate_derivatives(const RadialC2& psi, double r_lo, double r_hi) {
    double mf = 1e-300;
    const int probes = 16;
    for (int i = 0; i < probes; ++i) {
        const double r = r_lo + (r_hi - r_lo) * (i + 0.5) / probes;
        mf = std::max(mf, std::abs(psi.f(r)));
    }
    for (int i = 0; i < probes; ++i) {
        const double r = r_lo + (r_hi - r_lo) * (i + 0.5) / probes;
        double guard = std::numeric_limits<double>::infinity();
        for (double bk : psi.breakpoints) guard = std::min(guard, std::abs(r - bk));
        const double h = std::max(std::min(1e-3 * std::max(1.0, r), guard / 8.0), 1e-7);

        const double fp = psi.f(r + h), fm = psi.f(r - h), f0 = psi.f(r);
        const double d1_fd = (fp - fm) / (2.0 * h);
        const double d2_fd = (fp - 2.0 * f0 + fm) / (h * h);
        const double d1 = psi.df(r), d2 = psi.ddf(r);
        const double tol1 = 1e-5 * std::max({std::abs(d1), std::abs(d1_fd), mf});
        const double tol2 = 1e-5 * std::max({std::abs(d2), std::abs(d2_fd), mf / h});
        if (!std::isfinite(d1) || !std::isfinite(d2) || std::abs(d1 - d1_fd) > tol1 ||
            std::abs(d2 - d2_fd) > tol2)
            throw DerivativeMismatch("check_radial_criterion: supplied derivatives disagree with "
                                     "finite differences near r=" +
                                     std::to_string(r));
    }
}

} // namespace

RadialCriterionReport check_radial_criterion(const RadialC2& psi, int n, FracOrder s,
                                             std::span<const double> r_samples,
                                             const QuadratureScheme& scheme) {
    if (r_samples.empty()) throw ConfigError("check_radial_criterion: empty sample set");
    const double r_lo = *std::min_element(r_samples.begin(), r_samples.end());
    const double r_hi = *std::max_element(r_samples.begin(), r_samples.end());
    if (!(r_lo > 0.0)) throw ConfigError("check_radial_criterion: radii must be positive");
    validate_derivatives(psi, r_lo, r_hi);

    RadialCriterionReport rep;
    rep.radii.assign(r_samples.begin(), r_samples.end());

    double max_lhs = -std::numeric_limits<double>::infinity();
    for (double r : r_samples) {
        const double lhs = psi.ddf(r) + (n - 2.0 * s.s + 1.0) * psi.df(r) / r;
        rep.criterion_lhs.push_back(lhs);
        max_lhs = std::max(max_lhs, lhs);
    }
    rep.max_criterion_lhs = max_lhs;
    rep.criterion_holds = max_lhs <= 1e-9;

    AmbientFunction amb = ambient_radial(psi.f, psi.breakpoints, psi.tail_sup);
    double min_op = std::numeric_limits<double>::infinity();
    double scale = 1e-300;
    for (double r : r_samples) {
        const double v = frac_laplacian_quadrature_at(amb, s, n, Point{r, 0.0, 0.0}, scheme);
        rep.operator_values.push_back(v);
        min_op = std::min(min_op, v);
        scale = std::max(scale, std::abs(v));
    }
    rep.min_operator_value = min_op;
    rep.scale = scale;
    rep.implication_ok = !rep.criterion_holds || min_op >= -1e-6 * scale;
    return rep;
}

ScalingReport check_scaling(const AmbientFunction& psi, FracOrder s, int n, double R,
                            std::span<const Point> points, const QuadratureScheme& scheme) {
    if (!(R > 0.0)) throw ConfigError("check_scaling: R must be positive");
    ScalingReport rep;
    rep.R = R;
    rep.points.assign(points.begin(), points.end());

    const AmbientFunction dilated = ambient_dilated(psi, R);
    const double pre = std::pow(R, -2.0 * s.s);
    for (const Point& x : points) {
        const double lhs = frac_laplacian_quadrature_at(dilated, s, n, x, scheme);
        const Point xs{x[0] / R, x[1] / R, x[2] / R};
        const double rhs = pre * frac_laplacian_quadrature_at(psi, s, n, xs, scheme);
        rep.lhs.push_back(lhs);
        rep.rhs.push_back(rhs);
        const double dev = std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
        rep.max_rel_deviation = std::max(rep.max_rel_deviation, dev);
    }
    rep.passed = rep.max_rel_deviation <= 1e-4;
    return rep;
}

DecayFitReport check_decay(const AmbientFunction& psi, FracOrder s, int n, std::span<const double> radii,
                           const QuadratureScheme& scheme) {
    if (radii.size() < 3) throw ConfigError("check_decay: need >= 3 radii");
    DecayFitReport rep;
    rep.bound = -(n + 2.0 * s.s) + 0.1;
    std::vector<double> lx, ly;
    for (double r : radii) {
        const double v = frac_laplacian_quadrature_at(psi, s, n, Point{r, 0.0, 0.0}, scheme);
        rep.radii.push_back(r);
        rep.values.push_back(v);
        if (std::abs(v) < 1e-300) throw DegenerateFit("check_decay: operator value underflow at r=" +
                                                      std::to_string(r));
        lx.push_back(std::log(r));
        ly.push_back(std::log(std::abs(v)));
    }
    rep.slope = linear_fit(lx, ly).slope;
    rep.passed = rep.slope <= rep.bound;
    return rep;
}

} // namespace fracwave

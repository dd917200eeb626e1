#include "fracwave/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fracwave {

double conjugate_exponent(double p) {
    if (!(p > 1.0)) throw ConfigError("conjugate_exponent: p must be > 1");
    return p / (p - 1.0);
}

TimeCutoffConditionReport verify_condition_time(const CutoffProfile& profile, double p,
                                                std::span<const double> t_grid) {
    if (t_grid.size() < 500) throw ConfigError("verify_condition_time: need >= 500 grid points");
    const double pc = conjugate_exponent(p);
    TimeCutoffConditionReport rep;
    for (double t : t_grid) {
        const CutoffDerivs e = eval_eta_derivs(t, profile);
        if (e.value <= 0.0) continue; // quantity is 0 past the support
        const double q =
            std::pow(e.value, -pc / p) * (std::pow(std::abs(e.d1), pc) + std::pow(std::abs(e.d2), pc));
        if (!std::isfinite(q)) {
            rep.finite = false;
            rep.argmax = t;
            rep.sup_value = q;
            return rep;
        }
        if (q > rep.sup_value) {
            rep.sup_value = q;
            rep.argmax = t;
        }
    }
    return rep;
}

SpaceCutoffConditionReport verify_condition_space(const CutoffProfile& profile, double p, int n,
                                                  std::span<const double> r_grid) {
    if (r_grid.size() < 500) throw ConfigError("verify_condition_space: need >= 500 grid points");
    const double pc = conjugate_exponent(p);
    SpaceCutoffConditionReport rep;
    for (double r : r_grid) {
        const CutoffDerivs phi = eval_phi_derivs(r, profile);
        if (phi.value <= 0.0) continue;
        const CutoffDerivs pw = eval_phi_pow_derivs(r, pc + 1.0, profile);
        const double lap = pw.d2 + (n - 1) * pw.d1 / r;
        const double q = std::pow(phi.value, 1.0 - pc * pc) * std::pow(std::abs(lap), pc);
        if (!std::isfinite(q)) {
            rep.finite = false;
            rep.argmax = r;
            rep.sup_value = q;
            return rep;
        }
        if (q > rep.sup_value) {
            rep.sup_value = q;
            rep.argmax = r;
        }
    }
    return rep;
}

SignConditionReport verify_condition_sign(const CutoffProfile& profile, double p, int n, FracOrder delta,
                                          std::span<const double> r_grid) {
    const double pc = conjugate_exponent(p);
    const double c = n - 2.0 * delta.s + 1.0;
    SignConditionReport rep;
    rep.max_lhs = -std::numeric_limits<double>::infinity();
    rep.max_explicit_residual = -std::numeric_limits<double>::infinity();
    double scale = 1.0;
    for (double r : r_grid) {
        const CutoffDerivs phi = eval_phi_derivs(r, profile);
        const double lhs = pc * phi.d1 * phi.d1 + phi.value * (phi.d2 + c * phi.d1 / r);
        scale = std::max({scale, std::abs(pc * phi.d1 * phi.d1), std::abs(phi.value * phi.d2),
                          std::abs(phi.value * c * phi.d1 / r)});
        if (lhs > rep.max_lhs) {
            rep.max_lhs = lhs;
            rep.argmax = r;
        }

        // explicit inequality form on the open transition interval
        if (r > 0.5 && r < 1.0) {
            const double u = r - 0.5, v = 1.0 - r;
            const double E = profile.alpha / v * std::exp(-profile.beta / u);
            const double w = 1.0 / v + profile.beta / (u * u); // = -g'
            const double ex_lhs = (1.0 + pc) * E * w * w + 2.0 * profile.beta / (u * u * u);
            const double ex_rhs = w * w + 1.0 / (v * v) + c / r * w;
            rep.max_explicit_residual = std::max(rep.max_explicit_residual, ex_lhs - ex_rhs);
        }
    }
    rep.scale = scale;
    rep.passed = rep.max_lhs <= 1e-9 * scale;
    return rep;
}

} // namespace fracwave

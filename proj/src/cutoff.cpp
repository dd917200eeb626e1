#include "fracwave/cutoff.hpp"

#include <algorithm>
#include <cmath>

namespace fracwave {

CutoffProfile make_profile(double alpha, double beta) {
    if (!(alpha > 0.0) || alpha > 0.5) throw ConfigError("cutoff profile: need 0 < alpha <= 0.5");
    if (!(beta >= 1.0)) throw ConfigError("cutoff profile: need beta >= 1");
    return CutoffProfile{alpha, beta};
}

CutoffDerivs eval_phi_derivs(double r, const CutoffProfile& profile) {
    if (r < 0.0) throw ConfigError("eval_phi_derivs: r must be >= 0");
    if (r <= 0.5) return {1.0, 0.0, 0.0};
    if (r >= 1.0) return {0.0, 0.0, 0.0};

    // E = e^{-g(r)} with g(r) = log((1-r)/alpha) + beta/(r-1/2)
    const double u = r - 0.5;
    const double v = 1.0 - r;
    const double E = profile.alpha / v * std::exp(-profile.beta / u);
    if (E == 0.0) return {1.0, 0.0, 0.0}; // inner exponential underflow: plateau
    if (E > 700.0) return {0.0, 0.0, 0.0}; // value underflows; derivatives follow

    const double g1 = -1.0 / v - profile.beta / (u * u);
    const double g2 = -1.0 / (v * v) + 2.0 * profile.beta / (u * u * u);
    const double value = std::exp(-E);
    const double d1 = value * E * g1;
    const double d2 = value * E * (E * g1 * g1 - g1 * g1 + g2);
    return {value, d1, d2};
}

double eval_phi(double r, const CutoffProfile& profile) { return eval_phi_derivs(r, profile).value; }

CutoffDerivs eval_eta_derivs(double t, const CutoffProfile& profile) {
    if (t < 0.0) throw ConfigError("eval_eta_derivs: t must be >= 0");
    return eval_phi_derivs(t, profile);
}

double eval_eta(double t, const CutoffProfile& profile) { return eval_eta_derivs(t, profile).value; }

CutoffDerivs eval_phi_pow_derivs(double r, double q, const CutoffProfile& profile) {
    if (!(q >= 1.0)) throw ConfigError("eval_phi_pow_derivs: q must be >= 1");
    const CutoffDerivs p = eval_phi_derivs(r, profile);
    if (p.value == 0.0) return {0.0, 0.0, 0.0};
    if (p.value == 1.0 && p.d1 == 0.0 && p.d2 == 0.0) return {1.0, 0.0, 0.0};
    const double pow_q = std::pow(p.value, q);
    const double pow_qm1 = std::pow(p.value, q - 1.0);
    const double pow_qm2 = std::pow(p.value, q - 2.0);
    return {pow_q, q * pow_qm1 * p.d1, q * ((q - 1.0) * pow_qm2 * p.d1 * p.d1 + pow_qm1 * p.d2)};
}

std::vector<double> clustered_grid(double lo, double hi, int count, double floor_dist) {
    if (!(hi > lo)) throw ConfigError("clustered_grid: need hi > lo");
    if (count < 16) throw ConfigError("clustered_grid: need at least 16 points");
    const double span = hi - lo;
    if (!(floor_dist > 0.0) || floor_dist >= 0.25 * span)
        throw ConfigError("clustered_grid: floor distance out of range");

    // one third geometric toward each endpoint, one third uniform in between
    const int per_wing = count / 3;
    const int middle = count - 2 * per_wing;
    const double d_max = 0.25 * span;
    const double ratio = std::pow(d_max / floor_dist, 1.0 / (per_wing - 1));

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    double d = floor_dist;
    for (int i = 0; i < per_wing; ++i, d *= ratio) {
        out.push_back(lo + d);
        out.push_back(hi - d);
    }
    for (int i = 0; i < middle; ++i)
        out.push_back(lo + d_max + (span - 2.0 * d_max) * (i + 0.5) / middle);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace fracwave

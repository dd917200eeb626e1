#pragma once

#include <span>
#include <string>
#include <vector>

#include "fracwave/criticality.hpp"
#include "fracwave/scaled_cutoff.hpp"
#include "fracwave/solver.hpp"

namespace fracwave {

/// Space-time functionals of one trajectory against the scaled weight at a
/// fixed R, together with the weak-form balance residual.
struct FunctionalReport {
    double R = 0.0;
    double I_R = 0.0;  // |u|^p Phi over [0, R^alpha] x B_R
    double I_Rt = 0.0; // restricted to t in [R^alpha/2, R^alpha]
    double I_Rx = 0.0; // restricted to |x| in (R/2, R]
    double J1 = 0.0;   // u * dtt(eta_R^{p'+1}) * phi_R^{p'+1}
    double J2 = 0.0;   // u * eta_R^{p'+1} * Lap(phi_R^{p'+1})
    double J3 = 0.0;   // dt(eta_R^{p'+1}) * u * Op(phi_R^{p'+1})
    double data_term = 0.0; // (u1 + Op u0) phi_R^{p'+1} over B_R
    double identity_residual = 0.0;
};

/// Requires snapshots: >= 64 inside [0, R^alpha], full coverage, R <= L/2.
FunctionalReport compute_functionals(const Trajectory& traj, const CutoffBundle& bundle,
                                     const QuadratureScheme& scheme = {});

/// One-sided scaling exponents of the three weak-form terms.
double j1_bound_exponent(const CutoffBundle& b); // -2 alpha + (n+alpha)/p'
double j2_bound_exponent(const CutoffBundle& b); // -2 + (n+alpha)/p'
double j3_bound_exponent(const CutoffBundle& b); // -alpha - 2 delta + (n+alpha)/p'

struct ScalingProbeReport {
    std::vector<FunctionalReport> per_R;
    double slope_j1 = 0.0, slope_j2 = 0.0, slope_j3 = 0.0;
    double bound_j1 = 0.0, bound_j2 = 0.0, bound_j3 = 0.0;
    bool passed = false; // every fitted slope <= bound + 0.3
};

/// Runs one snapshot-recording simulation covering max(R)^alpha and fits
/// log(|J_i| / I_window^{1/p}) against log R.
ScalingProbeReport probe_scaling_estimates(const SimConfig& config, const CutoffProfile& profile,
                                           std::span<const double> R_list,
                                           const QuadratureScheme& scheme = {});

/// Max over samples of A y^gamma - y - A^{1/(1-gamma)} (exact bound is <= 0).
double young_bound_violation(double A, double gamma, std::span<const double> y_samples);

struct LifespanRecord {
    std::vector<double> epsilons;  // decreasing
    std::vector<double> lifespans; // NaN where estimation failed
    std::vector<bool> in_fit;
    std::vector<std::string> errors;
    double fitted_slope = 0.0;
    double paper_exponent = 0.0; // -2(1-delta)(p-1) / (2 - (n-2delta)(p-1))
    bool monotone = false;       // lifespans increase as epsilon decreases
};

/// Lifespan per epsilon (geometric, >= 4 values) with a log-log fit. The
/// largest epsilon is dropped from the fit when its lifespan is below three
/// linear oscillation periods of the dominant data mode.
LifespanRecord lifespan_sweep(const SimConfig& base, std::span<const double> epsilons, int threads = 1);

struct CriticalityRow {
    double p = 0.0;
    Criticality classification = Criticality::Subcritical;
    std::string outcome;      // run outcome, or "error"
    double t_blowup = 0.0;    // valid for blow-up rows
    double h1_slope = 0.0;    // mean-free H1 fit for surviving rows (NaN if not fit)
    std::string error;
};

/// Outcome table across p at fixed epsilon; per-run failures are recorded
/// and the scan continues.
std::vector<CriticalityRow> criticality_scan(const SimConfig& base, std::span<const double> p_list,
                                             int threads = 1);

} // namespace fracwave

#pragma once

#include <span>
#include <vector>

#include "fracwave/errors.hpp"

namespace fracwave {

/// Shape constants of the compactly supported cutoff profile
///   phi(r) = 1                                  for r <= 1/2,
///   phi(r) = exp(-(alpha/(1-r)) e^{-beta/(r-1/2)})  for 1/2 < r < 1,
///   phi(r) = 0                                  for r >= 1.
/// alpha small and beta large keep the transition well behaved; the defaults
/// correspond to alpha = eps/2, beta = 1/eps at eps = 0.1.
struct CutoffProfile {
    double alpha = 0.05;
    double beta = 10.0;
};

CutoffProfile make_profile(double alpha, double beta);

struct CutoffDerivs {
    double value;
    double d1;
    double d2;
};

/// phi and its first two derivatives. Evaluation is exact at every
/// representable double: the inner exponential underflows to the plateau
/// (1,0,0) near r = 1/2, and once the outer exponent passes 700 the value
/// has underflowed and (0,0,0) is returned.
CutoffDerivs eval_phi_derivs(double r, const CutoffProfile& profile = {});
double eval_phi(double r, const CutoffProfile& profile = {});

/// The time cutoff reuses the same construction in one variable: it is 1 on
/// [0,1/2], 0 beyond 1, smooth and decreasing.
CutoffDerivs eval_eta_derivs(double t, const CutoffProfile& profile = {});
double eval_eta(double t, const CutoffProfile& profile = {});

/// Derivatives of the power composite phi^q (q >= 1).
CutoffDerivs eval_phi_pow_derivs(double r, double q, const CutoffProfile& profile = {});

/// Grid on [lo, hi] clustered geometrically toward both endpoints, never
/// closer than `floor_dist` to either. Used by the condition verifications.
std::vector<double> clustered_grid(double lo, double hi, int count, double floor_dist = 1e-6);

} // namespace fracwave

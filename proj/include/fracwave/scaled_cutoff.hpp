#pragma once

#include <memory>
#include <vector>

#include "fracwave/conditions.hpp"
#include "fracwave/cutoff.hpp"
#include "fracwave/fractional.hpp"
#include "fracwave/singular_integral.hpp"

namespace fracwave {

/// Parameters of the scaled space-time weight
///   Phi(t, x) = eta^{p'+1}(R^{-alpha} t) * phi^{p'+1}(|x| / R),
/// with alpha = 2 - 2 delta.
struct CutoffBundle {
    CutoffProfile profile;
    double p;
    double p_conj;    // p / (p - 1)
    int n;
    FracOrder delta;
    double R;
    double alpha_exp; // 2 - 2 delta
};

CutoffBundle make_bundle(const CutoffProfile& profile, double p, int n, double delta, double R);

/// Interpolation table for the singular-integral operator applied to a
/// radial profile at unit scale. Nodes are log-spaced with extra clustering
/// around the profile's breakpoints; beyond the last node the far-field
/// power law (r_max / r)^{n + 2s} extends the values.
class RadialOperatorTable {
  public:
    RadialOperatorTable(const AmbientFunction& psi, FracOrder s, int n,
                        const QuadratureScheme& scheme = {}, std::size_t backbone_nodes = 2048);

    double operator()(double r) const;

  private:
    std::vector<double> log_r_; // nodes 1..end in log r; node 0 is r = 0
    std::vector<double> radii_;
    std::vector<double> values_;
    double tail_exponent_;
};

/// Evaluator for the scaled weight and every derived quantity the weak-form
/// balance needs: time derivatives of the temporal factor, the radial
/// Laplacian of the spatial factor, and table-backed fractional Laplacians of
/// both the composite power and the plain cutoff.
class ScaledTestFunction {
  public:
    explicit ScaledTestFunction(const CutoffBundle& bundle, const QuadratureScheme& scheme = {});

    const CutoffBundle& bundle() const { return bundle_; }

    double value(double t, double r_abs) const { return time_weight(t) * space_weight(r_abs); }

    double time_weight(double t) const;
    double time_weight_dt(double t) const;
    double time_weight_dtt(double t) const;

    double space_weight(double r_abs) const;
    double space_weight_lap(double r_abs) const;
    double space_weight_fraclap(double r_abs) const; // (-Lap)^delta of phi_R^{p'+1}
    double base_fraclap(double r_abs) const;         // (-Lap)^delta of phi_R

  private:
    CutoffBundle bundle_;
    std::shared_ptr<const RadialOperatorTable> pow_table_;
    std::shared_ptr<const RadialOperatorTable> base_table_;
};

/// Ambient wrapper of the (power of the) cutoff profile, breakpoints at the
/// plateau and support edges.
AmbientFunction ambient_cutoff(const CutoffProfile& profile, double exponent = 1.0);

} // namespace fracwave

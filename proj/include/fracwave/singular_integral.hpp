#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fracwave/fractional.hpp"
#include "fracwave/grid.hpp"

namespace fracwave {

/// Quadrature layout for the singular-integral fractional Laplacian.
///
/// The operator is evaluated in the symmetrized second-difference form
///   -(C/2) * int (psi(x+y) + psi(x-y) - 2 psi(x)) / |y|^{n+2s} dy,
/// which removes the principal value. The radial integral is split into
///   (0, r0]      Taylor-regularized near field (second-derivative estimate),
///   (r0, R_far]  log-spaced composite Simpson in polar coordinates,
///   (R_far, inf) analytic tail correction plus a decay bound.
/// R_far grows adaptively until the unresolved tail fits the budget.
struct QuadratureScheme {
    double inner_radius = 1e-4;   // r0
    double outer_radius = 64.0;   // initial far-field cutoff
    int nodes_per_decade = 64;    // radial density, >= 32
    int angular_nodes = 48;       // angular density per full sweep
    double tail_rel_budget = 1e-8;
};

/// A function on R^n suitable for the singular-integral quadrature.
///
/// `value` must be defined everywhere. When the function is radial about the
/// origin, set `radial_profile`; this enables the robust radial reduction
/// (required for n = 3). `radial_breakpoints` lists radii where smoothness
/// degrades (plateau and support edges of cutoffs); quadrature segments never
/// straddle them. `tail_sup(r)` bounds sup_{|y|>=r} |value(y) - limit|.
struct AmbientFunction {
    std::function<double(const Point&)> value;
    std::function<double(double)> radial_profile; // empty if not radial
    std::vector<double> radial_breakpoints;
    std::function<double(double)> tail_sup;
    double limit_at_infinity = 0.0;
};

AmbientFunction ambient_gaussian(double width = 1.0);

/// Radial function from a profile; pass the support radius edges (or other
/// kink radii) as breakpoints. `tail_sup` may be empty for compactly
/// supported profiles whose largest breakpoint is the support radius.
AmbientFunction ambient_radial(std::function<double(double)> profile,
                               std::vector<double> breakpoints,
                               std::function<double(double)> tail_sup = {},
                               double limit_at_infinity = 0.0);

/// Pointwise power psi^q of a nonnegative ambient function, q >= 1.
AmbientFunction ambient_power(const AmbientFunction& base, double q);

/// Dilation psi(x / R); breakpoints and tail bound scale accordingly.
AmbientFunction ambient_dilated(const AmbientFunction& base, double R);

/// Evaluates the singular-integral fractional Laplacian at one point.
/// Throws TailBoundExceeded if the far-field budget cannot be met and
/// NonSmoothInput if second-derivative probes are non-finite.
double frac_laplacian_quadrature_at(const AmbientFunction& psi, FracOrder s, int n,
                                    const Point& x, const QuadratureScheme& scheme = {});

std::vector<double> frac_laplacian_quadrature(const AmbientFunction& psi, FracOrder s, int n,
                                              std::span<const Point> points,
                                              const QuadratureScheme& scheme = {});

} // namespace fracwave

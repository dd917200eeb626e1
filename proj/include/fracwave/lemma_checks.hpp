#pragma once

#include <span>
#include <vector>

#include "fracwave/singular_integral.hpp"

namespace fracwave {

/// Pointwise power inequality Op(psi^l) <= l psi^{l-1} Op(psi) for
/// nonnegative psi and l >= 1, probed by quadrature at the given points.
struct PowerInequalityReport {
    double l = 1.0;
    double s = 0.5;
    int n = 1;
    std::vector<Point> points;
    std::vector<double> lhs; // Op(psi^l)
    std::vector<double> rhs; // l psi^{l-1} Op(psi)
    double max_violation = 0.0;
    double scale = 1.0;
    bool passed = false;
};

PowerInequalityReport check_pointwise_inequality(const AmbientFunction& psi, double l, FracOrder s, int n,
                                                 std::span<const Point> points,
                                                 const QuadratureScheme& scheme = {});

/// Radial function with caller-supplied first and second derivatives.
/// The derivatives are validated against central differences before use.
struct RadialC2 {
    std::function<double(double)> f;
    std::function<double(double)> df;
    std::function<double(double)> ddf;
    std::vector<double> breakpoints;           // same meaning as AmbientFunction
    std::function<double(double)> tail_sup;    // optional when compactly supported
};

/// Radial sign criterion f''(r) + (n-2s+1) f'(r)/r <= 0 together with the
/// quadrature values of the operator at the same radii.
struct RadialCriterionReport {
    bool criterion_holds = false;
    double max_criterion_lhs = 0.0;
    std::vector<double> radii;
    std::vector<double> criterion_lhs;
    std::vector<double> operator_values;
    double min_operator_value = 0.0;
    double scale = 1.0;
    bool implication_ok = true; // criterion_holds => operator >= -1e-6 * scale
};

RadialCriterionReport check_radial_criterion(const RadialC2& psi, int n, FracOrder s,
                                             std::span<const double> r_samples,
                                             const QuadratureScheme& scheme = {});

/// Dilation covariance Op(psi(./R))(x) = R^{-2s} Op(psi)(x/R), both sides by
/// quadrature.
struct ScalingReport {
    double R = 1.0;
    std::vector<Point> points;
    std::vector<double> lhs;
    std::vector<double> rhs;
    double max_rel_deviation = 0.0;
    bool passed = false;
};

ScalingReport check_scaling(const AmbientFunction& psi, FracOrder s, int n, double R,
                            std::span<const Point> points, const QuadratureScheme& scheme = {});

/// Far-field decay: least-squares slope of log |Op psi| against log |x|.
/// Passing means slope <= -(n + 2s) + 0.1.
struct DecayFitReport {
    double slope = 0.0;
    double bound = 0.0;
    std::vector<double> radii;
    std::vector<double> values;
    bool passed = false;
};

DecayFitReport check_decay(const AmbientFunction& psi, FracOrder s, int n, std::span<const double> radii,
                           const QuadratureScheme& scheme = {});

} // namespace fracwave

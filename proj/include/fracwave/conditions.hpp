#pragma once

#include <span>

#include "fracwave/cutoff.hpp"
#include "fracwave/fractional.hpp"

namespace fracwave {

/// Sup over the grid of eta^{-p'/p} (|eta'|^{p'} + |eta''|^{p'}) on [1/2, 1].
/// The condition asks for a finite constant; the attained sup is recorded.
struct TimeCutoffConditionReport {
    double sup_value = 0.0;
    double argmax = 0.0;
    bool finite = true; // false = overflow detected, condition violated
};

TimeCutoffConditionReport verify_condition_time(const CutoffProfile& profile, double p,
                                                std::span<const double> t_grid);

/// Sup over the grid of phi^{1-p'^2} |Lap phi^{p'+1}|^{p'} on |x| in [1/2, 1],
/// with the Laplacian in radial form.
struct SpaceCutoffConditionReport {
    double sup_value = 0.0;
    double argmax = 0.0;
    bool finite = true;
};

SpaceCutoffConditionReport verify_condition_space(const CutoffProfile& profile, double p, int n,
                                                  std::span<const double> r_grid);

/// Max over the grid of p'(phi')^2 + phi (phi'' + (n-2 delta+1) phi'/r); the
/// sign condition passes when this stays <= 1e-9 * scale. The equivalent
/// explicit inequality form is evaluated alongside for cross-checking.
struct SignConditionReport {
    double max_lhs = 0.0;
    double argmax = 0.0;
    double scale = 1.0;
    bool passed = false;
    double max_explicit_residual = 0.0; // explicit-form LHS - RHS, max over grid
};

SignConditionReport verify_condition_sign(const CutoffProfile& profile, double p, int n, FracOrder delta,
                                          std::span<const double> r_grid);

double conjugate_exponent(double p);

} // namespace fracwave

#pragma once

#include "fracwave/fractional.hpp"

namespace fracwave {

enum class Criticality { Subcritical, Critical, Supercritical };

/// 1 + 2/(n - 2 delta); requires n > 2 delta.
double critical_exponent(int n, FracOrder delta);

/// Classification of p against the critical exponent; equality within 1e-12
/// counts as Critical. Throws HypothesisViolated when n <= 2 delta.
Criticality classify_exponent(double p, int n, FracOrder delta);

const char* to_string(Criticality c);

} // namespace fracwave

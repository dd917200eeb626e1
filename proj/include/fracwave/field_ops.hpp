#pragma once

#include "fracwave/grid.hpp"

namespace fracwave {

enum class NormKind { L1, L2, Linf, H1 };

/// Periodic trapezoid rule, h^n * sum of values. Spectrally accurate for
/// smooth periodic integrands; exact for trigonometric polynomials below
/// Nyquist.
double integrate(const RealField& f);

/// Pointwise product integral, h^n * sum f_j g_j.
double inner_product(const RealField& f, const RealField& g);

double norm(const RealField& f, NormKind kind);

/// Spectral partial derivative along `axis`.
RealField spectral_derivative(const RealField& f, int axis);

/// L2 norm evaluated on the spectral side: sqrt((2L)^{-n} sum |coeff|^2).
double spectral_l2(const SpectralField& F);

/// sqrt((2L)^{-n} sum |xi|^2 |coeff|^2), the L2 norm of the gradient.
double spectral_grad_l2(const SpectralField& F);

} // namespace fracwave

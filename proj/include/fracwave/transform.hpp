#pragma once

#include "fracwave/grid.hpp"

namespace fracwave {

/// Discrete Fourier transform with the quadrature-weight normalization:
/// coeff(m) = h^n sum_j f(x_j) exp(-i xi_m . x_j), so coeff(0) = integral of f
/// over the box. Throws NonFiniteField on non-finite input.
SpectralField forward_transform(const RealField& f);

/// Inverse of forward_transform: f(x_j) = (2L)^{-n} sum_m coeff(m) exp(+i ...).
/// The imaginary residue is discarded; pass `max_imag_rel` to retrieve
/// max |Im| / max(|Re|,1) for reality checks.
RealField inverse_transform(const SpectralField& F, double* max_imag_rel = nullptr);

/// Largest relative conjugate-symmetry defect |coeff(-m) - conj(coeff(m))|.
double conjugate_symmetry_defect(const SpectralField& F);

} // namespace fracwave

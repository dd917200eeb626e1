#pragma once

#include "fracwave/grid.hpp"

namespace fracwave {

/// Fractional order s strictly inside (0, 1).
struct FracOrder {
    double s;
};

/// Validating factory; throws ConfigError unless 0 < s < 1.
FracOrder frac_order(double s);

/// Normalization constant of the singular-integral operator,
/// C = 4^s Gamma(n/2 + s) / (pi^{n/2} |Gamma(-s)|), positive for s in (0,1).
/// The absolute value keeps the operator consistent with the |xi|^{2s}
/// Fourier multiplier realized by the spectral path.
double normalization_constant(int n, FracOrder s);

/// Fourier-multiplier realization: coefficients scaled by |xi|^{2s}
/// (zero at the zero mode), then transformed back.
RealField frac_laplacian_spectral(const RealField& f, FracOrder s);

/// Same multiplier applied in place on the spectral side.
void frac_multiplier_inplace(SpectralField& F, double two_s);

/// Self-adjointness defect |(v1, Op v2) - (v2, Op v1)| / max(|either|, 1e-300)
/// for the spectral operator of order gamma. Throws GridMismatch.
double parseval_symmetry_residual(const RealField& v1, const RealField& v2, double gamma);

} // namespace fracwave

#include "fracwave/fractional.hpp"

#include "fracwave/field_ops.hpp"
#include "fracwave/transform.hpp"

#include <cmath>
#include <numbers>

namespace fracwave {

FracOrder frac_order(double s) {
    if (!(s > 0.0) || !(s < 1.0)) throw ConfigError("fractional order must satisfy 0 < s < 1");
    return FracOrder{s};
}

double normalization_constant(int n, FracOrder s) {
    if (n < 1) throw ConfigError("normalization_constant: n must be >= 1");
    const double num = std::pow(4.0, s.s) * std::tgamma(0.5 * n + s.s);
    const double den = std::pow(std::numbers::pi, 0.5 * n) * std::abs(std::tgamma(-s.s));
    return num / den;
}

void frac_multiplier_inplace(SpectralField& F, double two_s) {
    const Grid& g = F.grid;
    const std::size_t total = g.size();
    for (std::size_t idx = 0; idx < total; ++idx) {
        auto ijk = g.unravel(idx);
        double k2 = 0.0;
        for (int d = 0; d < g.dim; ++d) {
            const double xi = g.frequency(ijk[d]);
            k2 += xi * xi;
        }
        F.coeffs[idx] *= (k2 == 0.0) ? 0.0 : std::pow(k2, 0.5 * two_s);
    }
}

RealField frac_laplacian_spectral(const RealField& f, FracOrder s) {
    SpectralField F = forward_transform(f);
    frac_multiplier_inplace(F, 2.0 * s.s);
    return inverse_transform(F);
}

double parseval_symmetry_residual(const RealField& v1, const RealField& v2, double gamma) {
    require_same_grid(v1.grid, v2.grid, "parseval_symmetry_residual");
    if (!(gamma > 0.0)) throw ConfigError("parseval_symmetry_residual: gamma must be positive");

    SpectralField F1 = forward_transform(v1);
    SpectralField F2 = forward_transform(v2);
    SpectralField G2 = F2;
    frac_multiplier_inplace(G2, 2.0 * gamma);
    SpectralField G1 = F1;
    frac_multiplier_inplace(G1, 2.0 * gamma);

    const double a = inner_product(v1, inverse_transform(G2));
    const double b = inner_product(v2, inverse_transform(G1));
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

} // namespace fracwave

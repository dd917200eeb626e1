#include "fracwave/field_ops.hpp"

#include "fracwave/transform.hpp"

#include <cmath>

namespace fracwave {

double integrate(const RealField& f) {
    require_finite(f, "integrate");
    double acc = 0.0;
    for (double v : f.values) acc += v;
    return acc * std::pow(f.grid.spacing(), f.grid.dim);
}

double inner_product(const RealField& f, const RealField& g) {
    require_same_grid(f.grid, g.grid, "inner_product");
    require_finite(f, "inner_product");
    require_finite(g, "inner_product");
    double acc = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) acc += f.values[i] * g.values[i];
    return acc * std::pow(f.grid.spacing(), f.grid.dim);
}

RealField spectral_derivative(const RealField& f, int axis) {
    if (axis < 0 || axis >= f.grid.dim) throw ConfigError("spectral_derivative: axis out of range");
    SpectralField F = forward_transform(f);
    const Grid& g = f.grid;
    const int N = g.points_per_axis;
    const std::size_t total = g.size();
    for (std::size_t idx = 0; idx < total; ++idx) {
        auto ijk = g.unravel(idx);
        const int m = g.alias(ijk[axis]);
        // the unpaired Nyquist mode has no conjugate partner; drop it so the
        // derivative of a real field stays real
        double xi = (m == -N / 2) ? 0.0 : g.frequency(ijk[axis]);
        F.coeffs[idx] *= std::complex<double>(0.0, xi);
    }
    return inverse_transform(F);
}

double norm(const RealField& f, NormKind kind) {
    require_finite(f, "norm");
    const double hn = std::pow(f.grid.spacing(), f.grid.dim);
    switch (kind) {
        case NormKind::L1: {
            double acc = 0.0;
            for (double v : f.values) acc += std::abs(v);
            return acc * hn;
        }
        case NormKind::L2: {
            double acc = 0.0;
            for (double v : f.values) acc += v * v;
            return std::sqrt(acc * hn);
        }
        case NormKind::Linf: {
            double m = 0.0;
            for (double v : f.values) m = std::max(m, std::abs(v));
            return m;
        }
        case NormKind::H1: {
            const double l2 = norm(f, NormKind::L2);
            SpectralField F = forward_transform(f);
            const double grad = spectral_grad_l2(F);
            return std::sqrt(l2 * l2 + grad * grad);
        }
    }
    return 0.0;
}

double spectral_l2(const SpectralField& F) {
    double acc = 0.0;
    for (const auto& c : F.coeffs) acc += std::norm(c);
    return std::sqrt(acc * std::pow(2.0 * F.grid.half_width, -F.grid.dim));
}

double spectral_grad_l2(const SpectralField& F) {
    const Grid& g = F.grid;
    const std::size_t total = g.size();
    double acc = 0.0;
    for (std::size_t idx = 0; idx < total; ++idx) {
        auto ijk = g.unravel(idx);
        double k2 = 0.0;
        for (int d = 0; d < g.dim; ++d) {
            const double xi = g.frequency(ijk[d]);
            k2 += xi * xi;
        }
        acc += k2 * std::norm(F.coeffs[idx]);
    }
    return std::sqrt(acc * std::pow(2.0 * g.half_width, -g.dim));
}

} // namespace fracwave

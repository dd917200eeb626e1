#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "fracwave/errors.hpp"

namespace fracwave {

/// A point in R^n, n <= 3. Only the first `dim` entries are meaningful.
using Point = std::array<double, 3>;

/// Periodic uniform lattice on the box [-L, L)^n.
///
/// Frequencies follow the signed-alias convention: axis index k maps to the
/// integer m = k for k < N/2 and m = k - N otherwise, with xi = (pi/L) m.
/// Values are stored row-major over axes.
struct Grid {
    int dim = 1;              // n in {1,2,3}
    int points_per_axis = 16; // N, even, >= 16
    double half_width = 1.0;  // L

    double spacing() const { return 2.0 * half_width / points_per_axis; }

    std::size_t size() const {
        std::size_t s = 1;
        for (int d = 0; d < dim; ++d) s *= static_cast<std::size_t>(points_per_axis);
        return s;
    }

    int alias(int k) const { return k < points_per_axis / 2 ? k : k - points_per_axis; }

    double frequency(int k) const;

    double coordinate(int k) const { return -half_width + k * spacing(); }

    /// Decompose a flat row-major index into per-axis indices.
    std::array<int, 3> unravel(std::size_t idx) const;

    bool operator==(const Grid&) const = default;
};

/// Validating factory; throws ConfigError on bad parameters.
Grid make_grid(int dim, int points_per_axis, double half_width);

/// Samples of a real-valued function on a Grid, row-major.
struct RealField {
    Grid grid;
    std::vector<double> values;
};

/// Complex coefficients on the frequency lattice of a Grid, same layout.
struct SpectralField {
    Grid grid;
    std::vector<std::complex<double>> coeffs;
};

RealField zero_field(const Grid& grid);
RealField sample(const Grid& grid, const std::function<double(const Point&)>& f);

bool all_finite(const RealField& f);
void require_finite(const RealField& f, const char* where);
void require_same_grid(const Grid& a, const Grid& b, const char* where);

} // namespace fracwave

#include "fracwave/grid.hpp"

#include <cmath>
#include <numbers>

namespace fracwave {

double Grid::frequency(int k) const {
    return std::numbers::pi / half_width * alias(k);
}

std::array<int, 3> Grid::unravel(std::size_t idx) const {
    std::array<int, 3> out{0, 0, 0};
    for (int d = dim - 1; d >= 0; --d) {
        out[d] = static_cast<int>(idx % points_per_axis);
        idx /= points_per_axis;
    }
    return out;
}

Grid make_grid(int dim, int points_per_axis, double half_width) {
    if (dim < 1 || dim > 3) throw ConfigError("grid dimension must be 1, 2 or 3");
    if (points_per_axis < 16 || points_per_axis % 2 != 0)
        throw ConfigError("points_per_axis must be an even integer >= 16");
    if (!(half_width > 0.0) || !std::isfinite(half_width))
        throw ConfigError("half_width must be positive and finite");
    return Grid{dim, points_per_axis, half_width};
}

RealField zero_field(const Grid& grid) {
    return RealField{grid, std::vector<double>(grid.size(), 0.0)};
}

RealField sample(const Grid& grid, const std::function<double(const Point&)>& f) {
    RealField out{grid, std::vector<double>(grid.size())};
    const int N = grid.points_per_axis;
    Point x{0.0, 0.0, 0.0};
    if (grid.dim == 1) {
        for (int i = 0; i < N; ++i) {
            x[0] = grid.coordinate(i);
            out.values[i] = f(x);
        }
    } else if (grid.dim == 2) {
        std::size_t idx = 0;
        for (int i = 0; i < N; ++i) {
            x[0] = grid.coordinate(i);
            for (int j = 0; j < N; ++j, ++idx) {
                x[1] = grid.coordinate(j);
                out.values[idx] = f(x);
            }
        }
    } else {
        std::size_t idx = 0;
        for (int i = 0; i < N; ++i) {
            x[0] = grid.coordinate(i);
            for (int j = 0; j < N; ++j) {
                x[1] = grid.coordinate(j);
                for (int k = 0; k < N; ++k, ++idx) {
                    x[2] = grid.coordinate(k);
                    out.values[idx] = f(x);
                }
            }
        }
    }
    return out;
}

bool all_finite(const RealField& f) {
    for (double v : f.values)
        if (!std::isfinite(v)) return false;
    return true;
}

void require_finite(const RealField& f, const char* where) {
    if (f.values.size() != f.grid.size()) throw GridMismatch(std::string(where) + ": value count does not match grid");
    if (!all_finite(f)) throw NonFiniteField(std::string(where) + ": field contains non-finite values");
}

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
    if (!(a == b)) throw GridMismatch(std::string(where) + ": fields live on different grids");
}

} // namespace fracwave

#include "fracwave/fit.hpp"

#include "fracwave/errors.hpp"

namespace fracwave {

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw DegenerateFit("linear_fit: need >= 2 paired samples");
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    if (det == 0.0) throw DegenerateFit("linear_fit: abscissae are all identical");
    return LinearFit{(n * sxy - sx * sy) / det, (sxx * sy - sx * sxy) / det};
}

} // namespace fracwave

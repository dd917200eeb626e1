#pragma once

#include <span>

namespace fracwave {

struct LinearFit {
    double slope;
    double intercept;
};

/// Ordinary least squares y = slope * x + intercept. Needs >= 2 points.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

} // namespace fracwave

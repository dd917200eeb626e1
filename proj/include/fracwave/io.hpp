#pragma once

#include <string>

#include "fracwave/grid.hpp"

namespace fracwave {

/// Writes <path_base>.json (grid header) and <path_base>.csv (row-major
/// values, one per line). The header records dimension, points_per_axis,
/// half_width, ordering and the values file name.
void save_field(const RealField& f, const std::string& path_base);

/// Reads a field written by save_field.
RealField load_field(const std::string& path_base);

} // namespace fracwave

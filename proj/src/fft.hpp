#pragma once

#include <complex>
#include <span>

#include "mdnls/grid.hpp"

namespace mdnls::detail {

/// Unnormalized in-place DFT over the grid (sign -1 forward, +1 backward).
/// Plans are created once per (dim, points) and shared; execution is
/// reentrant.
void dft_forward(const Grid& grid, std::span<std::complex<double>> data);
void dft_backward(const Grid& grid, std::span<std::complex<double>> data);

}  // namespace mdnls::detail

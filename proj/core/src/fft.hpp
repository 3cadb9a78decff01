#pragma once

#include <cstddef>
#include <vector>

#include "stokes_outflow/core.hpp"

namespace stokes_outflow::detail {

/// In-place multi-dimensional DFT over a row-major array. forward uses
/// e^{-i k x} and divides by the total size; backward is unnormalized.
void fft_nd(const std::vector<std::size_t>& n, CVec& data, bool forward);

}  // namespace stokes_outflow::detail

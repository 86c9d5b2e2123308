#pragma once

#include "ultra/kernels.hpp"

namespace ultra::spectral::kernels::detail {

// Shared per-block loops; the serial and OpenMP implementations differ only
// in how blocks are scheduled, never in what a block computes.

double block_norm2(std::span<const double> weight, std::span<const cplx> c, double inv,
                   std::size_t lo, std::size_t hi);

MaxAbsResult block_max_abs(std::span<const cplx> c, std::size_t lo, std::size_t hi);

MaxAbsResult block_max_val(std::span<const double> v, std::size_t lo, std::size_t hi);

}  // namespace ultra::spectral::kernels::detail

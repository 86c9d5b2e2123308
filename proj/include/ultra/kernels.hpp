#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ultra::spectral::kernels {

// Data-parallel inner loops of the spectral harness.  Each kernel has a
// serial reference implementation and an OpenMP implementation; both use
// the same fixed block decomposition with an ordered combine, so results
// are bit-identical regardless of thread count.  The serial variants stay
// as the correctness oracle and as the benchmark baseline.

inline constexpr std::size_t kBlock = 4096;

using cplx = std::complex<double>;

struct MaxAbsResult {
    double max_abs = 0.0;     ///< max |c_i|
    std::size_t argmax = 0;   ///< first index attaining it
};

struct Impl {
    /// out_i = f_i * c_i (pointwise symbol multiplication).
    void (*multiply)(std::span<const double> factor, std::span<const cplx> in,
                     std::span<cplx> out);
    /// sum of w_i |c_i|^2 with the fixed blocked reduction, scaled by
    /// 1/scale^2 to avoid overflow: returns sum_i w_i |c_i/scale|^2.
    double (*weighted_norm2)(std::span<const double> weight, std::span<const cplx> c,
                             double scale);
    MaxAbsResult (*max_abs)(std::span<const cplx> c);
    /// max over i of value_i with first-maximizer tie-break.
    MaxAbsResult (*max_val)(std::span<const double> v);
};

const Impl& serial();
const Impl& openmp();  ///< falls back to serial when OpenMP is compiled out

/// Active implementation: openmp when available and enabled.
const Impl& active(bool parallel);

/// Adaptive pick: thread startup costs more than the work below this many
/// points, and the two implementations agree bit for bit, so small inputs
/// run serial unconditionally.
inline constexpr std::size_t kParallelCutover = 1u << 15;

inline const Impl& active_for(std::size_t n, bool parallel) {
    return active(parallel && n >= kParallelCutover);
}

bool openmp_available();

}  // namespace ultra::spectral::kernels

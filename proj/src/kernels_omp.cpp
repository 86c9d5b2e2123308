#include <algorithm>
#include <vector>

#include "kernels_detail.hpp"
#include "ultra/kernels.hpp"

#ifdef ULTRA_HAVE_OPENMP
#include <omp.h>
#endif

namespace ultra::spectral::kernels {

#ifdef ULTRA_HAVE_OPENMP
namespace {

void multiply_omp(std::span<const double> f, std::span<const cplx> in, std::span<cplx> out) {
    const long n = static_cast<long>(in.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) out[i] = f[i] * in[i];
}

double norm2_omp(std::span<const double> w, std::span<const cplx> c, double scale) {
    const double inv = 1.0 / scale;
    const std::size_t n = c.size();
    const long nb = static_cast<long>((n + kBlock - 1) / kBlock);
    std::vector<double> partial(nb, 0.0);
#pragma omp parallel for schedule(static)
    for (long b = 0; b < nb; ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
        partial[b] = detail::block_norm2(w, c, inv, lo, std::min(lo + kBlock, n));
    }
    double total = 0.0;
    for (long b = 0; b < nb; ++b) total += partial[b];  // ordered combine
    return total;
}

MaxAbsResult max_abs_omp(std::span<const cplx> c) {
    const std::size_t n = c.size();
    const long nb = static_cast<long>((n + kBlock - 1) / kBlock);
    std::vector<MaxAbsResult> partial(nb);
#pragma omp parallel for schedule(static)
    for (long b = 0; b < nb; ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
        partial[b] = detail::block_max_abs(c, lo, std::min(lo + kBlock, n));
    }
    MaxAbsResult best;
    best.max_abs = -1e300;
    for (long b = 0; b < nb; ++b)
        if (partial[b].max_abs > best.max_abs) best = partial[b];
    if (best.max_abs < 0.0) best.max_abs = 0.0;
    return best;
}

MaxAbsResult max_val_omp(std::span<const double> v) {
    const std::size_t n = v.size();
    const long nb = static_cast<long>((n + kBlock - 1) / kBlock);
    std::vector<MaxAbsResult> partial(nb);
#pragma omp parallel for schedule(static)
    for (long b = 0; b < nb; ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
        partial[b] = detail::block_max_val(v, lo, std::min(lo + kBlock, n));
    }
    MaxAbsResult best;
    best.max_abs = -1e300;
    for (long b = 0; b < nb; ++b)
        if (partial[b].max_abs > best.max_abs) best = partial[b];
    return best;
}

}  // namespace
#endif

bool openmp_available() {
#ifdef ULTRA_HAVE_OPENMP
    return true;
#else
    return false;
#endif
}

const Impl& openmp() {
#ifdef ULTRA_HAVE_OPENMP
    static const Impl impl{multiply_omp, norm2_omp, max_abs_omp, max_val_omp};
    return impl;
#else
    return serial();
#endif
}

}  // namespace ultra::spectral::kernels

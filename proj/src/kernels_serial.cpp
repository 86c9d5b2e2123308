#include "ultra/kernels.hpp"

#include <cmath>

#include "kernels_detail.hpp"

namespace ultra::spectral::kernels {

// Reference implementations.  The OpenMP variants must reproduce these
// bit for bit; both use the same per-block loops and the same ordered
// combine over blocks.

namespace detail {

double block_norm2(std::span<const double> weight, std::span<const cplx> c, double inv,
                   std::size_t lo, std::size_t hi) {
    double acc = 0.0;
    if (weight.empty()) {  // empty weight means all ones
        for (std::size_t i = lo; i < hi; ++i) {
            const double re = c[i].real() * inv;
            const double im = c[i].imag() * inv;
            acc += re * re + im * im;
        }
        return acc;
    }
    for (std::size_t i = lo; i < hi; ++i) {
        const double re = c[i].real() * inv;
        const double im = c[i].imag() * inv;
        acc += weight[i] * (re * re + im * im);
    }
    return acc;
}

MaxAbsResult block_max_abs(std::span<const cplx> c, std::size_t lo, std::size_t hi) {
    MaxAbsResult r;
    r.argmax = lo;
    for (std::size_t i = lo; i < hi; ++i) {
        const double a = std::abs(c[i]);
        if (a > r.max_abs) {
            r.max_abs = a;
            r.argmax = i;
        }
    }
    return r;
}

MaxAbsResult block_max_val(std::span<const double> v, std::size_t lo, std::size_t hi) {
    MaxAbsResult r;
    r.argmax = lo;
    r.max_abs = -1e300;
    for (std::size_t i = lo; i < hi; ++i)
        if (v[i] > r.max_abs) {
            r.max_abs = v[i];
            r.argmax = i;
        }
    return r;
}

}  // namespace detail

namespace {

void multiply_serial(std::span<const double> f, std::span<const cplx> in, std::span<cplx> out) {
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = f[i] * in[i];
}

double norm2_serial(std::span<const double> w, std::span<const cplx> c, double scale) {
    const double inv = 1.0 / scale;
    const std::size_t n = c.size();
    double total = 0.0;
    for (std::size_t lo = 0; lo < n; lo += kBlock)
        total += detail::block_norm2(w, c, inv, lo, std::min(lo + kBlock, n));
    return total;
}

MaxAbsResult max_abs_serial(std::span<const cplx> c) {
    MaxAbsResult best;
    best.max_abs = -1e300;
    const std::size_t n = c.size();
    for (std::size_t lo = 0; lo < n; lo += kBlock) {
        const MaxAbsResult r = detail::block_max_abs(c, lo, std::min(lo + kBlock, n));
        if (r.max_abs > best.max_abs) best = r;
    }
    if (best.max_abs < 0.0) best.max_abs = 0.0;
    return best;
}

MaxAbsResult max_val_serial(std::span<const double> v) {
    MaxAbsResult best;
    best.max_abs = -1e300;
    const std::size_t n = v.size();
    for (std::size_t lo = 0; lo < n; lo += kBlock) {
        const MaxAbsResult r = detail::block_max_val(v, lo, std::min(lo + kBlock, n));
        if (r.max_abs > best.max_abs) best = r;
    }
    return best;
}

}  // namespace

const Impl& serial() {
    static const Impl impl{multiply_serial, norm2_serial, max_abs_serial, max_val_serial};
    return impl;
}

const Impl& active(bool parallel) { return parallel ? openmp() : serial(); }

}  // namespace ultra::spectral::kernels

#include "ultra/tail.hpp"

#include <algorithm>
#include <cmath>

namespace ultra::tail {

std::size_t begin(std::size_t n, double fraction) {
    if (n <= 2) return 0;
    auto len = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * fraction));
    len = std::max<std::size_t>(len, 2);
    len = std::min(len, n);
    return n - len;
}

double ls_slope(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = std::min(x.size(), y.size());
    if (n < 2) return 0.0;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) return 0.0;
    return sxy / sxx;
}

double mean(std::span<const double> v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

Monotone strictly_monotone(std::span<const double> v, int dir, double tol, std::size_t* where) {
    bool prev_tie = false;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const double step = dir * (v[i + 1] - v[i]);
        if (step < -tol) {
            if (where) *where = i;
            return Monotone::No;
        }
        const bool tie = step <= tol;
        if (tie && prev_tie) {
            if (where) *where = i;
            return Monotone::TieRun;
        }
        prev_tie = tie;
    }
    return Monotone::Yes;
}

bool nondecreasing(std::span<const double> v, double tol, std::size_t* where) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (v[i + 1] < v[i] - tol) {
            if (where) *where = i;
            return false;
        }
    }
    return true;
}

SeriesTrend series_convergence(std::span<const double> log_a, std::span<const long> ks,
                               const RunConfig& cfg, double* exponent) {
    const std::size_t n = std::min(log_a.size(), ks.size());
    if (exponent) *exponent = 0.0;
    if (n < 3) return SeriesTrend::Unclear;

    // terms not tending to zero cannot sum
    bool growing = true;
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (log_a[i + 1] < log_a[i] - 1e-12) growing = false;
    if (growing) return SeriesTrend::Diverges;

    // geometric branch: log(a_{k+1}/a_k) uniformly below log(1 - margin)
    double max_ratio = -1e300;
    for (std::size_t i = 0; i + 1 < n; ++i) max_ratio = std::max(max_ratio, log_a[i + 1] - log_a[i]);
    if (max_ratio <= std::log(1.0 - cfg.ratio_margin)) return SeriesTrend::Converges;

    // Raabe: p_k = k (a_k/a_{k+1} - 1)
    std::vector<double> p;
    p.reserve(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double r = log_a[i + 1] - log_a[i];
        p.push_back(static_cast<double>(ks[i]) * std::expm1(-r));
    }
    const double p_hat = mean(p);
    if (exponent) *exponent = p_hat;
    if (p_hat >= 1.0 + cfg.raabe_band) return SeriesTrend::Converges;
    if (p_hat <= 1.0 - cfg.raabe_band) return SeriesTrend::Diverges;

    // Bertrand refinement on the Raabe boundary: q_k = (p_k - 1) log k
    std::vector<double> q;
    q.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double lk = std::log(std::max<double>(2, ks[i]));
        q.push_back((p[i] - 1.0) * lk);
    }
    const double q_hat = mean(q);
    if (exponent) *exponent = q_hat;
    if (q_hat >= cfg.bertrand_min) return SeriesTrend::Converges;
    return SeriesTrend::Diverges;
}

}  // namespace ultra::tail

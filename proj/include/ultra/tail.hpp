#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ultra/config.hpp"

namespace ultra::tail {

/// Index where the tail window starts: the last ceil(n*fraction) entries,
/// never fewer than two.
std::size_t begin(std::size_t n, double fraction);

/// Least-squares slope of y against x.
double ls_slope(std::span<const double> x, std::span<const double> y);

enum class Monotone { Yes, No, TieRun };

/// Strict monotonicity with the tie rule used throughout: a single tie
/// (two equal consecutive values) passes, equality persisting across three
/// or more consecutive indices fails.  `dir` +1 tests increasing, -1
/// decreasing.  On No/TieRun, *where (if non-null) receives the offending
/// index.
Monotone strictly_monotone(std::span<const double> v, int dir, double tol,
                           std::size_t* where = nullptr);

/// Nondecreasing within tolerance (ties always pass).
bool nondecreasing(std::span<const double> v, double tol, std::size_t* where = nullptr);

enum class SeriesTrend { Converges, Diverges, Unclear };

/// Convergence evidence for sum(a_k) from the tail of log a_k, a_k > 0.
/// Applies in order: a geometric ratio test, the Raabe test and, on the
/// Raabe boundary, the Bertrand test.  `ks` are the indices matching
/// `log_a` (needed because the tests weigh by k).
SeriesTrend series_convergence(std::span<const double> log_a, std::span<const long> ks,
                               const RunConfig& cfg, double* exponent = nullptr);

/// Mean of a span (helper for the heuristics above).
double mean(std::span<const double> v);

}  // namespace ultra::tail

#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "ultra/config.hpp"
#include "ultra/verdict.hpp"
#include "ultra/weight_sequence.hpp"

namespace ultra::omega {

struct Power { double a; };      ///< omega(t) = t^a, 0 < a <= 1
struct LogPower { double beta; };///< omega(t) = max(0, log t)^beta, beta > 1
struct Table {                   ///< piecewise-linear samples, t increasing
    std::vector<double> t;
    std::vector<double> w;
};

using OmegaFamily = std::variant<Power, LogPower, Table>;

/// A weight function with its numerical working domain [1, t_max].
/// phi(s) = omega(e^s) is evaluated exactly for the parametric families and
/// by linear interpolation in t for tables.
struct WeightFunction {
    OmegaFamily family;
    double t_max = 1e8;

    double omega(double t) const;
    double phi(double s) const;     ///< omega(exp(s))
    double s_max() const;           ///< log(t_max)
    bool is_table() const { return std::holds_alternative<Table>(family); }
    std::string describe() const;
};

WeightFunction make_weight_function(OmegaFamily family, double t_max);

/// Parses "power:0.5", "log-power:2".  Table functions come from files.
WeightFunction parse_omega(const std::string& text, double t_max);

/// Axis checks on a sampled grid of `cfg.omega_grid` points (rejected when
/// coarser than 64):
///   alpha        omega(2t) = O(omega(t))
///   beta         log t = o(omega(t))          [standard reading]
///   beta-literal omega(t) = o(log t)          [only when paper_literal]
///   gamma        discrete convexity of phi on the s-grid
///   concave      omega concave on the t-grid (eventual concavity reported)
///   sublinear    omega(t) = o(t)
Report check_omega(const WeightFunction& w, const RunConfig& cfg, bool paper_literal = false);

enum class MaximizerPos { Interior, LowerEdge, UpperEdge };

/// Young conjugate table: phi*(y) = sup_{s>=0} (s y - phi(s)).
/// Points whose maximizer escapes the top of the s-grid are tagged
/// UpperEdge and must not be trusted; the exact boundary maximizer s = 0
/// (LowerEdge) is legitimate.
struct ConjugateTable {
    std::vector<double> y;
    std::vector<double> phi_star;
    std::vector<MaximizerPos> pos;
    std::vector<double> maximizer;  ///< argmax s

    bool trusted(std::size_t i) const { return pos[i] != MaximizerPos::UpperEdge; }
};

/// Conjugate on an explicit, increasing y-list.  One monotone sweep over
/// the s-grid (the maximizer is nondecreasing in y) with a ternary-search
/// refinement inside the bracketing cell.  Precondition: discrete convexity
/// of phi (gamma) holds on the grid.
ConjugateTable conjugate_at(const WeightFunction& w, const std::vector<double>& ys,
                            const RunConfig& cfg);

/// Uniform y-grid [0, y_max] with `points` entries.
ConjugateTable conjugate(const WeightFunction& w, double y_max, int points, const RunConfig& cfg);

struct AssociatedMatrixEntry {
    double lambda;
    seqcore::WeightSequence W;  ///< logW[k] = (phi*(lambda k) - phi*(0)) / lambda
};

/// The weight matrix associated to omega, one sequence per lambda,
/// normalized so logW[0] = 0.  Rejects when any required conjugate value is
/// not trusted (maximizer escaped the grid).
std::vector<AssociatedMatrixEntry> associated_matrix(const WeightFunction& w,
                                                     const std::vector<double>& lambdas, int K,
                                                     const RunConfig& cfg);

}  // namespace ultra::omega

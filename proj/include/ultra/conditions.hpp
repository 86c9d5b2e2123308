#pragma once

#include <string>

#include "ultra/config.hpp"
#include "ultra/verdict.hpp"
#include "ultra/weight_sequence.hpp"

namespace ultra::seqcore {

enum class Condition {
    WeakLogConvex,      ///< M_k^2 <= M_{k-1} M_{k+1}
    StrongLogConvex,    ///< m_k^2 <= m_{k-1} m_{k+1}
    M0,                 ///< lim m_k^{1/k} = infinity      (limit condition)
    M1,                 ///< m_k^{1/k} nondecreasing
    M2Prime,            ///< exists gamma: M_{k+1} <= gamma^{k+1} M_k
    M2,                 ///< exists gamma: M_{j+k} <= gamma^{j+k+1} M_j M_k
    StrongConcl,        ///< m_j m_k <= m_{j+k}
    NonQuasianalytic,   ///< sum M_{k-1}/M_k < infinity     (limit condition)
    AlmostIncreasing,   ///< exists C: m_j^{1/j} <= C m_k^{1/k} for j <= k
    DerivClosedSmallM,  ///< exists C: m_{k+1} <= C^{k+1} m_k
};

Condition parse_condition(const std::string& tag);  ///< throws on unknown tag
const char* condition_tag(Condition c);

/// Pointwise conditions are decided exactly on the window (Holds / Fails
/// with witness).  Limit conditions return HoldsEmpirically / Fails /
/// Inconclusive with tail diagnostics.  Constant-bearing conditions attach
/// the minimal empirical constant over the window ("gamma_hat" / "C_hat")
/// and the trend of the per-index requirement.
Verdict check_condition(const WeightSequence& M, Condition c, const RunConfig& cfg);

/// All conditions, in declaration order.
Report check_all_conditions(const WeightSequence& M, const RunConfig& cfg);

/// The window checks behind the basic sequence lemmas:
///   (a) M_j M_k <= M_{j+k}
///   (b) Lambda_k nondecreasing
///   (c) mu_k nondecreasing
///   (d) Lambda_k <= mu_k
///   (e) Theta_k + 1 <= Theta_{k+1}    (checked when M1 holds)
///   (f) mu_k + 1 <= mu_{k+1}          (checked when strong log-convexity holds)
///   (g) k! <= M_k                     (checked when M1 holds)
/// Items whose precondition fails are reported Inconclusive with a note.
Report check_lemma_chain(const WeightSequence& M, const RunConfig& cfg);

/// Verifies 1/e <= k/(e (k!)^{1/k}) <= (2 pi k)^{-1/(2k)} <= 1 for
/// 1 <= k <= kmax, in log-space.
Verdict stirling_chain(long kmax, const RunConfig& cfg);

}  // namespace ultra::seqcore

#pragma once

#include <string>
#include <variant>
#include <vector>

namespace ultra::seqcore {

/// A weight sequence truncated at order K, stored in log-space:
/// logM[k] = log M_k for k = 0..K.
///
/// Invariants enforced at construction: logM[0] == 0 (M_0 = 1),
/// logM[1] >= 0 (M_1 >= 1), K >= 8, all entries finite.  Log-convexity is
/// deliberately *not* enforced; it is a checkable condition, and the
/// constructive transforms legitimately produce non-convex sequences.
struct WeightSequence {
    std::string name;
    std::vector<double> logM;  ///< size K+1

    int K() const { return static_cast<int>(logM.size()) - 1; }
};

/// Throws std::invalid_argument when the invariants fail.
WeightSequence make_sequence(std::string name, std::vector<double> logM);

/// Restriction to a smaller window (same values, K' <= K).
WeightSequence truncate(const WeightSequence& M, int new_K);

/// Derived log-space views.  Entries at k = 0 of the k>=1 views are NaN.
///   log_m[k]      = logM[k] - log k!          (m_k = M_k / k!)
///   log_mu[k]     = logM[k] - logM[k-1]       (mu_k = M_k / M_{k-1})
///   log_lambda[k] = logM[k] / k               (Lambda_k = M_k^{1/k})
///   log_theta[k]  = log k + log_m[k] / k      (Theta_k = k m_k^{1/k})
struct DerivedViews {
    std::vector<double> log_m;
    std::vector<double> log_mu;
    std::vector<double> log_lambda;
    std::vector<double> log_theta;
};

DerivedViews derived(const WeightSequence& M);

// Named families.
struct Gevrey { double s; };                 ///< G^s_k = (k!)^s, s >= 1
struct Bridge { double s; double sigma; };   ///< B^{s,sigma}_k = (k!)^s log(k+e)^{sigma k}
struct Lqr { double q; double r; };          ///< L^{q,r}_k = q^{k^r}, q > 1, r > 1
struct QGevrey { double q; };                ///< N^q_k = q^{k^2}

using Family = std::variant<Gevrey, Bridge, Lqr, QGevrey>;

/// Truncated log-values of a named family; parameters out of range are
/// rejected with the violated bound named.
WeightSequence build_family(const Family& f, int K);

/// Parses the "name:params" mini-language, e.g. "gevrey:2", "bridge:1:1",
/// "lqr:2:1.5", "qgevrey:2".
Family parse_family(const std::string& text);

std::string family_name(const Family& f);

}  // namespace ultra::seqcore

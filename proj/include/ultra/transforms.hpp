#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ultra/config.hpp"
#include "ultra/relations.hpp"
#include "ultra/verdict.hpp"
#include "ultra/weight_sequence.hpp"

namespace ultra::transforms {

/// Sample points (k, a_k) together with their least concave majorant
/// evaluated at the same indices.  hull[i] >= a[i], and hull is concave as
/// a sequence.
struct EnvelopePoints {
    std::vector<long> k;
    std::vector<double> a;
    std::vector<double> hull;
};

/// Least concave majorant sampled at the input indices, computed by an
/// upper monotone-chain hull over (k, a_k).  Equivalent to
/// inf_{x} ( sup_j (a_j - j x) + k x ), exact and O(n).
/// Requires >= 2 points with strictly increasing indices.
EnvelopePoints concave_envelope(const std::vector<long>& ks, const std::vector<double>& a);

struct KomatsuResult {
    seqcore::WeightSequence N;
    EnvelopePoints envelope;         ///< envelope of a_k = log(l_k/m_k)
    std::vector<double> log_c;       ///< log c_k = (a-hat_0 - a-hat_k)/k, k >= 1
    Verdict domination;              ///< L_k <= N_k on the window (log tolerance)
    Report sequence_axioms;          ///< weight-sequence axioms of N, reported not enforced
};

/// Interpolating lift: from L strictly below M (in the arrow sense) builds
/// N with L <= N, n_k^{1/k} nondecreasing and N strictly below M, where
/// n_k^{1/k} = max( m_k^{1/2k}, max_{j<=k} m_j^{1/j} / c_j ) and N_k = k! n_k.
///
/// Preconditions (rejected with the diagnostic attached when violated):
/// M has root-growth evidence (M0) and nondecreasing m_k^{1/k} (M1); the
/// comparison compare(L, M, lhd) holds empirically.
KomatsuResult komatsu_lift(const seqcore::WeightSequence& L, const seqcore::WeightSequence& M,
                           const RunConfig& cfg);

struct RegularizeResult {
    seqcore::WeightSequence Mt;      ///< M-tilde, root-regularized
    std::vector<double> log_nu;      ///< log nu_k, k >= 1
    bool boundary_flagged = true;    ///< last index's suffix minimum sees only itself
    Verdict envelope_bounds;         ///< m_k^{1/k} <= nu_k <= C m_k^{1/k}, exact on window
    Verdict equivalence;             ///< approx evidence between M and M-tilde
    Report sequence_axioms;
};

/// nu_k = C * suffix-min of m_l^{1/l} over l in [k, K]; M-tilde_0 = 1,
/// M-tilde_k = k! nu_k^k.  Precondition: the almost-increasing constant of
/// M on the window does not exceed C (rejected with witness otherwise).
RegularizeResult regularize_almost_increasing(const seqcore::WeightSequence& M, double C,
                                              const RunConfig& cfg);

/// Inputs for the dominating sequence: sup-norm table of coefficient
/// derivatives by order, and iterate norms by word length.
struct DominatingInputs {
    std::map<long, double> coeff_sup;    ///< order |alpha| -> sup norm (linear scale)
    std::map<long, double> iterate_norm; ///< word length nu -> norm (linear scale)
    long d = 1;                          ///< common operator order
};

/// L_k = max{ k!, coefficient sups up to order k, iterate norms with
/// nu <= k/d }, returned in log-space, k = 0..K.
std::vector<double> dominating_sequence(const DominatingInputs& in, int K);

struct OrderEqualization {
    std::vector<long> exponents;  ///< d'_j = prod_{i != j} d_i
    long common_order = 1;        ///< d = prod_j d_j
};

/// Rejects when the product overflows the desk-scale bound (2^31).
OrderEqualization equalize_orders(const std::vector<long>& orders);

}  // namespace ultra::transforms

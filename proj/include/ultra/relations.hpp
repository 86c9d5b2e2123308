#pragma once

#include <string>
#include <vector>

#include "ultra/config.hpp"
#include "ultra/verdict.hpp"
#include "ultra/weight_sequence.hpp"

namespace ultra::relations {

enum class Relation {
    Preceq,  ///< (M_k/N_k)^{1/k} bounded above
    Lhd,     ///< (M_k/N_k)^{1/k} -> 0
    Approx,  ///< preceq both ways
};

Relation parse_relation(const std::string& tag);
const char* relation_tag(Relation r);

/// Evidence for an asymptotic inclusion relation on a common window.
/// g_k = (logM[k] - logN[k]) / k drives every decision; the thresholds
/// (tail window, drop delta, preceq margin) are configuration and are
/// surfaced in the diagnostics.
struct RelationVerdict {
    Relation relation;
    Verdict status;
    std::vector<double> gap;  ///< g_k for k = 1..min(K_M, K_N)
    double tail_slope = 0.0;  ///< least-squares slope of g on the tail window
};

/// Requires a common window of length >= 8 (throws otherwise).
RelationVerdict compare(const seqcore::WeightSequence& M, const seqcore::WeightSequence& N,
                        Relation rel, const RunConfig& cfg);

}  // namespace ultra::relations

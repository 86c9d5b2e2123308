#pragma once

#include <string>
#include <vector>

#include "ultra/config.hpp"
#include "ultra/relations.hpp"
#include "ultra/verdict.hpp"
#include "ultra/weight_sequence.hpp"

namespace ultra::matrices {

/// Ordered finite family of weight sequences with a common window.
/// Pairwise pointwise comparability (the matrix axiom) is checked, not
/// assumed; see check_matrix.
struct WeightMatrix {
    struct Entry {
        double lambda;  ///< index parameter (also used as label)
        seqcore::WeightSequence M;
    };
    std::vector<Entry> entries;

    int common_K() const;  ///< throws on mixed truncation lengths or empty matrix
};

enum class MatrixMode { R, B };

MatrixMode parse_mode(const std::string& tag);

/// Partner certificate for one existential quantifier.
struct Pairing {
    std::size_t quantified = 0;  ///< index of the forall entry
    std::size_t partner = 0;     ///< index of the chosen exists entry
    double q_hat = 0.0;          ///< empirical constant of the chosen partner
};

struct MatrixCheck {
    Report report;                 ///< axiom, analytic inclusion, derivation closedness, roots
    std::vector<Pairing> closedness_pairing;
    std::vector<Pairing> iterated_pairing;  ///< d-step chain certificate (composed constant)
    Verdict semiregular;
    Verdict weakly_regular;
};

/// Mode R quantifies forall M exists N with M_{k+1} <= q^{k+1} N_k;
/// mode B quantifies forall N exists M with the same inequality.  The
/// d-step variant (M_{k+d} <= q^{k+1} N_k) is certified by composing the
/// one-step partner chain explicitly; its composed constant is reported per
/// quantified entry.
MatrixCheck check_matrix(const WeightMatrix& mm, MatrixMode mode, const RunConfig& cfg,
                         int step = 1);

enum class MatrixRelation { RoumieuPreceq, BeurlingPreceq, LhdMixed };

MatrixRelation parse_matrix_relation(const std::string& tag);

struct MatrixCompare {
    Verdict verdict;
    std::vector<Pairing> pairing;  ///< which partner satisfied each exists (empty for lhd-mixed)
};

/// RoumieuPreceq: forall M in mm exists N in nn with M preceq N.
/// BeurlingPreceq: forall N in nn exists M in mm with M preceq N.
/// LhdMixed: forall M in mm, forall N in nn, M lhd N.
MatrixCompare matrix_compare(const WeightMatrix& mm, const WeightMatrix& nn, MatrixRelation rel,
                             const RunConfig& cfg);

}  // namespace ultra::matrices

#include "ultra/weight_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ultra/conditions.hpp"
#include "ultra/tail.hpp"

namespace ultra::matrices {

namespace {

/// Pointwise comparability of two log-sequences: one must dominate the
/// other across the whole window.
Verdict comparable(const seqcore::WeightSequence& A, const seqcore::WeightSequence& B,
                   double tol) {
    const int K = std::min(A.K(), B.K());
    long above = -1, below = -1;  // first indices where A > B resp. A < B
    for (int k = 0; k <= K; ++k) {
        const double d = A.logM[k] - B.logM[k];
        if (d > tol && above < 0) above = k;
        if (d < -tol && below < 0) below = k;
    }
    if (above >= 0 && below >= 0) {
        Witness w;
        w.j = std::min(above, below);
        w.k = std::max(above, below);
        w.lhs = A.logM[w.j] - B.logM[w.j];
        w.rhs = A.logM[w.k] - B.logM[w.k];
        w.detail = "sequences cross: neither dominates pointwise";
        return Verdict::fails(w);
    }
    return Verdict::holds();
}

/// Boundedness evidence and window constant for the requirement
/// g_k = (logM[k+step] - logN[k]) / (k+1), the derivation-closedness
/// inequality M_{k+step} <= q^{k+1} N_k.
Verdict closedness(const seqcore::WeightSequence& M, const seqcore::WeightSequence& N, int step,
                   const RunConfig& cfg) {
    const int K = std::min(M.K(), N.K());
    std::vector<double> g;
    std::vector<long> ks;
    for (int k = 0; k + step <= K; ++k) {
        g.push_back((M.logM[k + step] - N.logM[k]) / (k + 1));
        ks.push_back(k);
    }
    if (g.size() < 4) return Verdict::inconclusive("window too short for the step");

    double gmax = g[0];
    long arg = 0;
    for (std::size_t i = 1; i < g.size(); ++i)
        if (g[i] > gmax) {
            gmax = g[i];
            arg = static_cast<long>(i);
        }
    const std::size_t t0 = tail::begin(g.size(), cfg.tail_fraction);
    bool growing = false;
    for (std::size_t i = t0; i + 1 < g.size(); ++i)
        if (g[i + 1] > g[i] + cfg.tol) growing = true;

    Verdict v;
    v.diag["q_hat"] = std::exp(gmax);
    if (!growing) {
        v.status = Status::HoldsEmpirically;
        return v;
    }
    // rising requirement: decide by the increment series of the running max
    std::vector<double> log_inc;
    std::vector<long> inc_ks;
    double running = g[0];
    for (std::size_t i = 1; i < g.size(); ++i)
        if (g[i] > running + cfg.tol) {
            log_inc.push_back(std::log(g[i] - running));
            inc_ks.push_back(ks[i]);
            running = g[i];
        }
    const std::size_t it0 = tail::begin(log_inc.size(), 2.0 * cfg.tail_fraction);
    double expo = 0.0;
    const auto trend = tail::series_convergence(
        std::span<const double>(log_inc.data() + it0, log_inc.size() - it0),
        std::span<const long>(inc_ks.data() + it0, inc_ks.size() - it0), cfg, &expo);
    v.diag["increment_exponent"] = expo;
    switch (trend) {
        case tail::SeriesTrend::Converges:
            v.status = Status::HoldsEmpirically;
            break;
        case tail::SeriesTrend::Diverges: {
            Witness w;
            w.k = ks[arg];
            w.lhs = gmax;
            w.detail = "required q grows without bound";
            v.status = Status::Fails;
            v.witness = w;
            break;
        }
        case tail::SeriesTrend::Unclear:
            v.status = Status::Inconclusive;
            break;
    }
    return v;
}

Status combine(Status a, Status b) {
    if (a == Status::Fails || b == Status::Fails) return Status::Fails;
    if (a == Status::Inconclusive || b == Status::Inconclusive) return Status::Inconclusive;
    if (a == Status::HoldsEmpirically || b == Status::HoldsEmpirically)
        return Status::HoldsEmpirically;
    return Status::Holds;
}

}  // namespace

int WeightMatrix::common_K() const {
    if (entries.empty()) throw std::invalid_argument("weight matrix: no entries");
    const int K = entries.front().M.K();
    for (const auto& e : entries)
        if (e.M.K() != K) throw std::invalid_argument("weight matrix: mixed truncation lengths");
    return K;
}

MatrixMode parse_mode(const std::string& tag) {
    if (tag == "R" || tag == "r") return MatrixMode::R;
    if (tag == "B" || tag == "b") return MatrixMode::B;
    throw std::invalid_argument("matrix mode must be R or B");
}

MatrixCheck check_matrix(const WeightMatrix& mm, MatrixMode mode, const RunConfig& cfg, int step) {
    const int K = mm.common_K();
    (void)K;
    if (step < 1) throw std::invalid_argument("check_matrix: step >= 1 required");
    const std::size_t n = mm.entries.size();

    MatrixCheck out;

    {  // (a) matrix axiom: pairwise pointwise comparability
        Verdict v = Verdict::holds();
        for (std::size_t i = 0; i < n && v.status == Status::Holds; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                Verdict c = comparable(mm.entries[i].M, mm.entries[j].M, cfg.tol);
                if (c.status == Status::Fails) {
                    c.witness->detail += " (entries " + std::to_string(i) + "," + std::to_string(j) + ")";
                    v = c;
                    break;
                }
            }
        out.report.add("axiom:total_order", v);
    }

    {  // (b) analytic inclusion for every entry
        Verdict agg = Verdict::holds_empirically();
        for (std::size_t i = 0; i < n; ++i) {
            const Verdict v = seqcore::check_condition(mm.entries[i].M, seqcore::Condition::M0, cfg);
            if (v.status != Status::HoldsEmpirically) {
                agg = v;
                if (agg.witness) agg.witness->j = static_cast<long>(i);
                else {
                    agg.note += " (entry " + std::to_string(i) + ")";
                }
                break;
            }
        }
        out.report.add("analytic_inclusion", agg);
    }

    {  // (c) derivation closedness, single-step and iterated
        Verdict agg = Verdict::holds_empirically();
        double worst_q = 1.0;
        for (std::size_t qi = 0; qi < n; ++qi) {
            // R: quantified entry is M, partner N;  B: quantified entry is N, partner M
            Verdict best;
            best.status = Status::Fails;
            std::size_t best_partner = 0;
            double best_q = 0.0;
            for (std::size_t pi = 0; pi < n; ++pi) {
                const auto& Mseq = (mode == MatrixMode::R) ? mm.entries[qi].M : mm.entries[pi].M;
                const auto& Nseq = (mode == MatrixMode::R) ? mm.entries[pi].M : mm.entries[qi].M;
                const Verdict v = closedness(Mseq, Nseq, 1, cfg);
                const double q = v.diag.count("q_hat") ? v.diag.at("q_hat") : 0.0;
                const bool better = v.status == Status::HoldsEmpirically &&
                                    (best.status != Status::HoldsEmpirically || q < best_q);
                if (better || (best.status == Status::Fails && v.status != Status::Fails)) {
                    best = v;
                    best_partner = pi;
                    best_q = q;
                }
            }
            out.closedness_pairing.push_back({qi, best_partner, best_q});
            worst_q = std::max(worst_q, best_q);
            if (best.status != Status::HoldsEmpirically) {
                agg = best;
                break;
            }
        }
        if (agg.status == Status::HoldsEmpirically) agg.diag["worst_q_hat"] = worst_q;
        out.report.add("derivation_closed", agg);
    }

    if (step > 1) {  // iterated chain certificate: compose one-step partners
        Verdict agg = Verdict::holds_empirically();
        for (std::size_t qi = 0; qi < n; ++qi) {
            std::size_t cur = qi;
            bool ok = true;
            for (int s = 0; s < step; ++s) {
                if (cur >= out.closedness_pairing.size()) { ok = false; break; }
                cur = out.closedness_pairing[cur].partner;
            }
            if (!ok) {
                agg = Verdict::inconclusive("chain interrupted");
                break;
            }
            // composed constant measured directly on the d-step inequality
            const auto& Mseq = (mode == MatrixMode::R) ? mm.entries[qi].M : mm.entries[cur].M;
            const auto& Nseq = (mode == MatrixMode::R) ? mm.entries[cur].M : mm.entries[qi].M;
            const Verdict v = closedness(Mseq, Nseq, step, cfg);
            out.iterated_pairing.push_back(
                {qi, cur, v.diag.count("q_hat") ? v.diag.at("q_hat") : 0.0});
            if (v.status != Status::HoldsEmpirically) {
                agg = v;
                break;
            }
        }
        out.report.add("derivation_closed_step", agg);
    }

    {  // (d) root monotonicity for every entry
        Verdict agg = Verdict::holds();
        for (std::size_t i = 0; i < n; ++i) {
            const Verdict v = seqcore::check_condition(mm.entries[i].M, seqcore::Condition::M1, cfg);
            if (v.status != Status::Holds) {
                agg = v;
                if (agg.witness) agg.witness->j = static_cast<long>(i);
                break;
            }
        }
        out.report.add("roots_increasing", agg);
    }

    const Status ax = out.report.find("axiom:total_order")->status;
    const Status ai = out.report.find("analytic_inclusion")->status;
    const Status dc = out.report.find("derivation_closed")->status;
    const Status ri = out.report.find("roots_increasing")->status;

    out.semiregular.status = combine(combine(ax, ai), dc);
    out.semiregular.note = mode == MatrixMode::R ? "R-semiregular evidence" : "B-semiregular evidence";
    out.weakly_regular.status = combine(out.semiregular.status, ri);
    out.weakly_regular.note =
        mode == MatrixMode::R ? "weakly R-regular evidence" : "weakly B-regular evidence";
    return out;
}

MatrixRelation parse_matrix_relation(const std::string& tag) {
    if (tag == "roumieu-preceq") return MatrixRelation::RoumieuPreceq;
    if (tag == "beurling-preceq") return MatrixRelation::BeurlingPreceq;
    if (tag == "lhd-mixed") return MatrixRelation::LhdMixed;
    throw std::invalid_argument("unknown matrix relation '" + tag + "'");
}

MatrixCompare matrix_compare(const WeightMatrix& mm, const WeightMatrix& nn, MatrixRelation rel,
                             const RunConfig& cfg) {
    mm.common_K();
    nn.common_K();
    MatrixCompare out;

    auto exists_partner = [&](const seqcore::WeightSequence& fixed, const WeightMatrix& pool,
                              bool fixed_is_left) -> std::pair<Verdict, std::size_t> {
        Verdict best = Verdict::fails({});
        std::size_t best_i = 0;
        bool saw_inconclusive = false;
        for (std::size_t i = 0; i < pool.entries.size(); ++i) {
            const auto& cand = pool.entries[i].M;
            const auto rv = fixed_is_left
                                ? relations::compare(fixed, cand, relations::Relation::Preceq, cfg)
                                : relations::compare(cand, fixed, relations::Relation::Preceq, cfg);
            if (rv.status.status == Status::HoldsEmpirically) return {rv.status, i};
            if (rv.status.status == Status::Inconclusive) saw_inconclusive = true;
            best = rv.status;
            best_i = i;
        }
        if (saw_inconclusive)
            return {Verdict::inconclusive("no partner decided, some undecided"), best_i};
        return {best, best_i};
    };

    switch (rel) {
        case MatrixRelation::RoumieuPreceq: {
            for (std::size_t qi = 0; qi < mm.entries.size(); ++qi) {
                auto [v, partner] = exists_partner(mm.entries[qi].M, nn, true);
                if (v.status != Status::HoldsEmpirically) {
                    out.verdict = v;
                    out.verdict.note = "no partner for entry " + std::to_string(qi);
                    return out;
                }
                out.pairing.push_back({qi, partner, 0.0});
            }
            out.verdict = Verdict::holds_empirically();
            return out;
        }
        case MatrixRelation::BeurlingPreceq: {
            for (std::size_t qi = 0; qi < nn.entries.size(); ++qi) {
                auto [v, partner] = exists_partner(nn.entries[qi].M, mm, false);
                if (v.status != Status::HoldsEmpirically) {
                    out.verdict = v;
                    out.verdict.note = "no partner for entry " + std::to_string(qi);
                    return out;
                }
                out.pairing.push_back({qi, partner, 0.0});
            }
            out.verdict = Verdict::holds_empirically();
            return out;
        }
        case MatrixRelation::LhdMixed: {
            bool saw_inconclusive = false;
            for (std::size_t i = 0; i < mm.entries.size(); ++i)
                for (std::size_t j = 0; j < nn.entries.size(); ++j) {
                    const auto rv = relations::compare(mm.entries[i].M, nn.entries[j].M,
                                                       relations::Relation::Lhd, cfg);
                    if (rv.status.status == Status::Fails) {
                        out.verdict = rv.status;
                        out.verdict.note =
                            "pair (" + std::to_string(i) + "," + std::to_string(j) + ") fails";
                        return out;
                    }
                    if (rv.status.status != Status::HoldsEmpirically) saw_inconclusive = true;
                }
            out.verdict = saw_inconclusive ? Verdict::inconclusive("some pair undecided")
                                           : Verdict::holds_empirically();
            return out;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace ultra::matrices

#include "ultra/relations.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ultra/tail.hpp"

namespace ultra::relations {

namespace {

struct GapStats {
    std::vector<double> g;          // g_k, k = 1..Kc
    std::size_t tail0 = 0;          // offset into g where the tail starts
    double tail_slope = 0.0;        // least squares against k
    double tail_logslope = 0.0;     // least squares against log k
    double tail_max = 0.0;
    double first_half_max = 0.0;
    double drop = 0.0;              // g_{3K/4} - g_K (positive when decreasing)
    tail::Monotone tail_dec = tail::Monotone::No;
    tail::Monotone tail_inc = tail::Monotone::No;
};

GapStats gap_stats(const seqcore::WeightSequence& M, const seqcore::WeightSequence& N,
                   const RunConfig& cfg) {
    const int Kc = std::min(M.K(), N.K());
    GapStats s;
    for (int k = 1; k <= Kc; ++k) s.g.push_back((M.logM[k] - N.logM[k]) / k);

    s.tail0 = tail::begin(s.g.size(), cfg.tail_fraction);
    std::span<const double> t(s.g.data() + s.tail0, s.g.size() - s.tail0);

    std::vector<double> xs(t.size()), lxs(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        xs[i] = static_cast<double>(s.tail0 + 1 + i);
        lxs[i] = std::log(xs[i]);
    }
    s.tail_slope = tail::ls_slope(xs, t);
    s.tail_logslope = tail::ls_slope(lxs, t);

    s.tail_max = *std::max_element(t.begin(), t.end());
    const std::size_t half = std::max<std::size_t>(1, s.g.size() / 2);
    s.first_half_max = *std::max_element(s.g.begin(), s.g.begin() + half);

    const std::size_t q3 = (3 * s.g.size()) / 4;
    s.drop = s.g[std::min(q3, s.g.size() - 1)] - s.g.back();

    s.tail_dec = tail::strictly_monotone(t, -1, 0.0);
    s.tail_inc = tail::strictly_monotone(t, +1, 0.0);
    return s;
}

/// Slope tolerance for the bounded-above decision, scaled so a sequence
/// with the strict-relation drop over the tail cannot also pass.
double slope_tol(const GapStats& s, const RunConfig& cfg) {
    const double tail_len = static_cast<double>(s.g.size() - s.tail0);
    return cfg.delta / (2.0 * tail_len);
}

/// Divergence of the gap to -infinity (dir -1) resp. +infinity (dir +1):
/// strictly monotone tail together with either the configured drop over the
/// last quarter or a persistent slope against log k.  The slope route keeps
/// factorial-type gaps (drop ~ s log(4/3) per index of Gevrey gap, below
/// delta on realistic windows) decidable.
bool diverging(const GapStats& s, int dir, const RunConfig& cfg) {
    const auto mono = dir < 0 ? s.tail_dec : s.tail_inc;
    if (mono != tail::Monotone::Yes) return false;
    const double drop = dir < 0 ? s.drop : -s.drop;
    return drop >= cfg.delta || dir * s.tail_logslope >= cfg.lhd_logslope;
}

Verdict decide_preceq(const GapStats& s, const RunConfig& cfg) {
    // opposite trend first: an unbounded rise is a refutation
    if (diverging(s, +1, cfg)) {
        Witness w;
        w.k = static_cast<long>(s.g.size());
        w.lhs = s.g.back();
        w.rhs = s.first_half_max;
        w.detail = "gap sequence rising on tail (opposite trend)";
        return Verdict::fails(w);
    }
    if (s.tail_max <= s.first_half_max + cfg.preceq_margin && s.tail_slope <= slope_tol(s, cfg))
        return Verdict::holds_empirically();
    return Verdict::inconclusive("gap neither clearly bounded nor clearly rising");
}

Verdict decide_lhd(const GapStats& s, const RunConfig& cfg) {
    if (diverging(s, -1, cfg)) return Verdict::holds_empirically();
    if (diverging(s, +1, cfg)) {
        Witness w;
        w.k = static_cast<long>(s.g.size());
        w.lhs = s.g.back();
        w.detail = "gap rising on tail (opposite trend)";
        return Verdict::fails(w);
    }
    // flat gap: bounded away from -infinity on this window
    const auto [mn, mx] =
        std::minmax_element(s.g.begin() + static_cast<long>(s.tail0), s.g.end());
    if (*mx - *mn <= cfg.delta / 10.0) {
        Witness w;
        w.k = static_cast<long>(s.g.size());
        w.lhs = *mx;
        w.rhs = *mn;
        w.detail = "gap flat on tail, no decay to -infinity";
        return Verdict::fails(w);
    }
    return Verdict::inconclusive("tail decrease below the configured drop");
}

}  // namespace

Relation parse_relation(const std::string& tag) {
    if (tag == "preceq") return Relation::Preceq;
    if (tag == "lhd") return Relation::Lhd;
    if (tag == "approx") return Relation::Approx;
    throw std::invalid_argument("unknown relation tag '" + tag + "'");
}

const char* relation_tag(Relation r) {
    switch (r) {
        case Relation::Preceq: return "preceq";
        case Relation::Lhd: return "lhd";
        case Relation::Approx: return "approx";
    }
    return "?";
}

RelationVerdict compare(const seqcore::WeightSequence& M, const seqcore::WeightSequence& N,
                        Relation rel, const RunConfig& cfg) {
    const int Kc = std::min(M.K(), N.K());
    if (Kc < 8) throw std::invalid_argument("compare: common window too short (need >= 8)");

    const GapStats fwd = gap_stats(M, N, cfg);

    RelationVerdict out;
    out.relation = rel;
    out.gap = fwd.g;
    out.tail_slope = fwd.tail_slope;

    switch (rel) {
        case Relation::Preceq:
            out.status = decide_preceq(fwd, cfg);
            break;
        case Relation::Lhd:
            out.status = decide_lhd(fwd, cfg);
            break;
        case Relation::Approx: {
            const Verdict a = decide_preceq(fwd, cfg);
            const GapStats bwd = gap_stats(N, M, cfg);
            const Verdict b = decide_preceq(bwd, cfg);
            if (a.status == Status::Fails) {
                out.status = a;
            } else if (b.status == Status::Fails) {
                out.status = b;
                if (out.status.witness) out.status.witness->detail += " (reverse direction)";
            } else if (a.status == Status::HoldsEmpirically && b.status == Status::HoldsEmpirically) {
                out.status = Verdict::holds_empirically();
            } else {
                out.status = Verdict::inconclusive("one of the two directions is undecided");
            }
            break;
        }
    }
    out.status.diag["tail_slope"] = fwd.tail_slope;
    out.status.diag["tail_logslope"] = fwd.tail_logslope;
    out.status.diag["tail_max"] = fwd.tail_max;
    out.status.diag["first_half_max"] = fwd.first_half_max;
    out.status.diag["drop"] = fwd.drop;
    out.status.diag["delta"] = cfg.delta;
    out.status.diag["preceq_margin"] = cfg.preceq_margin;
    return out;
}

}  // namespace ultra::relations

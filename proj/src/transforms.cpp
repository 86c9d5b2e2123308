#include "ultra/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ultra/conditions.hpp"
#include "ultra/tail.hpp"

namespace ultra::transforms {

namespace {

Report sequence_axiom_report(const seqcore::WeightSequence& S, const RunConfig& cfg) {
    Report r;
    r.add("weak-log-convex", seqcore::check_condition(S, seqcore::Condition::WeakLogConvex, cfg));
    r.add("M1", seqcore::check_condition(S, seqcore::Condition::M1, cfg));
    r.add("M0", seqcore::check_condition(S, seqcore::Condition::M0, cfg));
    return r;
}

}  // namespace

EnvelopePoints concave_envelope(const std::vector<long>& ks, const std::vector<double>& a) {
    if (ks.size() != a.size() || ks.size() < 2)
        throw std::invalid_argument("concave_envelope: need >= 2 points with matching sizes");
    for (std::size_t i = 0; i + 1 < ks.size(); ++i)
        if (ks[i + 1] <= ks[i])
            throw std::invalid_argument("concave_envelope: indices must be strictly increasing");

    // upper monotone chain: keep vertices with nonincreasing slopes
    std::vector<std::size_t> hull;
    auto cross = [&](std::size_t o, std::size_t p, std::size_t q) {
        const double ox = static_cast<double>(ks[o]), oy = a[o];
        const double px = static_cast<double>(ks[p]), py = a[p];
        const double qx = static_cast<double>(ks[q]), qy = a[q];
        return (px - ox) * (qy - oy) - (py - oy) * (qx - ox);
    };
    for (std::size_t i = 0; i < ks.size(); ++i) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), i) >= 0.0)
            hull.pop_back();
        hull.push_back(i);
    }

    EnvelopePoints out;
    out.k = ks;
    out.a = a;
    out.hull.resize(a.size());
    std::size_t seg = 0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        while (seg + 1 < hull.size() && ks[hull[seg + 1]] <= ks[i]) ++seg;
        if (hull[seg] == i || seg + 1 >= hull.size()) {
            // i coincides with a hull vertex (first and last points always are)
            out.hull[i] = a[i];
        } else {
            const std::size_t l = hull[seg], r = hull[seg + 1];
            const double t = static_cast<double>(ks[i] - ks[l]) / static_cast<double>(ks[r] - ks[l]);
            out.hull[i] = a[l] + t * (a[r] - a[l]);
        }
        out.hull[i] = std::max(out.hull[i], a[i]);  // guard against rounding below a data point
    }
    return out;
}

KomatsuResult komatsu_lift(const seqcore::WeightSequence& L, const seqcore::WeightSequence& M,
                           const RunConfig& cfg) {
    const int K = std::min(L.K(), M.K());

    const Verdict m0 = seqcore::check_condition(M, seqcore::Condition::M0, cfg);
    if (m0.status != Status::HoldsEmpirically)
        throw std::invalid_argument("komatsu_lift: M lacks root-growth (M0) evidence: " +
                                    std::string(to_string(m0.status)));
    const Verdict m1 = seqcore::check_condition(M, seqcore::Condition::M1, cfg);
    if (m1.status != Status::Holds)
        throw std::invalid_argument("komatsu_lift: M must have nondecreasing m_k^{1/k} (M1)");

    const auto rel = relations::compare(L, M, relations::Relation::Lhd, cfg);
    if (rel.status.status != Status::HoldsEmpirically) {
        std::string diag = "komatsu_lift: compare(L, M, lhd) is " +
                           std::string(to_string(rel.status.status)) +
                           " (tail_slope=" + std::to_string(rel.tail_slope) + ")";
        throw std::invalid_argument(diag);
    }

    const seqcore::DerivedViews dm = seqcore::derived(seqcore::truncate(M, K));

    // a_k = log(l_k / m_k), l_k = L_k / k!
    std::vector<long> ks(K + 1);
    std::vector<double> a(K + 1);
    for (int k = 0; k <= K; ++k) {
        ks[k] = k;
        a[k] = (L.logM[k] - std::lgamma(k + 1.0)) - dm.log_m[k];
    }
    EnvelopePoints env = concave_envelope(ks, a);

    // log c_k = (a-hat_0 - a-hat_k)/k;   log l-bar_k = a-hat_k + log m_k - a-hat_0
    std::vector<double> log_c(K + 1, std::numeric_limits<double>::quiet_NaN());
    for (int k = 1; k <= K; ++k) log_c[k] = (env.hull[0] - env.hull[k]) / k;

    // log n_k^{1/k} = max( log m_k/(2k), prefix max of (log m_j/j - log c_j) )
    std::vector<double> logN(K + 1, 0.0);
    double prefix = -std::numeric_limits<double>::infinity();
    for (int k = 1; k <= K; ++k) {
        prefix = std::max(prefix, dm.log_m[k] / k - log_c[k]);
        const double root = std::max(dm.log_m[k] / (2.0 * k), prefix);
        logN[k] = std::lgamma(k + 1.0) + k * root;
    }

    KomatsuResult res{seqcore::make_sequence("komatsu(" + L.name + "," + M.name + ")", std::move(logN)),
                      std::move(env),
                      std::move(log_c),
                      {},
                      {}};

    // L_k <= N_k, checked not assumed (the l-tilde_0 normalization can bite
    // when L_0 > 1)
    res.domination = Verdict::holds();
    for (int k = 0; k <= K; ++k) {
        if (L.logM[k] > res.N.logM[k] + cfg.tol) {
            Witness w;
            w.k = k;
            w.lhs = L.logM[k];
            w.rhs = res.N.logM[k];
            w.detail = "L_k > N_k";
            res.domination = Verdict::fails(w);
            break;
        }
    }
    res.domination.diag["log_l_tilde_0"] = res.envelope.hull[0];
    res.sequence_axioms = sequence_axiom_report(res.N, cfg);
    return res;
}

RegularizeResult regularize_almost_increasing(const seqcore::WeightSequence& M, double C,
                                              const RunConfig& cfg) {
    if (!(C > 0.0)) throw std::invalid_argument("regularize: C > 0 required");
    const Verdict ai = seqcore::check_condition(M, seqcore::Condition::AlmostIncreasing, cfg);
    const double c_hat = ai.diag.at("C_hat");
    if (c_hat > C * (1.0 + cfg.tol)) {
        std::string msg = "regularize: almost-increasing constant " + std::to_string(c_hat) +
                          " exceeds C = " + std::to_string(C);
        if (ai.witness)
            msg += " (dip witness j=" + std::to_string(ai.witness->j) +
                   ", k=" + std::to_string(ai.witness->k) + ")";
        throw std::invalid_argument(msg);
    }

    const int K = M.K();
    const seqcore::DerivedViews d = seqcore::derived(M);
    const double logC = std::log(C);

    // suffix minimum of log m_l^{1/l} over [k, K]
    std::vector<double> log_nu(K + 1, std::numeric_limits<double>::quiet_NaN());
    double suffix = std::numeric_limits<double>::infinity();
    for (int k = K; k >= 1; --k) {
        suffix = std::min(suffix, d.log_m[k] / k);
        log_nu[k] = logC + suffix;
    }

    std::vector<double> logMt(K + 1, 0.0);
    for (int k = 1; k <= K; ++k) logMt[k] = std::lgamma(k + 1.0) + k * log_nu[k];

    RegularizeResult res{seqcore::make_sequence("regularized(" + M.name + ")", std::move(logMt)),
                         std::move(log_nu),
                         true,
                         {},
                         {},
                         {}};

    // m_k^{1/k} <= nu_k <= C m_k^{1/k}, exact on the window
    res.envelope_bounds = Verdict::holds();
    for (int k = 1; k <= K; ++k) {
        const double root = d.log_m[k] / k;
        const double nu = res.log_nu[k];
        if (nu < root - cfg.tol || nu > root + logC + cfg.tol) {
            Witness w;
            w.k = k;
            w.lhs = nu;
            w.rhs = root;
            w.detail = "nu_k outside [m_k^{1/k}, C m_k^{1/k}]";
            res.envelope_bounds = Verdict::fails(w);
            break;
        }
    }

    const auto eq = relations::compare(M, res.Mt, relations::Relation::Approx, cfg);
    res.equivalence = eq.status;
    res.sequence_axioms = sequence_axiom_report(res.Mt, cfg);
    return res;
}

std::vector<double> dominating_sequence(const DominatingInputs& in, int K) {
    if (in.d < 1) throw std::invalid_argument("dominating_sequence: d >= 1 required");
    for (const auto& [o, v] : in.coeff_sup)
        if (o < 0 || v < 0.0) throw std::invalid_argument("dominating_sequence: bad coefficient entry");
    for (const auto& [nu, v] : in.iterate_norm)
        if (nu < 0 || v < 0.0) throw std::invalid_argument("dominating_sequence: bad iterate entry");

    std::vector<double> logL(K + 1);
    for (int k = 0; k <= K; ++k) {
        double best = std::lgamma(k + 1.0);
        for (const auto& [o, v] : in.coeff_sup) {
            if (o > k) break;
            if (v > 0.0) best = std::max(best, std::log(v));
        }
        for (const auto& [nu, v] : in.iterate_norm) {
            if (nu > k / in.d) break;  // words with nu <= k/d enter at index k
            if (v > 0.0) best = std::max(best, std::log(v));
        }
        logL[k] = best;
    }
    return logL;
}

OrderEqualization equalize_orders(const std::vector<long>& orders) {
    if (orders.empty()) throw std::invalid_argument("equalize_orders: need >= 1 order");
    for (long dj : orders)
        if (dj < 1) throw std::invalid_argument("equalize_orders: each order must be >= 1");

    constexpr long kCap = 1L << 31;
    long prod = 1;
    for (long dj : orders) {
        if (prod > kCap / dj) throw std::invalid_argument("equalize_orders: order product overflows desk scale");
        prod *= dj;
    }
    OrderEqualization out;
    out.common_order = prod;
    out.exponents.reserve(orders.size());
    for (long dj : orders) out.exponents.push_back(prod / dj);
    return out;
}

}  // namespace ultra::transforms

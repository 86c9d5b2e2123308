#include "ultra/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ultra/tail.hpp"

namespace ultra::seqcore {

namespace {

using tail::Monotone;

Verdict pointwise_le(const std::vector<double>& lhs, const std::vector<double>& rhs, int from,
                     int to, double tol, const char* what) {
    for (int k = from; k <= to; ++k) {
        if (lhs[k] > rhs[k] + tol) {
            Witness w;
            w.k = k;
            w.lhs = lhs[k];
            w.rhs = rhs[k];
            w.detail = what;
            return Verdict::fails(w);
        }
    }
    return Verdict::holds();
}

/// log-convexity of a log-space sequence on [from, to]: 2 v[k] <= v[k-1] + v[k+1].
Verdict log_convex(const std::vector<double>& v, int from, int to, double tol, const char* what) {
    for (int k = from; k <= to; ++k) {
        const double lhs = 2.0 * v[k];
        const double rhs = v[k - 1] + v[k + 1];
        if (lhs > rhs + tol) {
            Witness w;
            w.k = k;
            w.lhs = lhs;
            w.rhs = rhs;
            w.detail = what;
            return Verdict::fails(w);
        }
    }
    return Verdict::holds();
}

/// Boundedness evidence for a per-index requirement sequence g_k (the
/// minimal log-constant demanded at each index).  Attaches the window
/// constant exp(max g) and the tail trend.
Verdict bounded_requirement(const std::vector<double>& g, const std::vector<long>& ks,
                            const RunConfig& cfg, const char* constant_key) {
    const std::size_t n = g.size();
    std::size_t arg = 0;
    double gmax = g[0];
    for (std::size_t i = 1; i < n; ++i)
        if (g[i] > gmax) {
            gmax = g[i];
            arg = i;
        }

    const std::size_t t0 = tail::begin(n, cfg.tail_fraction);
    std::vector<double> xs, ys;
    for (std::size_t i = t0; i < n; ++i) {
        xs.push_back(static_cast<double>(ks[i]));
        ys.push_back(g[i]);
    }
    const double slope = tail::ls_slope(xs, ys);

    Verdict v;
    v.diag[constant_key] = std::exp(gmax);
    v.diag["requirement_tail_slope"] = slope;

    bool tail_growing = false;
    for (std::size_t i = t0; i + 1 < n; ++i)
        if (g[i + 1] > g[i] + cfg.tol) tail_growing = true;

    if (!tail_growing) {
        v.status = Status::HoldsEmpirically;
        return v;
    }

    // growing requirement: bounded iff the positive increments sum
    std::vector<double> log_inc;
    std::vector<long> inc_ks;
    double running = g[0];
    for (std::size_t i = 1; i < n; ++i) {
        if (g[i] > running + cfg.tol) {
            log_inc.push_back(std::log(g[i] - running));
            inc_ks.push_back(ks[i]);
            running = g[i];
        }
    }
    const std::size_t it0 = tail::begin(log_inc.size(), 2.0 * cfg.tail_fraction);
    std::span<const double> inc_tail(log_inc.data() + it0, log_inc.size() - it0);
    std::span<const long> inc_k_tail(inc_ks.data() + it0, inc_ks.size() - it0);
    double expo = 0.0;
    switch (tail::series_convergence(inc_tail, inc_k_tail, cfg, &expo)) {
        case tail::SeriesTrend::Converges:
            v.status = Status::HoldsEmpirically;
            v.diag["increment_exponent"] = expo;
            return v;
        case tail::SeriesTrend::Diverges: {
            Witness w;
            w.k = ks[arg];
            w.lhs = gmax;
            w.rhs = g[t0];
            w.detail = "per-index required constant grows without bound";
            v.status = Status::Fails;
            v.witness = w;
            v.diag["increment_exponent"] = expo;
            return v;
        }
        case tail::SeriesTrend::Unclear:
            v.status = Status::Inconclusive;
            v.note = "requirement trend undecided on this window";
            return v;
    }
    return v;
}

Verdict check_m0(const WeightSequence& M, const DerivedViews& d, const RunConfig& cfg) {
    const int K = M.K();
    std::vector<double> roots;  // log m_k^{1/k}
    for (int k = 1; k <= K; ++k) roots.push_back(d.log_m[k] / k);

    const std::size_t t0 = tail::begin(roots.size(), cfg.tail_fraction);
    std::span<const double> tail_span(roots.data() + t0, roots.size() - t0);
    const double last = roots.back();
    const double threshold = std::log(cfg.theta);

    std::size_t where = 0;
    const bool tail_up = tail::nondecreasing(tail_span, cfg.tol, &where);
    bool tail_down = true;
    for (std::size_t i = 0; i + 1 < tail_span.size(); ++i)
        if (tail_span[i + 1] > tail_span[i] + cfg.tol) tail_down = false;

    Verdict v;
    v.diag["log_root_last"] = last;
    v.diag["log_theta"] = threshold;
    std::vector<double> xs(tail_span.size());
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<double>(t0 + 1 + i);
    v.diag["tail_slope"] = tail::ls_slope(xs, tail_span);

    if (tail_up && last > threshold) {
        v.status = Status::HoldsEmpirically;
        return v;
    }
    if (tail_down && last <= threshold) {
        Witness w;
        w.k = K;
        w.lhs = last;
        w.rhs = threshold;
        w.detail = "root sequence not diverging on tail";
        v.status = Status::Fails;
        v.witness = w;
        return v;
    }
    v.status = Status::Inconclusive;
    v.note = "tail trend and threshold disagree";
    return v;
}

Verdict check_non_quasi(const WeightSequence& M, const DerivedViews& d, const RunConfig& cfg) {
    const int K = M.K();
    // a_k = M_{k-1}/M_k = exp(-log mu_k)
    double partial = 0.0;
    std::vector<double> log_a;
    std::vector<long> ks;
    for (int k = 1; k <= K; ++k) {
        log_a.push_back(-d.log_mu[k]);
        ks.push_back(k);
        partial += std::exp(-d.log_mu[k]);
    }
    const std::size_t t0 = tail::begin(log_a.size(), cfg.tail_fraction);
    std::span<const double> la(log_a.data() + t0, log_a.size() - t0);
    std::span<const long> lk(ks.data() + t0, ks.size() - t0);

    double expo = 0.0;
    const auto trend = tail::series_convergence(la, lk, cfg, &expo);

    Verdict v;
    v.diag["partial_sum"] = partial;
    v.diag["test_exponent"] = expo;
    switch (trend) {
        case tail::SeriesTrend::Converges:
            v.status = Status::HoldsEmpirically;
            return v;
        case tail::SeriesTrend::Diverges: {
            Witness w;
            w.k = K;
            w.lhs = partial;
            w.detail = "divergent trend of sum M_{k-1}/M_k";
            v.status = Status::Fails;
            v.witness = w;
            return v;
        }
        case tail::SeriesTrend::Unclear:
            v.status = Status::Inconclusive;
            v.note = "ratio tests undecided on this window";
            return v;
    }
    return v;
}

Verdict check_almost_increasing(const DerivedViews& d, int K, const RunConfig& cfg) {
    // C-hat = exp( max_{j<=k} (r_j - r_k) ), r_k = log m_k^{1/k}
    double prefix = -1e300;
    double worst = 0.0;
    long wj = 1, wk = 1;
    double prefix_at = 1;
    for (int k = 1; k <= K; ++k) {
        const double r = d.log_m[k] / k;
        if (prefix - r > worst) {
            worst = prefix - r;
            wk = k;
            wj = static_cast<long>(prefix_at);
        }
        if (r > prefix) {
            prefix = r;
            prefix_at = k;
        }
    }
    Verdict v = Verdict::holds();
    v.diag["C_hat"] = std::exp(std::max(0.0, worst));
    if (worst > cfg.tol) {
        Witness w;
        w.j = wj;
        w.k = wk;
        w.lhs = worst;
        w.detail = "largest root dip (log scale); constant C_hat covers it";
        v.witness = w;
    }
    return v;
}

}  // namespace

Condition parse_condition(const std::string& tag) {
    if (tag == "weak-log-convex") return Condition::WeakLogConvex;
    if (tag == "strong-log-convex") return Condition::StrongLogConvex;
    if (tag == "M0") return Condition::M0;
    if (tag == "M1") return Condition::M1;
    if (tag == "M2prime") return Condition::M2Prime;
    if (tag == "M2") return Condition::M2;
    if (tag == "strongConcl") return Condition::StrongConcl;
    if (tag == "non-quasianalytic") return Condition::NonQuasianalytic;
    if (tag == "almost-increasing") return Condition::AlmostIncreasing;
    if (tag == "derivation-closed-in-m") return Condition::DerivClosedSmallM;
    throw std::invalid_argument("unknown condition tag '" + tag + "'");
}

const char* condition_tag(Condition c) {
    switch (c) {
        case Condition::WeakLogConvex: return "weak-log-convex";
        case Condition::StrongLogConvex: return "strong-log-convex";
        case Condition::M0: return "M0";
        case Condition::M1: return "M1";
        case Condition::M2Prime: return "M2prime";
        case Condition::M2: return "M2";
        case Condition::StrongConcl: return "strongConcl";
        case Condition::NonQuasianalytic: return "non-quasianalytic";
        case Condition::AlmostIncreasing: return "almost-increasing";
        case Condition::DerivClosedSmallM: return "derivation-closed-in-m";
    }
    return "?";
}

Verdict check_condition(const WeightSequence& M, Condition c, const RunConfig& cfg) {
    const int K = M.K();
    const DerivedViews d = derived(M);

    switch (c) {
        case Condition::WeakLogConvex:
            return log_convex(M.logM, 1, K - 1, cfg.tol, "M_k^2 <= M_{k-1} M_{k+1}");
        case Condition::StrongLogConvex:
            return log_convex(d.log_m, 1, K - 1, cfg.tol, "m_k^2 <= m_{k-1} m_{k+1}");
        case Condition::M0:
            return check_m0(M, d, cfg);
        case Condition::M1: {
            std::vector<double> roots;
            for (int k = 1; k <= K; ++k) roots.push_back(d.log_m[k] / k);
            std::size_t where = 0;
            if (!tail::nondecreasing(roots, cfg.tol, &where)) {
                Witness w;
                w.k = static_cast<long>(where + 1);
                w.lhs = roots[where];
                w.rhs = roots[where + 1];
                w.detail = "m_k^{1/k} decreases";
                return Verdict::fails(w);
            }
            return Verdict::holds();
        }
        case Condition::M2Prime: {
            std::vector<double> g;
            std::vector<long> ks;
            for (int k = 0; k + 1 <= K; ++k) {
                g.push_back(d.log_mu[k + 1] / (k + 1));
                ks.push_back(k);
            }
            return bounded_requirement(g, ks, cfg, "gamma_hat");
        }
        case Condition::M2: {
            // q_n = max_{j+k=n} (logM[n] - logM[j] - logM[k]) / (n+1)
            std::vector<double> q;
            std::vector<long> ks;
            std::vector<long> arg_j;
            for (int n = 0; n <= K; ++n) {
                double best = -1e300;
                long bj = 0;
                for (int j = 0; j <= n / 2; ++j) {
                    const double val = (M.logM[n] - M.logM[j] - M.logM[n - j]) / (n + 1);
                    if (val > best) {
                        best = val;
                        bj = j;
                    }
                }
                q.push_back(best);
                ks.push_back(n);
                arg_j.push_back(bj);
            }
            Verdict v = bounded_requirement(q, ks, cfg, "gamma_hat");
            if (v.status == Status::Fails && v.witness) {
                const long n = v.witness->k;
                v.witness->j = arg_j[static_cast<std::size_t>(n)];
                v.witness->detail = "required constant at j+k=n grows without bound";
            }
            return v;
        }
        case Condition::StrongConcl: {
            for (int j = 1; j <= K; ++j)
                for (int k = j; j + k <= K; ++k) {
                    const double lhs = d.log_m[j] + d.log_m[k];
                    if (lhs > d.log_m[j + k] + cfg.tol) {
                        Witness w;
                        w.j = j;
                        w.k = k;
                        w.lhs = lhs;
                        w.rhs = d.log_m[j + k];
                        w.detail = "m_j m_k > m_{j+k}";
                        return Verdict::fails(w);
                    }
                }
            return Verdict::holds();
        }
        case Condition::NonQuasianalytic:
            return check_non_quasi(M, d, cfg);
        case Condition::AlmostIncreasing:
            return check_almost_increasing(d, K, cfg);
        case Condition::DerivClosedSmallM: {
            std::vector<double> g;
            std::vector<long> ks;
            for (int k = 0; k + 1 <= K; ++k) {
                g.push_back((d.log_m[k + 1] - d.log_m[k]) / (k + 1));
                ks.push_back(k);
            }
            return bounded_requirement(g, ks, cfg, "C_hat");
        }
    }
    throw std::logic_error("unreachable");
}

Report check_all_conditions(const WeightSequence& M, const RunConfig& cfg) {
    Report r;
    for (Condition c :
         {Condition::WeakLogConvex, Condition::StrongLogConvex, Condition::M0, Condition::M1,
          Condition::M2Prime, Condition::M2, Condition::StrongConcl, Condition::NonQuasianalytic,
          Condition::AlmostIncreasing, Condition::DerivClosedSmallM})
        r.add(condition_tag(c), check_condition(M, c, cfg));
    return r;
}

Report check_lemma_chain(const WeightSequence& M, const RunConfig& cfg) {
    const int K = M.K();
    const DerivedViews d = derived(M);
    Report r;

    {  // (a) M_j M_k <= M_{j+k}
        Verdict v = Verdict::holds();
        for (int j = 1; j <= K && v.status == Status::Holds; ++j)
            for (int k = j; j + k <= K; ++k) {
                const double lhs = M.logM[j] + M.logM[k];
                if (lhs > M.logM[j + k] + cfg.tol) {
                    Witness w;
                    w.j = j;
                    w.k = k;
                    w.lhs = lhs;
                    w.rhs = M.logM[j + k];
                    w.detail = "M_j M_k > M_{j+k}";
                    v = Verdict::fails(w);
                    break;
                }
            }
        r.add("a:superadditive", v);
    }

    auto nondec = [&](const std::vector<double>& view, const char* name) {
        std::vector<double> vals;
        for (int k = 1; k <= K; ++k) vals.push_back(view[k]);
        std::size_t where = 0;
        if (!tail::nondecreasing(vals, cfg.tol, &where)) {
            Witness w;
            w.k = static_cast<long>(where + 1);
            w.lhs = vals[where];
            w.rhs = vals[where + 1];
            w.detail = name;
            return Verdict::fails(w);
        }
        return Verdict::holds();
    };
    r.add("b:lambda_increasing", nondec(d.log_lambda, "Lambda_k decreases"));
    r.add("c:mu_increasing", nondec(d.log_mu, "mu_k decreases"));

    {
        std::vector<double> lam, mu;
        for (int k = 1; k <= K; ++k) {
            lam.push_back(d.log_lambda[k]);
            mu.push_back(d.log_mu[k]);
        }
        Verdict v = Verdict::holds();
        for (int k = 0; k < K; ++k)
            if (lam[k] > mu[k] + cfg.tol) {
                Witness w;
                w.k = k + 1;
                w.lhs = lam[k];
                w.rhs = mu[k];
                w.detail = "Lambda_k > mu_k";
                v = Verdict::fails(w);
                break;
            }
        r.add("d:lambda_le_mu", v);
    }

    const bool m1 = check_condition(M, Condition::M1, cfg).status == Status::Holds;
    const bool slc = check_condition(M, Condition::StrongLogConvex, cfg).status == Status::Holds;

    if (m1) {
        // (e) Theta_k + 1 <= Theta_{k+1}, linear scale
        Verdict v = Verdict::holds();
        for (int k = 1; k < K; ++k) {
            const double lhs = std::exp(d.log_theta[k]) + 1.0;
            const double rhs = std::exp(d.log_theta[k + 1]);
            if (lhs > rhs * (1.0 + cfg.tol) + cfg.tol) {
                Witness w;
                w.k = k;
                w.lhs = lhs;
                w.rhs = rhs;
                w.detail = "Theta_k + 1 > Theta_{k+1}";
                v = Verdict::fails(w);
                break;
            }
        }
        r.add("e:theta_gap", v);
    } else {
        r.add("e:theta_gap", Verdict::inconclusive("precondition M1 does not hold"));
    }

    if (slc) {
        Verdict v = Verdict::holds();
        for (int k = 1; k < K; ++k) {
            const double lhs = std::exp(d.log_mu[k]) + 1.0;
            const double rhs = std::exp(d.log_mu[k + 1]);
            if (lhs > rhs * (1.0 + cfg.tol) + cfg.tol) {
                Witness w;
                w.k = k;
                w.lhs = lhs;
                w.rhs = rhs;
                w.detail = "mu_k + 1 > mu_{k+1}";
                v = Verdict::fails(w);
                break;
            }
        }
        r.add("f:mu_gap", v);
    } else {
        r.add("f:mu_gap", Verdict::inconclusive("precondition strong log-convexity does not hold"));
    }

    if (m1) {
        Verdict v = pointwise_le(
            [&] {
                std::vector<double> lg(K + 1);
                for (int k = 0; k <= K; ++k) lg[k] = std::lgamma(k + 1.0);
                return lg;
            }(),
            M.logM, 0, K, cfg.tol, "k! > M_k");
        r.add("g:factorial_below", v);
    } else {
        r.add("g:factorial_below", Verdict::inconclusive("precondition M1 does not hold"));
    }

    return r;
}

Verdict stirling_chain(long kmax, const RunConfig& cfg) {
    if (kmax < 1) throw std::invalid_argument("stirling_chain: kmax >= 1 required");
    const double two_pi = 2.0 * std::numbers::pi;
    for (long k = 1; k <= kmax; ++k) {
        const double kk = static_cast<double>(k);
        const double mid = std::log(kk) - 1.0 - std::lgamma(kk + 1.0) / kk;  // log of k/(e (k!)^{1/k})
        const double upper = -std::log(two_pi * kk) / (2.0 * kk);            // log (2 pi k)^{-1/2k}
        Witness w;
        w.k = k;
        if (mid < -1.0 - cfg.tol) {
            w.lhs = -1.0;
            w.rhs = mid;
            w.detail = "1/e <= k/(e (k!)^{1/k}) violated";
            return Verdict::fails(w);
        }
        if (mid > upper + cfg.tol) {
            w.lhs = mid;
            w.rhs = upper;
            w.detail = "k/(e (k!)^{1/k}) <= (2 pi k)^{-1/(2k)} violated";
            return Verdict::fails(w);
        }
        if (upper > 0.0 + cfg.tol) {
            w.lhs = upper;
            w.rhs = 0.0;
            w.detail = "(2 pi k)^{-1/(2k)} <= 1 violated";
            return Verdict::fails(w);
        }
    }
    return Verdict::holds();
}

}  // namespace ultra::seqcore

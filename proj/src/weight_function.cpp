#include "ultra/weight_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ultra/tail.hpp"

namespace ultra::omega {

namespace {

[[noreturn]] void reject(const std::string& what) { throw std::invalid_argument(what); }

double interp_table(const Table& tb, double t) {
    if (t <= tb.t.front()) return tb.w.front();
    if (t >= tb.t.back()) return tb.w.back();
    auto it = std::upper_bound(tb.t.begin(), tb.t.end(), t);
    const std::size_t hi = static_cast<std::size_t>(it - tb.t.begin());
    const std::size_t lo = hi - 1;
    const double f = (t - tb.t[lo]) / (tb.t[hi] - tb.t[lo]);
    return tb.w[lo] + f * (tb.w[hi] - tb.w[lo]);
}

}  // namespace

double WeightFunction::omega(double t) const {
    if (const auto* p = std::get_if<Power>(&family)) return std::pow(std::max(t, 0.0), p->a);
    if (const auto* lp = std::get_if<LogPower>(&family)) {
        const double l = t > 1.0 ? std::log(t) : 0.0;
        return std::pow(l, lp->beta);
    }
    return interp_table(std::get<Table>(family), t);
}

double WeightFunction::phi(double s) const { return omega(std::exp(s)); }

double WeightFunction::s_max() const { return std::log(t_max); }

std::string WeightFunction::describe() const {
    std::ostringstream os;
    if (const auto* p = std::get_if<Power>(&family))
        os << "power:" << p->a;
    else if (const auto* lp = std::get_if<LogPower>(&family))
        os << "log-power:" << lp->beta;
    else
        os << "table[" << std::get<Table>(family).t.size() << "]";
    return os.str();
}

WeightFunction make_weight_function(OmegaFamily family, double t_max) {
    if (!(t_max > 1.0)) reject("weight function: t_max > 1 required");
    if (const auto* p = std::get_if<Power>(&family)) {
        if (!(p->a > 0.0 && p->a <= 1.0)) reject("power: a in (0, 1] required");
    } else if (const auto* lp = std::get_if<LogPower>(&family)) {
        if (!(lp->beta > 1.0)) reject("log-power: beta > 1 required");
    } else {
        const auto& tb = std::get<Table>(family);
        if (tb.t.size() != tb.w.size() || tb.t.size() < 2) reject("table: need matching t/w samples");
        for (std::size_t i = 0; i + 1 < tb.t.size(); ++i)
            if (tb.t[i + 1] <= tb.t[i]) reject("table: t samples must increase");
        for (std::size_t i = 0; i < tb.w.size(); ++i) {
            if (!(tb.w[i] >= 0.0)) reject("table: omega must be nonnegative");
            if (i && tb.w[i] < tb.w[i - 1]) reject("table: omega must be nondecreasing");
        }
    }
    return WeightFunction{std::move(family), t_max};
}

WeightFunction parse_omega(const std::string& text, double t_max) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) reject("omega: expected family:param");
    const std::string kind = text.substr(0, colon);
    const std::string param = text.substr(colon + 1);
    double v = 0.0;
    try {
        v = std::stod(param);
    } catch (...) {
        reject("omega: bad parameter '" + param + "'");
    }
    if (kind == "power") return make_weight_function(Power{v}, t_max);
    if (kind == "log-power") return make_weight_function(LogPower{v}, t_max);
    reject("omega: unknown family '" + kind + "'");
}

// ---------------------------------------------------------------------------
// axis checks

Report check_omega(const WeightFunction& w, const RunConfig& cfg, bool paper_literal) {
    const int n = cfg.omega_grid;
    if (n < 64) reject("check_omega: grid too coarse (< 64 points)");

    const double smax = w.s_max();
    std::vector<double> s(n), t(n), wv(n), phi(n);
    for (int i = 0; i < n; ++i) {
        s[i] = smax * i / (n - 1);
        t[i] = std::exp(s[i]);
        phi[i] = w.phi(s[i]);
        wv[i] = phi[i];  // omega(t_i) by construction
    }

    Report rep;

    {  // (alpha): omega(2t) = O(omega(t))
        std::vector<double> la, lx;
        for (int i = 0; i < n; ++i) {
            if (wv[i] <= 0.0) continue;
            if (2.0 * t[i] > w.t_max) break;
            la.push_back(std::log(w.omega(2.0 * t[i])) - std::log(wv[i]));
            lx.push_back(s[i]);
        }
        Verdict v;
        if (la.size() < 8) {
            v = Verdict::inconclusive("too few usable ratio samples");
        } else {
            const std::size_t t0 = tail::begin(la.size(), cfg.tail_fraction);
            std::span<const double> tl(la.data() + t0, la.size() - t0);
            std::span<const double> tx(lx.data() + t0, lx.size() - t0);
            const double tail_max = *std::max_element(tl.begin(), tl.end());
            const double head_max = *std::max_element(la.begin(), la.begin() + la.size() / 2);
            const double slope = tail::ls_slope(tx, tl);
            v.diag["sup_ratio"] = std::exp(*std::max_element(la.begin(), la.end()));
            v.diag["tail_slope"] = slope;
            if (tail_max <= head_max + cfg.preceq_margin && slope <= 1e-3) {
                v.status = Status::HoldsEmpirically;
            } else if (slope > 1e-3 && tail_max > head_max + cfg.preceq_margin) {
                Witness wt;
                wt.k = static_cast<long>(la.size());
                wt.lhs = tail_max;
                wt.rhs = head_max;
                wt.detail = "doubling ratio rising on tail";
                v.status = Status::Fails;
                v.witness = wt;
            } else {
                v.status = Status::Inconclusive;
            }
        }
        rep.add("alpha:doubling", v);
    }

    {  // (beta): log t = o(omega(t)), the standard reading
        std::vector<double> ratio;
        for (int i = 1; i < n; ++i)
            if (s[i] > 0.0) ratio.push_back(wv[i] / s[i]);
        const std::size_t t0 = tail::begin(ratio.size(), cfg.tail_fraction);
        std::span<const double> tl(ratio.data() + t0, ratio.size() - t0);
        const bool up = tail::nondecreasing(tl, cfg.tol);
        bool down = true;
        for (std::size_t i = 0; i + 1 < tl.size(); ++i)
            if (tl[i + 1] > tl[i] + cfg.tol) down = false;
        Verdict v;
        v.diag["ratio_last"] = ratio.back();
        if (up && ratio.back() > cfg.theta) v.status = Status::HoldsEmpirically;
        else if (down && ratio.back() <= cfg.theta) {
            Witness wt;
            wt.lhs = ratio.back();
            wt.rhs = cfg.theta;
            wt.detail = "omega/log t not diverging";
            v.status = Status::Fails;
            v.witness = wt;
        } else v.status = Status::Inconclusive;
        rep.add("beta:log_below_omega", v);
    }

    if (paper_literal) {  // omega(t) = o(log t), the literal reading
        std::vector<double> lr;
        for (int i = 1; i < n; ++i)
            if (s[i] > 0.0 && wv[i] > 0.0) lr.push_back(std::log(wv[i]) - std::log(s[i]));
        Verdict v;
        if (lr.size() < 8) {
            v = Verdict::inconclusive("too few usable samples");
        } else {
            const std::size_t t0 = tail::begin(lr.size(), cfg.tail_fraction);
            std::span<const double> tl(lr.data() + t0, lr.size() - t0);
            const double dropv = tl.front() - tl.back();
            bool noninc = true;
            for (std::size_t i = 0; i + 1 < tl.size(); ++i)
                if (tl[i + 1] > tl[i] + cfg.tol) noninc = false;
            v.diag["log_ratio_last"] = lr.back();
            if (noninc && dropv >= cfg.delta) v.status = Status::HoldsEmpirically;
            else {
                Witness wt;
                wt.lhs = lr.back();
                wt.detail = "omega/log t not vanishing";
                v.status = Status::Fails;
                v.witness = wt;
            }
        }
        rep.add("beta-literal:omega_below_log", v);
    }

    {  // (gamma): discrete convexity of phi on the s-grid
        Verdict v = Verdict::holds();
        for (int i = 1; i + 1 < n; ++i) {
            const double second = phi[i - 1] - 2.0 * phi[i] + phi[i + 1];
            const double scale = std::max({1.0, std::fabs(phi[i - 1]), std::fabs(phi[i + 1])});
            if (second < -cfg.tol * scale) {
                Witness wt;
                wt.k = i;
                wt.lhs = second;
                wt.detail = "phi second difference negative";
                v = Verdict::fails(wt);
                break;
            }
        }
        rep.add("gamma:phi_convex", v);
    }

    {  // concavity of omega on the (geometric) t-grid
        std::vector<double> slope(n - 1);
        for (int i = 0; i + 1 < n; ++i) slope[i] = (wv[i + 1] - wv[i]) / (t[i + 1] - t[i]);
        int last_viol = -1;
        for (int i = 0; i + 1 < static_cast<int>(slope.size()); ++i) {
            const double scale = std::max(1.0, std::fabs(slope[i]));
            if (slope[i + 1] > slope[i] + cfg.tol * scale) last_viol = i + 1;
        }
        Verdict v;
        if (last_viol < 0) {
            v = Verdict::holds();
        } else if (last_viol + 2 < static_cast<int>(slope.size())) {
            v.status = Status::HoldsEmpirically;
            v.diag["concave_from_t"] = t[last_viol];
            v.note = "concave from the reported threshold onward";
        } else {
            Witness wt;
            wt.k = last_viol;
            wt.lhs = slope[last_viol];
            wt.rhs = slope[last_viol - 1];
            wt.detail = "slopes increase into the tail";
            v = Verdict::fails(wt);
        }
        rep.add("concave", v);
    }

    {  // omega(t) = o(t)
        std::vector<double> lr, lx;
        for (int i = 0; i < n; ++i)
            if (wv[i] > 0.0) {
                lr.push_back(std::log(wv[i]) - s[i]);
                lx.push_back(s[i]);
            }
        Verdict v;
        if (lr.size() < 8) {
            v = Verdict::inconclusive("too few usable samples");
        } else {
            const std::size_t t0 = tail::begin(lr.size(), cfg.tail_fraction);
            std::span<const double> tl(lr.data() + t0, lr.size() - t0);
            const double dropv = tl.front() - tl.back();
            bool noninc = true;
            for (std::size_t i = 0; i + 1 < tl.size(); ++i)
                if (tl[i + 1] > tl[i] + cfg.tol) noninc = false;
            v.diag["ratio_last"] = std::exp(lr.back());
            v.diag["tail_drop"] = dropv;
            if (noninc && dropv >= cfg.delta) {
                v.status = Status::HoldsEmpirically;
            } else {
                Witness wt;
                wt.lhs = std::exp(lr.back());
                wt.detail = "omega(t)/t not vanishing on tail";
                v.status = Status::Fails;
                v.witness = wt;
            }
        }
        rep.add("sublinear", v);
    }

    return rep;
}

// ---------------------------------------------------------------------------
// conjugate

ConjugateTable conjugate_at(const WeightFunction& w, const std::vector<double>& ys,
                            const RunConfig& cfg) {
    const int n = cfg.omega_grid;
    if (n < 64) reject("conjugate: grid too coarse (< 64 points)");
    for (std::size_t i = 0; i + 1 < ys.size(); ++i)
        if (ys[i + 1] < ys[i]) reject("conjugate: y values must be nondecreasing");
    for (double y : ys)
        if (!(y >= 0.0)) reject("conjugate: y >= 0 required");

    const Verdict gamma = *check_omega(w, cfg).find("gamma:phi_convex");
    if (gamma.status != Status::Holds)
        reject("conjugate: phi fails discrete convexity (gamma) on the grid");

    const double smax = w.s_max();
    std::vector<double> s(n), phi(n);
    for (int i = 0; i < n; ++i) {
        s[i] = smax * i / (n - 1);
        phi[i] = w.phi(s[i]);
    }

    ConjugateTable out;
    out.y = ys;
    out.phi_star.resize(ys.size());
    out.pos.resize(ys.size());
    out.maximizer.resize(ys.size());

    // the maximizer of s y - phi(s) is nondecreasing in y: one sweep
    int j = 0;
    for (std::size_t q = 0; q < ys.size(); ++q) {
        const double y = ys[q];
        auto g = [&](int i) { return s[i] * y - phi[i]; };
        while (j + 1 < n && g(j + 1) >= g(j)) ++j;

        if (j == n - 1) {
            out.pos[q] = MaximizerPos::UpperEdge;
            out.maximizer[q] = s[j];
            out.phi_star[q] = g(j);
            continue;
        }

        // refine inside the bracketing cell (exact phi for parametric
        // families, the interpolant itself for tables)
        const double lo0 = s[std::max(0, j - 1)];
        const double hi0 = s[j + 1];
        double lo = lo0, hi = hi0;
        auto gc = [&](double x) { return x * y - w.phi(x); };
        for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
            const double m1 = lo + (hi - lo) / 3.0;
            const double m2 = hi - (hi - lo) / 3.0;
            if (gc(m1) < gc(m2)) lo = m1;
            else hi = m2;
        }
        const double sstar = 0.5 * (lo + hi);
        const double refined = gc(sstar);
        const double grid_best = g(j);
        out.maximizer[q] = refined >= grid_best ? sstar : s[j];
        out.phi_star[q] = std::max(refined, grid_best);
        out.pos[q] = (out.maximizer[q] <= s[0] + 1e-12) ? MaximizerPos::LowerEdge
                                                        : MaximizerPos::Interior;
    }
    return out;
}

ConjugateTable conjugate(const WeightFunction& w, double y_max, int points, const RunConfig& cfg) {
    if (!(y_max > 0.0)) reject("conjugate: y_max > 0 required");
    if (points < 2) reject("conjugate: need >= 2 points");
    std::vector<double> ys(points);
    for (int i = 0; i < points; ++i) ys[i] = y_max * i / (points - 1);
    return conjugate_at(w, ys, cfg);
}

std::vector<AssociatedMatrixEntry> associated_matrix(const WeightFunction& w,
                                                     const std::vector<double>& lambdas, int K,
                                                     const RunConfig& cfg) {
    if (lambdas.empty()) reject("associated_matrix: need >= 1 lambda");
    for (double l : lambdas)
        if (!(l > 0.0)) reject("associated_matrix: lambdas must be positive");
    if (K < 8) reject("associated_matrix: K >= 8 required");

    std::vector<AssociatedMatrixEntry> out;
    for (double lambda : lambdas) {
        std::vector<double> ys(K + 1);
        for (int k = 0; k <= K; ++k) ys[k] = lambda * k;
        const ConjugateTable ct = conjugate_at(w, ys, cfg);
        for (int k = 0; k <= K; ++k)
            if (!ct.trusted(k)) {
                std::ostringstream os;
                os << "associated_matrix: conjugate maximizer escaped the grid at y = " << ys[k]
                   << " (lambda = " << lambda << "); increase t_max";
                reject(os.str());
            }
        std::vector<double> logW(K + 1);
        for (int k = 0; k <= K; ++k) logW[k] = (ct.phi_star[k] - ct.phi_star[0]) / lambda;
        logW[0] = 0.0;
        std::ostringstream name;
        name << "W[" << lambda << "](" << w.describe() << ")";
        out.push_back({lambda, seqcore::make_sequence(name.str(), std::move(logW))});
    }
    return out;
}

}  // namespace ultra::omega

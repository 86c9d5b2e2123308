#include "ultra/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ultra/conditions.hpp"
#include "ultra/kernels.hpp"
#include "ultra/tail.hpp"

namespace ultra::spectral {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void reject(const std::string& what) { throw std::invalid_argument(what); }

double ipow(double base, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

double u64_to_unit(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

/// log(exp(a) + exp(b)) without overflow; -inf absorbs.
double log_add(double a, double b) {
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    const double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

struct LatticeIter {
    int dim;
    int N;
    std::size_t size() const {
        const std::size_t side = 2 * static_cast<std::size_t>(N) + 1;
        return dim == 1 ? side : side * side;
    }
    void freq(std::size_t idx, int& x1, int& x2) const {
        const std::size_t side = 2 * static_cast<std::size_t>(N) + 1;
        if (dim == 1) {
            x1 = static_cast<int>(idx) - N;
            x2 = 0;
        } else {
            x1 = static_cast<int>(idx / side) - N;
            x2 = static_cast<int>(idx % side) - N;
        }
    }
};

std::vector<double> symbol_factor(const Operator& p, int dim, int N, bool parallel) {
    const LatticeIter it{dim, N};
    std::vector<double> f(it.size());
    const long n = static_cast<long>(f.size());
    const bool par = parallel && f.size() >= kernels::kParallelCutover;
#pragma omp parallel for schedule(static) if (par)
    for (long i = 0; i < n; ++i) {
        int x1, x2;
        it.freq(static_cast<std::size_t>(i), x1, x2);
        f[static_cast<std::size_t>(i)] = p.symbol(x1, x2);
    }
    return f;
}

}  // namespace

std::size_t SpectralField::index(int xi) const {
    return static_cast<std::size_t>(xi + cutoff);
}

std::size_t SpectralField::index(int xi1, int xi2) const {
    const std::size_t side = 2 * static_cast<std::size_t>(cutoff) + 1;
    return static_cast<std::size_t>(xi1 + cutoff) * side + static_cast<std::size_t>(xi2 + cutoff);
}

SpectralField make_field(const FieldSpec& spec, int dim, int cutoff, const RunConfig& cfg) {
    (void)cfg;
    if (dim != 1 && dim != 2) reject("make_field: dim must be 1 or 2");
    if (cutoff < 1) reject("make_field: cutoff >= 1 required");
    if (dim == 2 && cutoff > 2048)
        reject("make_field: 2D cutoff capped at 2048 (dense lattice storage); pass --cutoff");
    const bool profile = std::holds_alternative<FieldGevreyProfile>(spec) ||
                         std::holds_alternative<FieldOmegaProfile>(spec);
    if (profile && cutoff < 64) reject("make_field: profile fields need cutoff >= 64");

    SpectralField u;
    u.dim = dim;
    u.cutoff = cutoff;
    const LatticeIter it{dim, cutoff};
    u.coef.assign(it.size(), cplx{0.0, 0.0});

    if (const auto* g = std::get_if<FieldGevreyProfile>(&spec)) {
        if (!(g->s >= 1.0)) reject("make_field: gevrey profile needs s >= 1");
        for (std::size_t i = 0; i < u.coef.size(); ++i) {
            int x1, x2;
            it.freq(i, x1, x2);
            const double r = std::sqrt(static_cast<double>(x1) * x1 + static_cast<double>(x2) * x2);
            u.coef[i] = std::exp(-std::pow(r, 1.0 / g->s));
        }
    } else if (const auto* o = std::get_if<FieldOmegaProfile>(&spec)) {
        for (std::size_t i = 0; i < u.coef.size(); ++i) {
            int x1, x2;
            it.freq(i, x1, x2);
            const double r = std::sqrt(static_cast<double>(x1) * x1 + static_cast<double>(x2) * x2);
            u.coef[i] = std::exp(-o->w.omega(r));
        }
    } else if (const auto* b = std::get_if<FieldBandRandom>(&spec)) {
        if (b->band < 0 || b->band > cutoff) reject("make_field: band outside [0, cutoff]");
        std::mt19937_64 rng(b->seed);
        for (std::size_t i = 0; i < u.coef.size(); ++i) {
            int x1, x2;
            it.freq(i, x1, x2);
            const double r = std::sqrt(static_cast<double>(x1) * x1 + static_cast<double>(x2) * x2);
            if (r <= static_cast<double>(b->band)) {
                const double re = 2.0 * u64_to_unit(rng()) - 1.0;
                const double im = 2.0 * u64_to_unit(rng()) - 1.0;
                u.coef[i] = cplx{re, im};
            }
        }
    } else {
        const auto& m = std::get<FieldSingleMode>(spec);
        const int x1 = m.xi[0];
        const int x2 = dim == 2 ? m.xi[1] : 0;
        if (std::abs(x1) > cutoff || std::abs(x2) > cutoff)
            reject("make_field: single mode outside the cutoff cube");
        u.coef[dim == 1 ? u.index(x1) : u.index(x1, x2)] = cplx{1.0, 0.0};
    }
    return u;
}

FieldSpec parse_field(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) reject("field: expected kind:params");
    const std::string kind = text.substr(0, colon);
    const std::string rest = text.substr(colon + 1);
    if (kind == "gevrey") return FieldGevreyProfile{std::stod(rest)};
    if (kind == "omega") return FieldOmegaProfile{omega::parse_omega(rest, 1e8)};
    if (kind == "single") {
        std::array<int, 2> xi{0, 0};
        const auto comma = rest.find(',');
        if (comma == std::string::npos) {
            xi[0] = std::stoi(rest);
        } else {
            xi[0] = std::stoi(rest.substr(0, comma));
            xi[1] = std::stoi(rest.substr(comma + 1));
        }
        return FieldSingleMode{xi};
    }
    if (kind == "random") {
        const auto c2 = rest.find(':');
        if (c2 == std::string::npos) reject("field random: expected random:seed:band");
        return FieldBandRandom{static_cast<std::uint64_t>(std::stoull(rest.substr(0, c2))),
                               std::stoi(rest.substr(c2 + 1))};
    }
    reject("field: unknown kind '" + kind + "'");
}

int Operator::order() const {
    int d = 0;
    for (const auto& t : terms)
        if (t.coeff != 0.0) d = std::max(d, t.alpha[0] + t.alpha[1]);
    return d;
}

double Operator::symbol(double x1, double x2) const {
    double s = 0.0;
    for (const auto& t : terms) s += t.coeff * ipow(x1, t.alpha[0]) * ipow(x2, t.alpha[1]);
    return s;
}

double Operator::principal(double x1, double x2) const {
    const int d = order();
    double s = 0.0;
    for (const auto& t : terms)
        if (t.alpha[0] + t.alpha[1] == d) s += t.coeff * ipow(x1, t.alpha[0]) * ipow(x2, t.alpha[1]);
    return s;
}

int OperatorSystem::common_order() const {
    if (ops.empty()) reject("operator system: empty");
    const int d = ops.front().order();
    for (const auto& p : ops)
        if (p.order() != d) reject("operator system: orders differ (equalize first)");
    return d;
}

double OperatorSystem::coeff_bound() const {
    double h = 0.0;
    for (const auto& p : ops)
        for (const auto& t : p.terms) h = std::max(h, std::fabs(t.coeff));
    return h;
}

OperatorSystem parse_operator(const std::string& text, int dim) {
    auto op = [](std::initializer_list<Operator::Term> ts) { return Operator{ts}; };
    if (text == "laplace") {
        if (dim == 1) return {{op({{1.0, {2, 0}}})}};
        return {{op({{1.0, {2, 0}}, {1.0, {0, 2}}})}};
    }
    if (text == "dx") return {{op({{1.0, {1, 0}}})}};
    if (text == "dy") {
        if (dim != 2) reject("operator dy needs dim 2");
        return {{op({{1.0, {0, 1}}})}};
    }
    if (text == "gradient") {
        if (dim == 1) return {{op({{1.0, {1, 0}}})}};
        return {{op({{1.0, {1, 0}}}), op({{1.0, {0, 1}}})}};
    }
    if (text == "identity") return {{op({{1.0, {0, 0}}})}};
    reject("operator: unknown name '" + text + "' (use laplace|dx|dy|gradient|identity or a file)");
}

Operator symbol_product(const Operator& p, const Operator& q) {
    Operator out;
    for (const auto& a : p.terms)
        for (const auto& b : q.terms) {
            const std::array<int, 2> alpha{a.alpha[0] + b.alpha[0], a.alpha[1] + b.alpha[1]};
            bool merged = false;
            for (auto& t : out.terms)
                if (t.alpha == alpha) {
                    t.coeff += a.coeff * b.coeff;
                    merged = true;
                    break;
                }
            if (!merged) out.terms.push_back({a.coeff * b.coeff, alpha});
        }
    return out;
}

SpectralField apply(const Operator& p, const SpectralField& u, const RunConfig& cfg) {
    const auto factor = symbol_factor(p, u.dim, u.cutoff, cfg.parallel);
    SpectralField out;
    out.dim = u.dim;
    out.cutoff = u.cutoff;
    out.coef.resize(u.coef.size());
    kernels::active_for(u.coef.size(), cfg.parallel).multiply(factor, u.coef, out.coef);
    return out;
}

double log_l2_norm(const SpectralField& u, const RunConfig& cfg) {
    const auto& impl = kernels::active_for(u.coef.size(), cfg.parallel);
    const auto mx = impl.max_abs(u.coef);
    if (mx.max_abs == 0.0) return -kInf;
    const double sum = impl.weighted_norm2({}, u.coef, mx.max_abs);
    return std::log(mx.max_abs) + 0.5 * std::log(sum);
}

double l2_norm(const SpectralField& u, const RunConfig& cfg) {
    const auto& impl = kernels::active_for(u.coef.size(), cfg.parallel);
    const auto mx = impl.max_abs(u.coef);
    if (mx.max_abs == 0.0) return 0.0;
    return mx.max_abs * std::sqrt(impl.weighted_norm2({}, u.coef, mx.max_abs));
}

Verdict check_ellipticity(const OperatorSystem& P, int dim, int sphere_points,
                          const RunConfig& cfg) {
    (void)cfg;
    if (P.ops.empty()) reject("check_ellipticity: empty system");
    if (dim == 1 && sphere_points < 2) reject("check_ellipticity: need >= 2 sample points");
    if (dim == 2 && sphere_points < 360) reject("check_ellipticity: need >= 360 sample points");

    double min_joint = kInf;
    double wx = 0.0, wy = 0.0;
    auto probe = [&](double x1, double x2) {
        double joint = 0.0;
        for (const auto& p : P.ops) joint = std::max(joint, std::fabs(p.principal(x1, x2)));
        if (joint < min_joint) {
            min_joint = joint;
            wx = x1;
            wy = x2;
        }
    };
    if (dim == 1) {
        probe(1.0, 0.0);
        probe(-1.0, 0.0);
    } else {
        for (int i = 0; i < sphere_points; ++i) {
            const double th = 2.0 * std::numbers::pi * i / sphere_points;
            probe(std::cos(th), std::sin(th));
        }
    }

    Verdict v;
    v.diag["min_joint_magnitude"] = min_joint;
    v.diag["witness_x1"] = wx;
    v.diag["witness_x2"] = wy;
    if (min_joint < 1e-12) {
        Witness w;
        w.lhs = min_joint;
        std::ostringstream os;
        os << "all principal symbols vanish near direction (" << wx << ", " << wy << ")";
        w.detail = os.str();
        v.status = Status::Fails;
        v.witness = w;
    } else {
        v.status = Status::HoldsEmpirically;
    }
    return v;
}

namespace {

NormRow make_row(const SpectralField& f, std::string label, long word_len, long total_order,
                 const RunConfig& cfg) {
    const auto& impl = kernels::active_for(f.coef.size(), cfg.parallel);
    NormRow row;
    row.label = std::move(label);
    row.word_len = word_len;
    row.total_order = total_order;
    row.log_norm = log_l2_norm(f, cfg);
    const auto mx = impl.max_abs(f.coef);
    if (mx.max_abs > 0.0) {
        const LatticeIter it{f.dim, f.cutoff};
        int x1, x2;
        it.freq(mx.argmax, x1, x2);
        row.dominant = {x1, x2};
        const int guard = static_cast<int>(cfg.cutoff_guard * f.cutoff);
        row.cutoff_limited = std::abs(x1) > guard || std::abs(x2) > guard;
    }
    return row;
}

void iterate_dfs(const OperatorSystem& P, const SpectralField& f, const std::string& word,
                 long total_order, int depth, int kmax, const RunConfig& cfg,
                 std::vector<NormRow>& rows) {
    rows.push_back(make_row(f, word, static_cast<long>(word.size()), total_order, cfg));
    if (depth == kmax) return;
    for (std::size_t j = 0; j < P.ops.size(); ++j) {
        const SpectralField next = apply(P.ops[j], f, cfg);
        iterate_dfs(P, next, word + static_cast<char>('1' + j), total_order + P.ops[j].order(),
                    depth + 1, kmax, cfg, rows);
    }
}

}  // namespace

bool NormTable::all_cutoff_limited() const {
    for (const auto& r : rows)
        if (!r.cutoff_limited) return false;
    return true;
}

std::size_t NormTable::usable_rows() const {
    std::size_t n = 0;
    for (const auto& r : rows)
        if (!r.cutoff_limited && r.total_order >= 1 && std::isfinite(r.log_norm)) ++n;
    return n;
}

NormTable iterate_norms(const OperatorSystem& P, const SpectralField& u, int kmax,
                        const RunConfig& cfg) {
    if (kmax < 0) reject("iterate_norms: kmax >= 0 required");
    const std::size_t ell = P.ops.size();
    // enumeration budget: ell^kmax words at the deepest level
    double top = 1.0;
    for (int s = 0; s < kmax && top <= 1e12; ++s) top *= static_cast<double>(ell);
    if (top > static_cast<double>(cfg.word_budget))
        reject("iterate_norms: word enumeration exceeds the budget (" +
               std::to_string(cfg.word_budget) + ")");

    NormTable t;
    t.dim = u.dim;
    t.cutoff = u.cutoff;
    iterate_dfs(P, u, "", 0, 0, kmax, cfg, t.rows);
    std::stable_sort(t.rows.begin(), t.rows.end(), [](const NormRow& a, const NormRow& b) {
        if (a.word_len != b.word_len) return a.word_len < b.word_len;
        return a.label < b.label;
    });
    return t;
}

NormTable derivative_norms(const SpectralField& u, int amax, const RunConfig& cfg) {
    if (amax < 0) reject("derivative_norms: amax >= 0 required");

    struct AlphaRow {
        std::array<int, 2> alpha;
        std::string label;
    };
    std::vector<AlphaRow> alphas;
    for (int a = 0; a <= amax; ++a) {
        if (u.dim == 1) {
            alphas.push_back({{a, 0}, std::to_string(a)});
        } else {
            for (int a1 = a; a1 >= 0; --a1)
                alphas.push_back({{a1, a - a1}, std::to_string(a1) + "," + std::to_string(a - a1)});
        }
    }

    NormTable t;
    t.dim = u.dim;
    t.cutoff = u.cutoff;
    t.rows.resize(alphas.size());

    // rows are independent; compute each with the serial kernels and let
    // OpenMP schedule the rows, assembling results by input order
    RunConfig row_cfg = cfg;
    row_cfg.parallel = false;
    const long n = static_cast<long>(alphas.size());
#pragma omp parallel for schedule(dynamic) if (cfg.parallel)
    for (long i = 0; i < n; ++i) {
        Operator mono;
        mono.terms.push_back({1.0, alphas[i].alpha});
        const SpectralField f = apply(mono, u, row_cfg);
        t.rows[i] = make_row(f, alphas[i].label, -1,
                             alphas[i].alpha[0] + alphas[i].alpha[1], row_cfg);
    }
    return t;
}

// ---------------------------------------------------------------------------
// classification

namespace {

struct HatSeries {
    std::vector<double> log_n;   // log of total order
    std::vector<double> log_h;   // log h-hat
    double h_last = 0.0;
    double sup_tail = 0.0;
    double slope = 0.0;
    bool tail_decreasing = false;
};

HatSeries hat_series(const std::vector<std::pair<long, double>>& T,
                     const seqcore::WeightSequence& M, const RunConfig& cfg) {
    HatSeries hs;
    std::vector<double> h;
    for (const auto& [n, logT] : T) {
        if (n > M.K()) continue;
        const double log_h = (logT - M.logM[n]) / static_cast<double>(n);
        hs.log_n.push_back(std::log(static_cast<double>(n)));
        hs.log_h.push_back(log_h);
        h.push_back(std::exp(log_h));
    }
    if (h.empty()) return hs;
    const std::size_t tail0 =
        h.size() <= 4 ? 0 : std::max(tail::begin(h.size(), 0.5), std::size_t{0});
    std::span<const double> th(h.data() + tail0, h.size() - tail0);
    std::span<const double> tln(hs.log_n.data() + tail0, hs.log_n.size() - tail0);
    std::span<const double> tlh(hs.log_h.data() + tail0, hs.log_h.size() - tail0);
    hs.h_last = h.back();
    hs.sup_tail = *std::max_element(th.begin(), th.end());
    hs.slope = tail::ls_slope(tln, tlh);
    hs.tail_decreasing = tail::strictly_monotone(th, -1, cfg.tol) == tail::Monotone::Yes;
    return hs;
}

CandidateEvidence evidence_for_sequence(const std::vector<std::pair<long, double>>& T,
                                        const seqcore::WeightSequence& M, const RunConfig& cfg) {
    CandidateEvidence ev;
    ev.name = M.name;
    const HatSeries hs = hat_series(T, M, cfg);
    if (hs.log_h.size() < 4) {
        ev.roumieu = Verdict::inconclusive("too few usable rows inside the candidate window");
        ev.beurling = ev.roumieu;
        return ev;
    }
    ev.h_sup_tail = hs.sup_tail;
    ev.h_last = hs.h_last;
    ev.tail_slope = hs.slope;

    // Roumieu: h-hat bounded on the tail
    if (hs.slope <= cfg.classify_slope_ok) {
        ev.roumieu = Verdict::holds_empirically();
    } else if (hs.slope >= cfg.classify_slope_reject) {
        Witness w;
        w.lhs = hs.slope;
        w.rhs = cfg.classify_slope_reject;
        w.detail = "h-hat grows along the tail";
        ev.roumieu = Verdict::fails(w);
    } else {
        ev.roumieu = Verdict::inconclusive("h-hat trend in the undecided band");
    }
    ev.roumieu.diag["sup_tail"] = hs.sup_tail;
    ev.roumieu.diag["tail_slope"] = hs.slope;

    // Beurling: h-hat decreasing with extrapolated level below eps
    if (hs.tail_decreasing && (hs.slope <= -cfg.classify_slope_dec || hs.h_last < cfg.classify_eps)) {
        ev.beurling = Verdict::holds_empirically();
    } else if (!hs.tail_decreasing && hs.h_last >= cfg.classify_eps) {
        Witness w;
        w.lhs = hs.h_last;
        w.rhs = cfg.classify_eps;
        w.detail = "h-hat neither decreasing nor negligible";
        ev.beurling = Verdict::fails(w);
    } else if (!hs.tail_decreasing) {
        ev.beurling = Verdict::holds_empirically();  // flat below eps
    } else {
        ev.beurling = Verdict::inconclusive("decreasing but too shallow to extrapolate below eps");
    }
    ev.beurling.diag["h_last"] = hs.h_last;
    ev.beurling.diag["tail_slope"] = hs.slope;
    return ev;
}

}  // namespace

Classification classify(const NormTable& table, const std::vector<Candidate>& candidates, int d,
                        const RunConfig& cfg) {
    if (d < 1) reject("classify: d >= 1 required");
    if (table.usable_rows() < 6) reject("classify: fewer than 6 usable rows");
    if (table.all_cutoff_limited()) reject("classify: every row is cutoff-limited");

    // binding norm per total order
    std::map<long, double> best;
    for (const auto& r : table.rows) {
        if (r.cutoff_limited || r.total_order < 1 || !std::isfinite(r.log_norm)) continue;
        auto [it, fresh] = best.emplace(r.total_order, r.log_norm);
        if (!fresh) it->second = std::max(it->second, r.log_norm);
    }
    std::vector<std::pair<long, double>> T(best.begin(), best.end());

    Classification out;
    out.rows_used = T.size();

    {  // least squares: log T_n ~ s lgamma(n+1) + n log h
        double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
        for (const auto& [n, logT] : T) {
            const double x1 = std::lgamma(static_cast<double>(n) + 1.0);
            const double x2 = static_cast<double>(n);
            a11 += x1 * x1;
            a12 += x1 * x2;
            a22 += x2 * x2;
            b1 += x1 * logT;
            b2 += x2 * logT;
        }
        const double det = a11 * a22 - a12 * a12;
        if (std::fabs(det) < 1e-12) reject("classify: degenerate fit");
        out.s_hat = (b1 * a22 - b2 * a12) / det;
        out.log_h_hat = (a11 * b2 - a12 * b1) / det;
    }

    for (const auto& cand : candidates) {
        if (const auto* M = std::get_if<seqcore::WeightSequence>(&cand)) {
            out.candidates.push_back(evidence_for_sequence(T, *M, cfg));
            continue;
        }
        const auto& mm = std::get<matrices::WeightMatrix>(cand);
        // Roumieu: some entry works; Beurling: every entry works
        CandidateEvidence agg;
        agg.name = "matrix[" + std::to_string(mm.entries.size()) + "]";
        agg.roumieu = Verdict::fails({});
        agg.beurling = Verdict::holds_empirically();
        bool r_inc = false, b_inc = false;
        for (const auto& e : mm.entries) {
            const CandidateEvidence ev = evidence_for_sequence(T, e.M, cfg);
            if (ev.roumieu.status == Status::HoldsEmpirically &&
                agg.roumieu.status != Status::HoldsEmpirically) {
                agg.roumieu = ev.roumieu;
                agg.h_sup_tail = ev.h_sup_tail;
                agg.h_last = ev.h_last;
                agg.tail_slope = ev.tail_slope;
                agg.roumieu.note = "witness entry " + e.M.name;
            } else if (ev.roumieu.status == Status::Inconclusive) {
                r_inc = true;
            }
            if (ev.beurling.status != Status::HoldsEmpirically) {
                if (agg.beurling.status == Status::HoldsEmpirically) {
                    agg.beurling = ev.beurling;
                    agg.beurling.note = "failing entry " + e.M.name;
                }
                if (ev.beurling.status == Status::Inconclusive) b_inc = true;
            }
        }
        if (agg.roumieu.status == Status::Fails && r_inc)
            agg.roumieu = Verdict::inconclusive("no entry decided, some undecided");
        if (agg.beurling.status == Status::Fails && b_inc)
            agg.beurling = Verdict::inconclusive("some entry undecided");
        out.candidates.push_back(std::move(agg));
    }
    return out;
}

// ---------------------------------------------------------------------------
// a-priori machinery

AprioriConstant apriori_constant(const OperatorSystem& P, int dim, const RunConfig& cfg) {
    const Verdict ell = check_ellipticity(P, dim, dim == 1 ? 2 : cfg.sphere_points, cfg);
    if (ell.status != Status::HoldsEmpirically)
        reject("apriori_constant: system is not elliptic (joint magnitude " +
               std::to_string(ell.diag.at("min_joint_magnitude")) + ")");
    const int d = P.common_order();

    const int R = cfg.scan_radius;
    const LatticeIter it{dim, R};
    std::vector<double> ratio(it.size());
    const long n = static_cast<long>(it.size());
#pragma omp parallel for schedule(static) if (cfg.parallel)
    for (long i = 0; i < n; ++i) {
        int x1, x2;
        it.freq(static_cast<std::size_t>(i), x1, x2);
        const double q = 1.0 + static_cast<double>(x1) * x1 + static_cast<double>(x2) * x2;
        double denom = 1.0;
        for (const auto& p : P.ops) {
            const double s = p.symbol(x1, x2);
            denom += s * s;
        }
        ratio[static_cast<std::size_t>(i)] = ipow(q, d) / denom;
    }
    const auto mx = kernels::active_for(ratio.size(), cfg.parallel).max_val(ratio);

    // asymptotic limit along rays: 1 / sum_j p_j(theta)^2
    double ray_sup = 0.0;
    auto ray = [&](double x1, double x2) {
        double denom = 0.0;
        for (const auto& p : P.ops) {
            const double s = p.principal(x1, x2);
            denom += s * s;
        }
        if (denom > 0.0) ray_sup = std::max(ray_sup, 1.0 / denom);
    };
    if (dim == 1) {
        ray(1.0, 0.0);
        ray(-1.0, 0.0);
    } else {
        for (int i = 0; i < cfg.sphere_points; ++i) {
            const double th = 2.0 * std::numbers::pi * i / cfg.sphere_points;
            ray(std::cos(th), std::sin(th));
        }
    }

    AprioriConstant out;
    if (mx.max_abs >= ray_sup) {
        int x1, x2;
        it.freq(mx.argmax, x1, x2);
        out.arg = {x1, x2};
        out.ray_max = false;
        out.C = std::sqrt(mx.max_abs);
    } else {
        out.ray_max = true;
        out.C = std::sqrt(ray_sup);
    }
    out.C = std::max(1.0, out.C);  // constants are normalized to >= 1
    return out;
}

Verdict weighted_interpolation_check(const OperatorSystem& P, const SpectralField& u, double rho,
                                     const RunConfig& cfg) {
    if (!(rho > 0.0 && rho <= 1.0)) reject("weighted_interpolation_check: rho in (0, 1] required");
    const int d = P.common_order();
    const double C = apriori_constant(P, u.dim, cfg).C;
    const double factor = 1.0;  // torus: no nested-domain bookkeeping

    const NormTable dn = derivative_norms(u, d, cfg);
    double sum_P = 0.0;
    for (const auto& p : P.ops) sum_P += l2_norm(apply(p, u, cfg), cfg);
    double low_order = 0.0;
    for (const auto& r : dn.rows)
        if (r.total_order <= d - 1) low_order += ipow(rho, static_cast<int>(r.total_order)) *
                                                 std::exp(std::isfinite(r.log_norm) ? r.log_norm : -kInf);

    const double rhs = C * factor * (ipow(rho, d) * sum_P + low_order);

    Verdict v = Verdict::holds();
    double min_slack = kInf;
    for (const auto& r : dn.rows) {
        const double norm = std::isfinite(r.log_norm) ? std::exp(r.log_norm) : 0.0;
        const double lhs = ipow(rho, d) * norm;
        min_slack = std::min(min_slack, rhs - lhs);
        if (lhs > rhs * (1.0 + cfg.tol) + cfg.tol) {
            Witness w;
            w.k = r.total_order;
            w.lhs = lhs;
            w.rhs = rhs;
            w.detail = "alpha = " + r.label;
            v = Verdict::fails(w);
            break;
        }
    }
    v.diag["C"] = C;
    v.diag["combinatorial_factor"] = factor;
    v.diag["min_slack"] = min_slack;
    return v;
}

Verdict regular_estimate_check(const seqcore::WeightSequence& M, int amax, const RunConfig& cfg) {
    if (amax > M.K()) reject("regular_estimate_check: amax exceeds the window");
    const Verdict m1 = seqcore::check_condition(M, seqcore::Condition::M1, cfg);
    if (m1.status != Status::Holds)
        reject("regular_estimate_check: M1 precondition fails for " + M.name);

    const seqcore::DerivedViews dv = seqcore::derived(M);
    Verdict v = Verdict::holds();
    double worst = -kInf;
    for (int a = 2; a <= amax; ++a) {
        for (int b = 1; b < a; ++b) {
            const double log_binom = std::lgamma(a + 1.0) - std::lgamma(b + 1.0) -
                                     std::lgamma(a - b + 1.0);
            const double val = log_binom + M.logM[b] - b * dv.log_theta[a];
            worst = std::max(worst, val);
            if (val > cfg.tol) {
                Witness w;
                w.k = a;
                w.j = b;
                w.lhs = val;
                w.rhs = 0.0;
                w.detail = "binom(a,b) M_b Theta_a^{-b} > 1 (log scale)";
                v = Verdict::fails(w);
                v.diag["worst_log_value"] = worst;
                return v;
            }
        }
    }
    v.diag["worst_log_value"] = worst;
    return v;
}

AdmissibleA find_admissible_A(double C, double H, int d, int n, int ell) {
    if (!(C >= 0.0)) reject("find_admissible_A: C >= 0 required");
    if (!(H > 0.0)) reject("find_admissible_A: H > 0 required");
    if (d < 1 || n < 1 || ell < 1) reject("find_admissible_A: d, n, ell >= 1 required");

    // multi-index count |{beta in N_0^n : |beta| = m}| = binom(m+n-1, n-1)
    auto count = [&](int m) {
        return std::exp(std::lgamma(m + n + 0.0) - std::lgamma(m + 1.0) - std::lgamma(n + 0.0));
    };
    auto bracket = [&](double A) {
        const double t1 = C * std::pow(A, -d);
        const double t2 = C * std::pow(static_cast<double>(d), n) * H * H / A *
                          std::pow(1.0 - H / A, -static_cast<double>(n));
        double t3 = 0.0;
        for (int m = 0; m <= d - 1; ++m) t3 += count(m) * std::pow(A, m - d);
        return t1 + t2 + C * t3;
    };

    const double lo0 = std::max(1.0, H);
    if (C == 0.0) return {lo0, 0.0};

    double lo = lo0;
    double hi = std::max(2.0 * lo0, lo0 + 1.0);
    int guard = 0;
    while (bracket(hi) > 1.0 && guard++ < 200) hi *= 2.0;
    if (bracket(hi) > 1.0) reject("find_admissible_A: no admissible A found (unexpected)");

    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        if (bracket(mid) <= 1.0) hi = mid;
        else lo = mid;
    }
    return {hi, bracket(hi)};
}

MainPropResult mainprop_trace(const OperatorSystem& P, const SpectralField& u,
                              const seqcore::WeightSequence& M, double rho, int kmax,
                              const RunConfig& cfg) {
    if (!(rho > 0.0 && rho <= 1.0)) reject("mainprop_trace: rho in (0, 1] required");
    if (kmax < 1) reject("mainprop_trace: kmax >= 1 required");
    const Verdict m1 = seqcore::check_condition(M, seqcore::Condition::M1, cfg);
    if (m1.status != Status::Holds) reject("mainprop_trace: M1 precondition fails for " + M.name);

    const int d = P.common_order();
    const auto ap = apriori_constant(P, u.dim, cfg);  // also enforces ellipticity
    const double H = std::max(P.coeff_bound(), 1e-300);
    const auto adm = find_admissible_A(ap.C, H, d, u.dim, static_cast<int>(P.ops.size()));

    const NormTable words = iterate_norms(P, u, kmax, cfg);
    const NormTable derivs = derivative_norms(u, d * kmax, cfg);
    for (const auto& r : words.rows)
        if (r.cutoff_limited)
            throw std::runtime_error("mainprop_trace: iterate row '" + r.label +
                                     "' is cutoff-limited; raise the cutoff");
    for (const auto& r : derivs.rows)
        if (r.cutoff_limited)
            throw std::runtime_error("mainprop_trace: derivative row '" + r.label +
                                     "' is cutoff-limited; raise the cutoff");

    // log S_k = log( sum_{sigma<=k} rho^{(sigma-1)d} sum_{|tau|=sigma} ||P^tau u|| + ||u|| )
    const double log_u = log_l2_norm(u, cfg);
    std::vector<double> log_level(kmax + 1, -kInf);  // log sum over words of one length
    for (const auto& r : words.rows)
        if (r.word_len >= 1) log_level[r.word_len] = log_add(log_level[r.word_len], r.log_norm);

    MainPropResult out;
    out.A = adm.A;
    out.C = ap.C;
    out.H = H;
    double acc = log_u;
    std::vector<double> log_S(kmax + 1, -kInf);
    for (int k = 1; k <= kmax; ++k) {
        acc = log_add(acc, (k - 1) * d * std::log(rho) + log_level[k]);
        log_S[k] = acc;
        out.log_S.push_back(acc);
    }

    const double logA = std::log(adm.A);
    const double logRho = std::log(rho);
    Verdict v = Verdict::holds();
    for (const auto& r : derivs.rows) {
        const long a = r.total_order;
        if (!std::isfinite(r.log_norm)) continue;
        const long k = std::max(1L, (a + d - 1) / d);
        const double lhs = a * logRho + r.log_norm;
        const double rhs = (a + 1) * logA + log_S[k];
        if (lhs > rhs + cfg.tol) {
            Witness w;
            w.k = a;
            w.lhs = lhs;
            w.rhs = rhs;
            w.detail = "alpha = " + r.label;
            v = Verdict::fails(w);
            break;
        }
    }
    v.diag["A"] = adm.A;
    v.diag["C"] = ap.C;
    v.diag["H"] = H;
    out.verdict = v;
    return out;
}

RhoSchedule rho_schedule(double R, double Rp, const seqcore::WeightSequence& M, int dk,
                         const RunConfig& cfg) {
    if (!(Rp > 0.0 && Rp < R && R <= 1.0)) reject("rho_schedule: need 0 < R' < R <= 1");
    if (dk < 1 || dk > M.K()) reject("rho_schedule: dk in [1, K] required");

    const seqcore::DerivedViews dv = seqcore::derived(M);
    const double lambda = std::exp(dv.log_lambda[dk]);
    const double rho = (R - Rp) / (std::numbers::e * lambda);

    RhoSchedule out;
    out.rho = rho;
    out.min_slack = kInf;
    Verdict v = Verdict::holds();
    for (int a = 1; a <= dk; ++a) {
        const double theta = std::exp(dv.log_theta[a]);
        const double slack = R - theta * rho - Rp / std::numbers::e;
        out.min_slack = std::min(out.min_slack, slack);
        if (slack < -cfg.tol) {
            Witness w;
            w.k = a;
            w.lhs = R - theta * rho;
            w.rhs = Rp / std::numbers::e;
            w.detail = "radius slack negative";
            v = Verdict::fails(w);
            break;
        }
    }
    v.diag["rho"] = rho;
    v.diag["min_slack"] = out.min_slack;
    v.diag["stirling_chain_ok"] =
        seqcore::stirling_chain(dk, cfg).status == Status::Holds ? 1.0 : 0.0;
    out.shrink_check = v;
    return out;
}

}  // namespace ultra::spectral

#include "ultra/selftest.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "ultra/conditions.hpp"
#include "ultra/io.hpp"
#include "ultra/relations.hpp"
#include "ultra/spectral.hpp"
#include "ultra/transforms.hpp"
#include "ultra/weight_function.hpp"
#include "ultra/weight_sequence.hpp"

namespace ultra::selftest {

namespace {

using seqcore::WeightSequence;

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<std::pair<std::string, WeightSequence>> named_families(int K) {
    using namespace seqcore;
    return {
        {"gevrey1", build_family(Gevrey{1.0}, K)},
        {"gevrey2", build_family(Gevrey{2.0}, K)},
        {"bridge11", build_family(Bridge{1.0, 1.0}, K)},
        {"lqr2_15", build_family(Lqr{2.0, 1.5}, K)},
        {"qgevrey2", build_family(QGevrey{2.0}, K)},
    };
}

/// random log-convex weight sequence: nondecreasing log mu integrated up
WeightSequence random_log_convex(std::uint64_t seed, int K) {
    std::mt19937_64 rng(seed);
    std::vector<double> logM(K + 1, 0.0);
    double lmu = 0.5 * unit(rng);
    for (int k = 1; k <= K; ++k) {
        logM[k] = logM[k - 1] + lmu;
        lmu += 0.3 * unit(rng);
    }
    return seqcore::make_sequence("rand-logconvex-" + std::to_string(seed), std::move(logM));
}

/// random M with log mu_k = log k + c_k, c_k nondecreasing: log-convex,
/// strongly log-convex in m, nondecreasing roots, visible root growth
WeightSequence random_regular(std::uint64_t seed, int K) {
    std::mt19937_64 rng(seed);
    std::vector<double> logM(K + 1, 0.0);
    double jitter = 0.0;
    for (int k = 1; k <= K; ++k) {
        jitter += 0.05 * unit(rng);
        const double c = 0.8 * std::log(k + 1.0) + jitter;
        logM[k] = logM[k - 1] + std::log(static_cast<double>(k)) + c;
    }
    return seqcore::make_sequence("rand-regular-" + std::to_string(seed), std::move(logM));
}

struct Battery {
    std::vector<CriterionResult> results;
    std::map<std::string, std::string> files;
};

template <typename F>
void criterion(Battery& b, int id, const std::string& name, F&& body,
               const std::function<void(const std::string&)>& progress) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        std::ostringstream detail;
        r.passed = body(detail);
        r.detail = detail.str();
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (progress) {
        std::ostringstream line;
        line << (r.passed ? "PASS" : "FAIL") << " criterion " << id << " [" << name << "] "
             << r.detail;
        progress(line.str());
    }
    b.results.push_back(std::move(r));
}

Battery build_battery(const RunConfig& cfg, const std::function<void(const std::string&)>& progress) {
    Battery b;

    criterion(b, 1, "lemma suite", [&](std::ostringstream& detail) {
        auto chain_ok = [&](const WeightSequence& M, bool& ok, std::string& why) {
            const Report rep = seqcore::check_lemma_chain(M, cfg);
            for (const auto& [nm, v] : rep.items) {
                const bool conditional = nm.starts_with("e:") || nm.starts_with("f:") || nm.starts_with("g:");
                const bool fine = conditional ? (v.status == Status::Holds ||
                                                 v.status == Status::Inconclusive)
                                              : (v.status == Status::Holds);
                if (!fine) {
                    ok = false;
                    why = M.name + " item " + nm + " is " + to_string(v.status);
                    return;
                }
            }
        };
        bool ok = true;
        std::string why;
        for (const auto& [nm, M] : named_families(cfg.K)) {
            chain_ok(M, ok, why);
            b.files["lemmas_" + nm + ".json"] = io::report_json(seqcore::check_lemma_chain(M, cfg)) + "\n";
            if (!ok) break;
        }
        int checked = 0;
        if (ok) {
            std::vector<std::string> whys(200);
            std::vector<char> oks(200, 1);
#pragma omp parallel for schedule(dynamic) if (cfg.parallel)
            for (int i = 0; i < 200; ++i) {
                bool o = true;
                std::string w;
                chain_ok(random_log_convex(cfg.seed + i, cfg.K), o, w);
                oks[i] = o ? 1 : 0;
                whys[i] = w;
            }
            for (int i = 0; i < 200; ++i) {
                ++checked;
                if (!oks[i]) {
                    ok = false;
                    why = whys[i];
                    break;
                }
            }
        }
        detail << (ok ? "5 named families + 200 random log-convex sequences"
                      : "violation: " + why);
        return ok;
    }, progress);

    criterion(b, 2, "condition matrix", [&](std::ostringstream& detail) {
        const auto fams = named_families(cfg.K);
        const auto& g2 = fams[1].second;
        const auto& bridge = fams[2].second;
        const auto& qg = fams[4].second;
        for (const auto& [nm, M] : fams)
            b.files["conditions_" + nm + ".json"] =
                io::report_json(seqcore::check_all_conditions(M, cfg)) + "\n";

        const Verdict m0 = seqcore::check_condition(g2, seqcore::Condition::M0, cfg);
        const Verdict m1 = seqcore::check_condition(g2, seqcore::Condition::M1, cfg);
        const Verdict m2p = seqcore::check_condition(g2, seqcore::Condition::M2Prime, cfg);
        if (m0.status != Status::HoldsEmpirically) { detail << "gevrey2 M0: " << to_string(m0.status); return false; }
        if (m1.status != Status::Holds) { detail << "gevrey2 M1: " << to_string(m1.status); return false; }
        if (m2p.status != Status::HoldsEmpirically) { detail << "gevrey2 M2': " << to_string(m2p.status); return false; }

        const Verdict qm2p = seqcore::check_condition(qg, seqcore::Condition::M2Prime, cfg);
        if (qm2p.status != Status::HoldsEmpirically) { detail << "qgevrey2 M2': " << to_string(qm2p.status); return false; }
        const double gamma_hat = qm2p.diag.at("gamma_hat");
        if (!(gamma_hat <= 4.0 + 1e-6)) { detail << "qgevrey2 gamma_hat = " << io::fmt(gamma_hat); return false; }
        const Verdict qm2 = seqcore::check_condition(qg, seqcore::Condition::M2, cfg);
        if (qm2.status != Status::Fails || !qm2.witness) { detail << "qgevrey2 M2: " << to_string(qm2.status); return false; }

        const Verdict bq = seqcore::check_condition(bridge, seqcore::Condition::NonQuasianalytic, cfg);
        if (bq.status != Status::Fails) { detail << "bridge11 non-quasi: " << to_string(bq.status); return false; }

        detail << "gevrey2 weakly-regular evidence; qgevrey2 gamma_hat=" << io::fmt(gamma_hat)
               << ", M2 witness j=" << qm2.witness->j << " k=" << qm2.witness->k
               << "; bridge11 quasianalytic";
        return true;
    }, progress);

    criterion(b, 3, "non-quasianalytic partial sum", [&](std::ostringstream& detail) {
        const auto g2 = seqcore::build_family(seqcore::Gevrey{2.0}, 10000);
        const Verdict v = seqcore::check_condition(g2, seqcore::Condition::NonQuasianalytic, cfg);
        const double partial = v.diag.at("partial_sum");
        const double target = std::numbers::pi * std::numbers::pi / 6.0;
        const bool ok = v.status == Status::HoldsEmpirically && std::fabs(partial - target) <= 1e-3;
        detail << "partial=" << io::fmt(partial) << " pi^2/6=" << io::fmt(target);
        return ok;
    }, progress);

    criterion(b, 4, "komatsu lift", [&](std::ostringstream& detail) {
        for (int i = 0; i < 50; ++i) {
            const WeightSequence M = random_regular(cfg.seed + 100 + i, cfg.K);
            std::mt19937_64 rng(cfg.seed + 500 + i);
            std::vector<double> logL(cfg.K + 1, 0.0);
            double phi = 0.0;
            for (int k = 1; k <= cfg.K; ++k) {
                phi += 0.05 + 0.1 * unit(rng);
                logL[k] = M.logM[k] - static_cast<double>(k) * phi;
            }
            if (logL[1] < 0.0) logL[1] = 0.0;
            const WeightSequence L =
                seqcore::make_sequence("rand-L-" + std::to_string(i), std::move(logL));

            const auto res = transforms::komatsu_lift(L, M, cfg);
            if (res.domination.status != Status::Holds) {
                detail << "pair " << i << ": L <= N fails at k=" << res.domination.witness->k;
                return false;
            }
            // n_k^{1/k} nondecreasing exactly
            const seqcore::DerivedViews dn = seqcore::derived(res.N);
            for (int k = 1; k < cfg.K; ++k)
                if (dn.log_m[k] / k > dn.log_m[k + 1] / (k + 1) + cfg.tol) {
                    detail << "pair " << i << ": n roots decrease at k=" << k;
                    return false;
                }
            const auto rel = relations::compare(res.N, M, relations::Relation::Lhd, cfg);
            if (rel.status.status != Status::HoldsEmpirically) {
                detail << "pair " << i << ": N lhd M is " << to_string(rel.status.status);
                return false;
            }
        }
        detail << "50 seeded pairs: domination, monotone roots, N lhd M";
        return true;
    }, progress);

    criterion(b, 5, "almost-increasing regularization", [&](std::ostringstream& detail) {
        for (int i = 0; i < 50; ++i) {
            std::mt19937_64 rng(cfg.seed + 900 + i);
            std::vector<double> logM(cfg.K + 1, 0.0);
            for (int k = 1; k <= cfg.K; ++k) {
                const double r = 0.5 * std::log(k + 1.0) + 0.08 * (2.0 * unit(rng) - 1.0);
                logM[k] = std::lgamma(k + 1.0) + k * std::max(r, 0.0);
            }
            const WeightSequence M =
                seqcore::make_sequence("rand-dip-" + std::to_string(i), std::move(logM));
            const Verdict ai = seqcore::check_condition(M, seqcore::Condition::AlmostIncreasing, cfg);
            const double C = ai.diag.at("C_hat");

            const auto res = transforms::regularize_almost_increasing(M, C, cfg);
            for (std::size_t k = 1; k + 1 < res.log_nu.size(); ++k)
                if (res.log_nu[k + 1] < res.log_nu[k] - cfg.tol) {
                    detail << "seq " << i << ": nu decreases at k=" << k;
                    return false;
                }
            if (res.envelope_bounds.status != Status::Holds) {
                detail << "seq " << i << ": envelope bound fails";
                return false;
            }
            if (res.equivalence.status != Status::HoldsEmpirically) {
                detail << "seq " << i << ": approx evidence is " << to_string(res.equivalence.status);
                return false;
            }
        }
        detail << "50 seeded dipping sequences regularized";
        return true;
    }, progress);

    criterion(b, 6, "conjugate oracle", [&](std::ostringstream& detail) {
        const auto p1 = omega::make_weight_function(omega::Power{1.0}, cfg.t_max);
        const auto p05 = omega::make_weight_function(omega::Power{0.5}, cfg.t_max);

        std::vector<double> ys;
        for (int i = 0; i <= 999; ++i) ys.push_back(1.0 + static_cast<double>(i));
        const auto c1 = omega::conjugate_at(p1, ys, cfg);
        double worst1 = 0.0;
        for (std::size_t i = 0; i < ys.size(); ++i) {
            const double y = ys[i];
            const double exact = y * std::log(y) - y;
            if (!c1.trusted(i)) { detail << "power(1): untrusted point y=" << io::fmt(y); return false; }
            const double rel = std::fabs(c1.phi_star[i] - exact) / std::max(1.0, std::fabs(exact));
            worst1 = std::max(worst1, rel);
        }
        const auto c05 = omega::conjugate_at(p05, ys, cfg);
        double worst05 = 0.0;
        for (std::size_t i = 0; i < ys.size(); ++i) {
            const double y = ys[i];
            const double exact = 2.0 * y * std::log(2.0 * y) - 2.0 * y;
            if (!c05.trusted(i)) { detail << "power(1/2): untrusted point y=" << io::fmt(y); return false; }
            const double rel = std::fabs(c05.phi_star[i] - exact) / std::max(1.0, std::fabs(exact));
            worst05 = std::max(worst05, rel);
        }
        {
            std::ostringstream csv;
            csv << "y,phi_star,interior\n";
            for (std::size_t i = 0; i < ys.size(); i += 111)
                csv << io::fmt(ys[i]) << "," << io::fmt(c1.phi_star[i]) << ","
                    << (c1.pos[i] == omega::MaximizerPos::Interior ? 1 : 0) << "\n";
            b.files["conjugate_power1.csv"] = csv.str();
        }
        if (worst1 > 1e-6 || worst05 > 1e-6) {
            detail << "relative errors " << io::fmt(worst1) << ", " << io::fmt(worst05);
            return false;
        }

        const auto entries = omega::associated_matrix(p05, {1.0}, cfg.K, cfg);
        const auto g2 = seqcore::build_family(seqcore::Gevrey{2.0}, cfg.K);
        const auto rel = relations::compare(entries[0].W, g2, relations::Relation::Approx, cfg);
        if (rel.status.status != Status::HoldsEmpirically) {
            detail << "W^1(power 1/2) approx gevrey(2) is " << to_string(rel.status.status);
            return false;
        }
        detail << "max rel errors " << io::fmt(worst1) << " / " << io::fmt(worst05)
               << "; W^1 ~ gevrey(2)";
        return true;
    }, progress);

    criterion(b, 7, "iterate classification experiment", [&](std::ostringstream& detail) {
        const auto u = spectral::make_field(spectral::FieldGevreyProfile{2.0}, 1, cfg.cutoff, cfg);
        const auto P = spectral::parse_operator("laplace", 1);

        const auto words = spectral::iterate_norms(P, u, 12, cfg);
        const auto derivs = spectral::derivative_norms(u, 24, cfg);
        for (const auto& r : words.rows)
            if (r.cutoff_limited) { detail << "iterate row cutoff-limited"; return false; }
        for (const auto& r : derivs.rows)
            if (r.cutoff_limited) { detail << "derivative row cutoff-limited"; return false; }
        b.files["iterate_norms.csv"] = io::norm_table_csv(words);
        b.files["derivative_norms.csv"] = io::norm_table_csv(derivs);

        std::vector<spectral::Candidate> cands = {
            seqcore::build_family(seqcore::Gevrey{2.0}, cfg.K),
            seqcore::build_family(seqcore::Gevrey{1.5}, cfg.K),
            seqcore::build_family(seqcore::Gevrey{2.5}, cfg.K),
        };
        const auto ci = spectral::classify(words, cands, 2, cfg);
        const auto cd = spectral::classify(derivs, cands, 1, cfg);
        b.files["classify_iterates.json"] = io::classification_json(ci) + "\n";
        b.files["classify_derivatives.json"] = io::classification_json(cd) + "\n";

        auto check = [&](const spectral::Classification& c, const char* which,
                         std::ostringstream& d) {
            if (!(c.s_hat >= 1.85 && c.s_hat <= 2.15)) {
                d << which << ": s_hat=" << io::fmt(c.s_hat) << " outside [1.85, 2.15]";
                return false;
            }
            if (c.candidates[0].roumieu.status != Status::HoldsEmpirically) {
                d << which << ": gevrey(2) roumieu " << to_string(c.candidates[0].roumieu.status);
                return false;
            }
            if (c.candidates[1].roumieu.status != Status::Fails) {
                d << which << ": gevrey(1.5) not rejected ("
                  << to_string(c.candidates[1].roumieu.status) << ")";
                return false;
            }
            if (c.candidates[2].beurling.status != Status::HoldsEmpirically) {
                d << which << ": gevrey(2.5) beurling " << to_string(c.candidates[2].beurling.status);
                return false;
            }
            return true;
        };
        if (!check(ci, "iterates", detail)) return false;
        if (!check(cd, "derivatives", detail)) return false;
        detail << "s_hat iterates=" << io::fmt(ci.s_hat) << " derivatives=" << io::fmt(cd.s_hat);
        return true;
    }, progress);

    criterion(b, 8, "a-priori constant", [&](std::ostringstream& detail) {
        const auto P = spectral::parse_operator("laplace", 1);
        const auto ap = spectral::apriori_constant(P, 1, cfg);
        b.files["apriori.json"] =
            "{\"C\":" + io::fmt(ap.C) + ",\"xi\":" + std::to_string(ap.arg[0]) + "}\n";
        const double target = std::sqrt(2.0);
        detail << "C=" << io::fmt(ap.C) << " at xi=" << ap.arg[0];
        return std::fabs(ap.C - target) <= 1e-9;
    }, progress);

    criterion(b, 9, "proof-skeleton battery", [&](std::ostringstream& detail) {
        int regularized = 0;
        for (const auto& [nm, M] : named_families(cfg.K)) {
            const bool m1 =
                seqcore::check_condition(M, seqcore::Condition::M1, cfg).status == Status::Holds;
            if (m1) {
                const Verdict re = spectral::regular_estimate_check(M, 64, cfg);
                if (re.status != Status::Holds) {
                    detail << nm << " regular estimate: " << to_string(re.status);
                    return false;
                }
                continue;
            }
            // root dip at small k (lqr-type): the raw sequence must be
            // rejected, and its almost-increasing regularization must pass
            bool rejected = false;
            try {
                (void)spectral::regular_estimate_check(M, 64, cfg);
            } catch (const std::invalid_argument&) {
                rejected = true;
            }
            if (!rejected) {
                detail << nm << ": missing M1 not rejected";
                return false;
            }
            const Verdict ai = seqcore::check_condition(M, seqcore::Condition::AlmostIncreasing, cfg);
            const auto reg = transforms::regularize_almost_increasing(M, ai.diag.at("C_hat"), cfg);
            if (reg.equivalence.status != Status::HoldsEmpirically) {
                detail << nm << ": regularization not equivalent";
                return false;
            }
            const Verdict re = spectral::regular_estimate_check(reg.Mt, 64, cfg);
            if (re.status != Status::Holds) {
                detail << nm << " regularized estimate: " << to_string(re.status);
                return false;
            }
            ++regularized;
        }
        const Verdict st = seqcore::stirling_chain(100000, cfg);
        if (st.status != Status::Holds) { detail << "stirling chain fails"; return false; }

        for (const auto& [nm, M] : named_families(cfg.K)) {
            for (int dk = 1; dk <= 64; ++dk) {
                const auto rs = spectral::rho_schedule(0.5, 0.25, M, dk, cfg);
                if (rs.shrink_check.status != Status::Holds || !(rs.min_slack > 0.0)) {
                    detail << nm << " rho schedule slack at dk=" << dk;
                    return false;
                }
            }
        }

        const auto P = spectral::parse_operator("laplace", 1);
        const auto g2 = seqcore::build_family(seqcore::Gevrey{2.0}, cfg.K);
        for (int i = 0; i < cfg.n_random_fields; ++i) {
            const auto u = spectral::make_field(spectral::FieldBandRandom{cfg.seed + 40 + i, 16}, 1,
                                                256, cfg);
            const auto mp = spectral::mainprop_trace(P, u, g2, 1.0, 4, cfg);
            if (mp.verdict.status != Status::Holds) {
                detail << "mainprop fails on seed " << (cfg.seed + 40 + i);
                return false;
            }
        }
        {   // profile field variant with a small rho
            const auto u = spectral::make_field(spectral::FieldGevreyProfile{2.0}, 1, cfg.cutoff, cfg);
            const auto mp = spectral::mainprop_trace(P, u, g2, 0.01, 6, cfg);
            if (mp.verdict.status != Status::Holds) {
                detail << "mainprop fails on the profile field";
                return false;
            }
            b.files["mainprop.json"] = io::verdict_json(mp.verdict) + "\n";
        }
        detail << "regular estimates (" << regularized
               << " via regularization), stirling(1e5), rho schedules, mainprop on "
               << cfg.n_random_fields << " fields";
        return true;
    }, progress);

    return b;
}

}  // namespace

std::vector<CriterionResult> run_all(const RunConfig& cfg,
                                     const std::function<void(const std::string&)>& progress) {
    Battery first = build_battery(cfg, progress);
    Battery second = build_battery(cfg, nullptr);

    CriterionResult det;
    det.id = 10;
    det.name = "determinism";
    const auto t0 = std::chrono::steady_clock::now();
    det.passed = first.files == second.files && first.files.size() > 0;
    {
        bool results_match = first.results.size() == second.results.size();
        for (std::size_t i = 0; results_match && i < first.results.size(); ++i)
            results_match = first.results[i].passed == second.results[i].passed &&
                            first.results[i].detail == second.results[i].detail;
        det.passed = det.passed && results_match;
    }
    det.detail = "two battery runs, " + std::to_string(first.files.size()) + " report files compared";
    det.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (progress)
        progress(std::string(det.passed ? "PASS" : "FAIL") + " criterion 10 [determinism] " + det.detail);

    first.results.push_back(det);

    for (const auto& [name, content] : first.files)
        io::write_file(cfg.out_dir + "/" + name, content);
    io::write_file(cfg.out_dir + "/selftest_report.json", report_text(cfg, first.results));
    return first.results;
}

std::string report_text(const RunConfig& cfg, const std::vector<CriterionResult>& results) {
    std::ostringstream os;
    os << "{\n\"criteria\": [\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        os << "  {\"id\": " << r.id << ", \"name\": \"" << r.name << "\", \"passed\": "
           << (r.passed ? "true" : "false") << ", \"detail\": \"";
        for (char ch : r.detail) {
            if (ch == '"') os << "\\\"";
            else if (ch == '\\') os << "\\\\";
            else os << ch;
        }
        os << "\"}" << (i + 1 < results.size() ? "," : "") << "\n";
    }
    os << "],\n\"config\": " << cfg.to_json() << "\n}\n";
    return os.str();
}

}  // namespace ultra::selftest

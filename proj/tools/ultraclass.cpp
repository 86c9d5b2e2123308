// ultraclass: command-line surface over the weight-sequence calculus and
// the spectral verification harness.  Exit codes: 0 holds/holds-empirically,
// 1 fails, 2 inconclusive, 3 usage or file error.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ultra/conditions.hpp"
#include "ultra/io.hpp"
#include "ultra/relations.hpp"
#include "ultra/selftest.hpp"
#include "ultra/spectral.hpp"
#include "ultra/transforms.hpp"
#include "ultra/weight_function.hpp"
#include "ultra/weight_matrix.hpp"

#include <json.hpp>

namespace {

using namespace ultra;

int status_code(Status s) {
    switch (s) {
        case Status::Holds:
        case Status::HoldsEmpirically: return 0;
        case Status::Fails: return 1;
        case Status::Inconclusive: return 2;
    }
    return 3;
}

/// "gevrey:2" or "@path/to/sequence.json"
seqcore::WeightSequence load_seq_arg(const std::string& arg, int K) {
    if (!arg.empty() && arg[0] == '@') return io::load_sequence(arg.substr(1));
    return seqcore::build_family(seqcore::parse_family(arg), K);
}

spectral::OperatorSystem load_op_arg(const std::string& arg, int dim) {
    if (arg.rfind("file:", 0) == 0) return io::load_operator(arg.substr(5), dim);
    return spectral::parse_operator(arg, dim);
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

void emit(const RunConfig& cfg, const std::string& name, const std::string& content) {
    const std::string path = cfg.out_dir + "/" + name;
    io::write_file(path, content);
    std::cout << "wrote " << path << "\n";
}

struct CommonOpts {
    int K = 0;           // 0 = config default
    std::string out;
    bool serial = false;
    std::uint64_t seed = 0;
    bool have_seed = false;
};

void wire_common(CLI::App* app, CommonOpts& o) {
    app->add_option("--K", o.K, "truncation order (default from config)");
    app->add_option("--out", o.out, "report directory");
    app->add_flag("--serial", o.serial, "disable the OpenMP kernels");
    app->add_option("--seed", o.seed, "base RNG seed")->each([&](const std::string&) {
        o.have_seed = true;
    });
}

RunConfig finalize(const CommonOpts& o) {
    RunConfig cfg = RunConfig::from_env();
    if (o.K > 0) cfg.K = o.K;
    if (!o.out.empty()) cfg.out_dir = o.out;
    if (o.serial) cfg.parallel = false;
    if (o.have_seed) cfg.seed = o.seed;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ultradifferentiable weight-sequence calculus and spectral harness"};
    app.require_subcommand(1);
    CommonOpts common;
    wire_common(&app, common);

    // --- seq ---------------------------------------------------------------
    auto* seq = app.add_subcommand("seq", "weight-sequence operations");
    seq->require_subcommand(1);

    std::string seq_family, seq_file, seq_outfile, seq_conditions = "all";
    auto* seq_build = seq->add_subcommand("build", "materialize a named family");
    seq_build->add_option("--family", seq_family, "family spec, e.g. gevrey:2")->required();
    seq_build->add_option("--o,--output", seq_outfile, "output sequence file");

    auto* seq_analyze = seq->add_subcommand("analyze", "run the condition checkers");
    seq_analyze->add_option("--family", seq_family, "family spec");
    seq_analyze->add_option("--file", seq_file, "sequence file");
    seq_analyze->add_option("--conditions", seq_conditions, "all or comma-separated tags");

    auto* seq_lemmas = seq->add_subcommand("lemmas", "run the lemma-chain checks");
    seq_lemmas->add_option("--family", seq_family, "family spec");
    seq_lemmas->add_option("--file", seq_file, "sequence file");

    // --- compare -----------------------------------------------------------
    std::string cmp_M, cmp_N, cmp_rel = "preceq";
    auto* cmp = app.add_subcommand("compare", "asymptotic relation between two sequences");
    cmp->add_option("--M", cmp_M, "left sequence (family or @file)")->required();
    cmp->add_option("--N", cmp_N, "right sequence")->required();
    cmp->add_option("--rel", cmp_rel, "preceq | lhd | approx");

    // --- matrix ------------------------------------------------------------
    auto* mat = app.add_subcommand("matrix", "weight-matrix operations");
    mat->require_subcommand(1);
    std::string mat_entries, mat_index, mat_omega, mat_mode = "R", mat_rel = "roumieu-preceq";
    std::string mat_entries2, mat_index2;
    std::string mat_lambdas;
    int mat_step = 1;

    auto* mat_check = mat->add_subcommand("check", "matrix axiom and regularity evidence");
    mat_check->add_option("--entries", mat_entries, "comma-separated family specs");
    mat_check->add_option("--index", mat_index, "matrix index file");
    mat_check->add_option("--omega", mat_omega, "weight function spec (associated matrix)");
    mat_check->add_option("--lambdas", mat_lambdas, "comma-separated lambdas");
    mat_check->add_option("--mode", mat_mode, "R | B");
    mat_check->add_option("--step", mat_step, "iterated derivation-closedness step");

    auto* mat_cmp = mat->add_subcommand("compare", "quantified matrix relations");
    mat_cmp->add_option("--Mset", mat_entries, "left matrix: family specs or index file via @")
        ->required();
    mat_cmp->add_option("--Nset", mat_entries2, "right matrix")->required();
    mat_cmp->add_option("--rel", mat_rel, "roumieu-preceq | beurling-preceq | lhd-mixed");

    // --- omega ---------------------------------------------------------------
    auto* om = app.add_subcommand("omega", "weight-function operations");
    om->require_subcommand(1);
    std::string om_spec, om_file, om_outindex;
    double om_ymax = 1000.0;
    int om_points = 512;
    bool om_literal = false;
    std::string om_lambdas;

    auto* om_check = om->add_subcommand("check", "weight-function axioms");
    om_check->add_option("--omega", om_spec, "power:a | log-power:b");
    om_check->add_option("--file", om_file, "weight-function file");
    om_check->add_flag("--paper-literal", om_literal, "also check the literal o(log t) reading");

    auto* om_conj = om->add_subcommand("conjugate", "Young conjugate table");
    om_conj->add_option("--omega", om_spec, "weight function spec");
    om_conj->add_option("--file", om_file, "weight-function file");
    om_conj->add_option("--ymax", om_ymax, "top of the y-grid");
    om_conj->add_option("--points", om_points, "number of y samples");

    auto* om_matrix = om->add_subcommand("matrix", "associated weight matrix");
    om_matrix->add_option("--omega", om_spec, "weight function spec");
    om_matrix->add_option("--file", om_file, "weight-function file");
    om_matrix->add_option("--lambdas", om_lambdas, "comma-separated lambdas");
    om_matrix->add_option("--o,--output", om_outindex, "output index file");

    // --- transform -----------------------------------------------------------
    auto* tr = app.add_subcommand("transform", "constructive procedures");
    tr->require_subcommand(1);
    std::string tr_L, tr_M, tr_table;
    double tr_C = 1.0;

    auto* tr_kom = tr->add_subcommand("komatsu", "interpolating lift L <= N lhd M");
    tr_kom->add_option("--L", tr_L, "lower sequence")->required();
    tr_kom->add_option("--M", tr_M, "upper sequence")->required();

    auto* tr_reg = tr->add_subcommand("regularize", "almost-increasing root regularization");
    tr_reg->add_option("--M", tr_M, "sequence")->required();
    tr_reg->add_option("--C", tr_C, "almost-increasing constant")->required();

    auto* tr_dom = tr->add_subcommand("dominate", "dominating sequence from norm tables");
    tr_dom->add_option("--table", tr_table, "JSON with d, coeff_sups, iterate_norms")->required();

    // --- spectral ------------------------------------------------------------
    auto* sp = app.add_subcommand("spectral", "torus spectral harness");
    sp->require_subcommand(1);
    std::string sp_op = "laplace", sp_field = "gevrey:2", sp_M = "gevrey:2", sp_cands, sp_route = "iterates";
    int sp_dim = 1, sp_cutoff = 0, sp_kmax = 12, sp_amax = 24, sp_dk = 4;
    double sp_rho = 1.0, sp_R = 0.5, sp_Rp = 0.25;

    auto* sp_it = sp->add_subcommand("iterates", "iterate norm table");
    auto* sp_dv = sp->add_subcommand("derivatives", "derivative norm table");
    auto* sp_cl = sp->add_subcommand("classify", "fit and candidate evidence");
    auto* sp_ap = sp->add_subcommand("apriori", "torus a-priori constant");
    auto* sp_mp = sp->add_subcommand("mainprop", "nested-radius trace inequality");
    auto* sp_rh = sp->add_subcommand("rho", "radius schedule");

    for (CLI::App* s : {sp_it, sp_dv, sp_cl, sp_ap, sp_mp}) {
        s->add_option("--op", sp_op, "operator: laplace|dx|dy|gradient|identity|file:<path>");
        s->add_option("--dim", sp_dim, "1 or 2");
        s->add_option("--cutoff", sp_cutoff, "max frequency (default from config)");
    }
    for (CLI::App* s : {sp_it, sp_dv, sp_cl, sp_mp}) s->add_option("--field", sp_field, "field spec");
    sp_it->add_option("--kmax", sp_kmax, "max word length");
    sp_cl->add_option("--kmax", sp_kmax, "max word length");
    sp_mp->add_option("--kmax", sp_kmax, "max word length");
    sp_dv->add_option("--amax", sp_amax, "max derivative order");
    sp_cl->add_option("--amax", sp_amax, "max derivative order (derivative route)");
    sp_cl->add_option("--candidates", sp_cands, "comma-separated family specs");
    sp_cl->add_option("--route", sp_route, "iterates | derivatives");
    sp_mp->add_option("--M", sp_M, "weight sequence");
    sp_mp->add_option("--rho", sp_rho, "radius factor in (0, 1]");
    sp_rh->add_option("--M", sp_M, "weight sequence");
    sp_rh->add_option("--R", sp_R, "outer radius");
    sp_rh->add_option("--Rp", sp_Rp, "inner radius");
    sp_rh->add_option("--dk", sp_dk, "index d*k");

    // --- selftest ------------------------------------------------------------
    auto* st = app.add_subcommand("selftest", "full verification battery");

    // let global options (--K, --out, ...) appear after any subcommand
    const std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
        a->fallthrough();
        for (CLI::App* sub : a->get_subcommands(std::function<bool(CLI::App*)>{}))
            enable_fallthrough(sub);
    };
    enable_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    }

    try {
        RunConfig cfg = finalize(common);

        // ---- seq
        if (seq_build->parsed()) {
            const auto M = seqcore::build_family(seqcore::parse_family(seq_family), cfg.K);
            const std::string path = seq_outfile.empty() ? cfg.out_dir + "/" + seq_family + ".json"
                                                         : seq_outfile;
            io::save_sequence(M, path, {{"source", seq_family}});
            std::cout << "wrote " << path << "\n";
            return 0;
        }
        if (seq_analyze->parsed()) {
            const auto M = seq_file.empty() ? load_seq_arg(seq_family, cfg.K)
                                            : io::load_sequence(seq_file);
            Report rep;
            if (seq_conditions == "all") {
                rep = seqcore::check_all_conditions(M, cfg);
            } else {
                for (const auto& tag : split_commas(seq_conditions))
                    rep.add(tag, seqcore::check_condition(M, seqcore::parse_condition(tag), cfg));
            }
            emit(cfg, "seq_analyze.json", io::report_json(rep) + "\n");
            std::cout << M.name << ": " << to_string(rep.aggregate()) << "\n";
            return status_code(rep.aggregate());
        }
        if (seq_lemmas->parsed()) {
            const auto M = seq_file.empty() ? load_seq_arg(seq_family, cfg.K)
                                            : io::load_sequence(seq_file);
            const Report rep = seqcore::check_lemma_chain(M, cfg);
            emit(cfg, "seq_lemmas.json", io::report_json(rep) + "\n");
            std::cout << M.name << ": " << to_string(rep.aggregate()) << "\n";
            return status_code(rep.aggregate());
        }

        // ---- compare
        if (cmp->parsed()) {
            const auto M = load_seq_arg(cmp_M, cfg.K);
            const auto N = load_seq_arg(cmp_N, cfg.K);
            const auto rv = relations::compare(M, N, relations::parse_relation(cmp_rel), cfg);
            emit(cfg, "compare.json", io::verdict_json(rv.status) + "\n");
            std::cout << M.name << " " << cmp_rel << " " << N.name << ": "
                      << to_string(rv.status.status) << " (tail slope " << io::fmt(rv.tail_slope)
                      << ")\n";
            return status_code(rv.status.status);
        }

        // ---- matrix
        auto load_matrix_arg = [&](const std::string& arg) -> matrices::WeightMatrix {
            if (!arg.empty() && arg[0] == '@') return io::load_matrix(arg.substr(1));
            matrices::WeightMatrix mm;
            double lam = 1.0;
            for (const auto& part : split_commas(arg)) {
                mm.entries.push_back({lam, load_seq_arg(part, cfg.K)});
                lam += 1.0;
            }
            return mm;
        };
        if (mat_check->parsed()) {
            matrices::WeightMatrix mm;
            if (!mat_index.empty()) {
                mm = io::load_matrix(mat_index);
            } else if (!mat_omega.empty()) {
                const auto w = omega::parse_omega(mat_omega, RunConfig{}.t_max);
                std::vector<double> lambdas = cfg.lambda_grid;
                if (!mat_lambdas.empty()) {
                    lambdas.clear();
                    for (const auto& p : split_commas(mat_lambdas)) lambdas.push_back(std::stod(p));
                }
                for (auto& e : omega::associated_matrix(w, lambdas, cfg.K, cfg))
                    mm.entries.push_back({e.lambda, std::move(e.W)});
            } else if (!mat_entries.empty()) {
                mm = load_matrix_arg(mat_entries);
            } else {
                std::cerr << "matrix check: need --entries, --index or --omega\n";
                return 3;
            }
            const auto mc = matrices::check_matrix(mm, matrices::parse_mode(mat_mode), cfg, mat_step);
            Report rep = mc.report;
            rep.add("semiregular", mc.semiregular);
            rep.add("weakly_regular", mc.weakly_regular);
            emit(cfg, "matrix_check.json", io::report_json(rep) + "\n");
            std::cout << "matrix[" << mm.entries.size() << "] mode " << mat_mode << ": "
                      << to_string(mc.weakly_regular.status) << "\n";
            return status_code(rep.aggregate());
        }
        if (mat_cmp->parsed()) {
            const auto mm = load_matrix_arg(mat_entries);
            const auto nn = load_matrix_arg(mat_entries2);
            const auto rel = matrices::parse_matrix_relation(mat_rel);
            const auto res = matrices::matrix_compare(mm, nn, rel, cfg);
            emit(cfg, "matrix_compare.json", io::verdict_json(res.verdict) + "\n");
            std::cout << mat_rel << ": " << to_string(res.verdict.status) << "\n";
            return status_code(res.verdict.status);
        }

        // ---- omega
        auto load_omega_arg = [&]() {
            if (!om_file.empty()) return io::load_weight_function(om_file);
            if (om_spec.empty()) throw std::invalid_argument("need --omega or --file");
            return omega::parse_omega(om_spec, cfg.t_max);
        };
        if (om_check->parsed()) {
            const auto w = load_omega_arg();
            const Report rep = omega::check_omega(w, cfg, om_literal);
            emit(cfg, "omega_check.json", io::report_json(rep) + "\n");
            std::cout << w.describe() << ": " << to_string(rep.aggregate()) << "\n";
            return status_code(rep.aggregate());
        }
        if (om_conj->parsed()) {
            const auto w = load_omega_arg();
            const auto ct = omega::conjugate(w, om_ymax, om_points, cfg);
            std::ostringstream csv;
            csv << "y,phi_star,maximizer,interior\n";
            for (std::size_t i = 0; i < ct.y.size(); ++i)
                csv << io::fmt(ct.y[i]) << "," << io::fmt(ct.phi_star[i]) << ","
                    << io::fmt(ct.maximizer[i]) << ","
                    << (ct.pos[i] == omega::MaximizerPos::Interior ? 1 : 0) << "\n";
            emit(cfg, "conjugate.csv", csv.str());
            bool any_escape = false;
            for (std::size_t i = 0; i < ct.y.size(); ++i) any_escape |= !ct.trusted(i);
            std::cout << w.describe() << " conjugate on [0, " << io::fmt(om_ymax) << "]: "
                      << (any_escape ? "escaped points present" : "all points trusted") << "\n";
            return any_escape ? 2 : 0;
        }
        if (om_matrix->parsed()) {
            const auto w = load_omega_arg();
            std::vector<double> lambdas = cfg.lambda_grid;
            if (!om_lambdas.empty()) {
                lambdas.clear();
                for (const auto& p : split_commas(om_lambdas)) lambdas.push_back(std::stod(p));
            }
            matrices::WeightMatrix mm;
            for (auto& e : omega::associated_matrix(w, lambdas, cfg.K, cfg))
                mm.entries.push_back({e.lambda, std::move(e.W)});
            const std::string path =
                om_outindex.empty() ? cfg.out_dir + "/associated_matrix.json" : om_outindex;
            io::save_matrix(mm, path);
            const auto mc = matrices::check_matrix(mm, matrices::MatrixMode::R, cfg);
            std::cout << "wrote " << path << "; axiom "
                      << to_string(mc.report.find("axiom:total_order")->status) << "\n";
            return status_code(mc.report.find("axiom:total_order")->status);
        }

        // ---- transform
        if (tr_kom->parsed()) {
            const auto L = load_seq_arg(tr_L, cfg.K);
            const auto M = load_seq_arg(tr_M, cfg.K);
            const auto res = transforms::komatsu_lift(L, M, cfg);
            io::save_sequence(res.N, cfg.out_dir + "/komatsu_N.json",
                              {{"L", L.name}, {"M", M.name}});
            Report rep = res.sequence_axioms;
            rep.add("domination", res.domination);
            emit(cfg, "komatsu.json", io::report_json(rep) + "\n");
            std::cout << "N written; domination " << to_string(res.domination.status) << "\n";
            return status_code(res.domination.status);
        }
        if (tr_reg->parsed()) {
            const auto M = load_seq_arg(tr_M, cfg.K);
            const auto res = transforms::regularize_almost_increasing(M, tr_C, cfg);
            io::save_sequence(res.Mt, cfg.out_dir + "/regularized.json", {{"M", M.name}});
            Report rep = res.sequence_axioms;
            rep.add("envelope_bounds", res.envelope_bounds);
            rep.add("equivalence", res.equivalence);
            emit(cfg, "regularize.json", io::report_json(rep) + "\n");
            std::cout << "M-tilde written; equivalence " << to_string(res.equivalence.status) << "\n";
            return status_code(res.equivalence.status);
        }
        if (tr_dom->parsed()) {
            const auto j = nlohmann::json::parse(io::read_file(tr_table));
            transforms::DominatingInputs in;
            in.d = j.value("d", 1);
            for (const auto& e : j.value("coeff_sups", nlohmann::json::array()))
                in.coeff_sup[e.at(0).get<long>()] = e.at(1).get<double>();
            for (const auto& e : j.value("iterate_norms", nlohmann::json::array()))
                in.iterate_norm[e.at(0).get<long>()] = e.at(1).get<double>();
            const auto logL = transforms::dominating_sequence(in, cfg.K);
            nlohmann::json out;
            out["name"] = "dominating";
            out["K"] = cfg.K;
            std::vector<double> norm(logL.size());
            for (std::size_t k = 0; k < logL.size(); ++k) norm[k] = logL[k] - logL[0];
            out["log_values"] = norm;
            out["meta"] = {{"offset_log", io::fmt(logL[0])}};
            emit(cfg, "dominating.json", out.dump(2) + "\n");
            return 0;
        }

        // ---- spectral
        const int cutoff = sp_cutoff > 0 ? sp_cutoff : cfg.cutoff;
        if (sp_it->parsed()) {
            const auto P = load_op_arg(sp_op, sp_dim);
            const auto u = spectral::make_field(spectral::parse_field(sp_field), sp_dim, cutoff, cfg);
            const auto t = spectral::iterate_norms(P, u, sp_kmax, cfg);
            emit(cfg, "iterate_norms.csv", io::norm_table_csv(t));
            std::cout << t.rows.size() << " rows, " << t.usable_rows() << " usable\n";
            return t.all_cutoff_limited() ? 2 : 0;
        }
        if (sp_dv->parsed()) {
            const auto u = spectral::make_field(spectral::parse_field(sp_field), sp_dim, cutoff, cfg);
            const auto t = spectral::derivative_norms(u, sp_amax, cfg);
            emit(cfg, "derivative_norms.csv", io::norm_table_csv(t));
            std::cout << t.rows.size() << " rows, " << t.usable_rows() << " usable\n";
            return t.all_cutoff_limited() ? 2 : 0;
        }
        if (sp_cl->parsed()) {
            const auto P = load_op_arg(sp_op, sp_dim);
            const auto u = spectral::make_field(spectral::parse_field(sp_field), sp_dim, cutoff, cfg);
            spectral::NormTable t;
            int d = 1;
            if (sp_route == "iterates") {
                t = spectral::iterate_norms(P, u, sp_kmax, cfg);
                d = P.common_order();
            } else if (sp_route == "derivatives") {
                t = spectral::derivative_norms(u, sp_amax, cfg);
            } else {
                std::cerr << "classify: route must be iterates or derivatives\n";
                return 3;
            }
            std::vector<spectral::Candidate> cands;
            if (!sp_cands.empty())
                for (const auto& c : split_commas(sp_cands)) cands.push_back(load_seq_arg(c, cfg.K));
            const auto cl = spectral::classify(t, cands, d, cfg);
            emit(cfg, "classify.json", io::classification_json(cl) + "\n");
            emit(cfg, "classify_norms.csv", io::norm_table_csv(t));
            std::cout << "s_hat = " << io::fmt(cl.s_hat) << " over " << cl.rows_used << " rows\n";
            for (const auto& ev : cl.candidates)
                std::cout << "  " << ev.name << ": roumieu " << to_string(ev.roumieu.status)
                          << ", beurling " << to_string(ev.beurling.status) << "\n";
            return 0;
        }
        if (sp_ap->parsed()) {
            const auto P = load_op_arg(sp_op, sp_dim);
            const auto ap = spectral::apriori_constant(P, sp_dim, cfg);
            std::ostringstream os;
            os << "{\"C\":" << io::fmt(ap.C) << ",\"ray_max\":" << (ap.ray_max ? "true" : "false")
               << ",\"xi\":[" << ap.arg[0] << "," << ap.arg[1] << "]}\n";
            emit(cfg, "apriori.json", os.str());
            std::cout << "C = " << io::fmt(ap.C) << "\n";
            return 0;
        }
        if (sp_mp->parsed()) {
            const auto P = load_op_arg(sp_op, sp_dim);
            const auto u = spectral::make_field(spectral::parse_field(sp_field), sp_dim, cutoff, cfg);
            const auto M = load_seq_arg(sp_M, cfg.K);
            const auto res = spectral::mainprop_trace(P, u, M, sp_rho, sp_kmax, cfg);
            emit(cfg, "mainprop.json", io::verdict_json(res.verdict) + "\n");
            std::cout << "trace inequality: " << to_string(res.verdict.status)
                      << " (A=" << io::fmt(res.A) << ")\n";
            return status_code(res.verdict.status);
        }
        if (sp_rh->parsed()) {
            const auto M = load_seq_arg(sp_M, cfg.K);
            const auto rs = spectral::rho_schedule(sp_R, sp_Rp, M, sp_dk, cfg);
            emit(cfg, "rho_schedule.json", io::verdict_json(rs.shrink_check) + "\n");
            std::cout << "rho = " << io::fmt(rs.rho) << ", min slack = " << io::fmt(rs.min_slack)
                      << ": " << to_string(rs.shrink_check.status) << "\n";
            return status_code(rs.shrink_check.status);
        }

        // ---- selftest
        if (st->parsed()) {
            const auto results =
                selftest::run_all(cfg, [](const std::string& line) { std::cout << line << "\n"; });
            bool all = true;
            for (const auto& r : results) all = all && r.passed;
            std::cout << (all ? "selftest: all criteria passed" : "selftest: FAILURES present")
                      << "\n";
            return all ? 0 : 1;
        }
    } catch (const io::FileError& e) {
        std::cerr << "file error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }

    std::cerr << "no subcommand executed\n";
    return 3;
}

#include <stdexcept>
#include <cmath>

#include <doctest.h>

#include "ultra/relations.hpp"
#include "ultra/weight_function.hpp"
#include "ultra/weight_matrix.hpp"

using namespace ultra;
using namespace ultra::omega;

namespace {
const RunConfig cfg{};
}

TEST_CASE("axis checks for the parametric families") {
    SUBCASE("power(1/2) passes everything") {
        const auto w = make_weight_function(Power{0.5}, cfg.t_max);
        const Report rep = check_omega(w, cfg);
        for (const auto& [name, v] : rep.items) {
            INFO(name);
            CHECK(v.passed());
        }
        CHECK(rep.find("alpha:doubling")->diag.at("sup_ratio") ==
              doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
    }
    SUBCASE("power(1) is not sublinear") {
        const auto w = make_weight_function(Power{1.0}, cfg.t_max);
        const Report rep = check_omega(w, cfg);
        CHECK(rep.find("sublinear")->status == Status::Fails);
        CHECK(rep.find("gamma:phi_convex")->status == Status::Holds);
    }
    SUBCASE("log-power(2) is eventually concave") {
        const auto w = make_weight_function(LogPower{2.0}, cfg.t_max);
        const Report rep = check_omega(w, cfg);
        CHECK(rep.find("gamma:phi_convex")->status == Status::Holds);
        const Verdict* conc = rep.find("concave");
        REQUIRE(conc != nullptr);
        CHECK(conc->status == Status::HoldsEmpirically);
        // concavity sets in around t = e
        CHECK(conc->diag.at("concave_from_t") > 1.5);
        CHECK(conc->diag.at("concave_from_t") < 5.0);
        CHECK(rep.find("sublinear")->status == Status::HoldsEmpirically);
    }
    SUBCASE("the literal reading of the log bound fails for powers") {
        const auto w = make_weight_function(Power{0.5}, cfg.t_max);
        const Report rep = check_omega(w, cfg, true);
        REQUIRE(rep.find("beta-literal:omega_below_log") != nullptr);
        CHECK(rep.find("beta-literal:omega_below_log")->status == Status::Fails);
        CHECK(rep.find("beta:log_below_omega")->status == Status::HoldsEmpirically);
    }
    SUBCASE("coarse grids are rejected") {
        RunConfig coarse = cfg;
        coarse.omega_grid = 32;
        const auto w = make_weight_function(Power{0.5}, cfg.t_max);
        CHECK_THROWS_AS((void)check_omega(w, coarse), std::invalid_argument);
    }
}

TEST_CASE("axis checks catch misbehaving tabulated functions") {
    SUBCASE("bounded omega fails the log lower bound") {
        std::vector<double> ts, ws;
        for (int i = 0; i <= 128; ++i) {
            ts.push_back(std::exp(18.0 * i / 128.0));
            ws.push_back(1.0);
        }
        RunConfig c = cfg;
        c.omega_grid = 512;
        const auto w = make_weight_function(Table{ts, ws}, 5e7);
        const Report rep = check_omega(w, c);
        CHECK(rep.find("beta:log_below_omega")->status == Status::Fails);
        CHECK(rep.find("sublinear")->status == Status::HoldsEmpirically);
        CHECK(rep.find("gamma:phi_convex")->status == Status::Holds);
    }
    SUBCASE("exponential growth fails the doubling condition") {
        std::vector<double> ts, ws;
        for (int i = 0; i <= 512; ++i) {
            const double t = std::exp(9.0 * i / 512.0);  // up to ~8100
            ts.push_back(t);
            ws.push_back(std::exp(t / 100.0));
        }
        RunConfig c = cfg;
        c.omega_grid = 512;
        const auto w = make_weight_function(Table{ts, ws}, 8000.0);
        const Report rep = check_omega(w, c);
        CHECK(rep.find("alpha:doubling")->status == Status::Fails);
        CHECK(rep.find("sublinear")->status == Status::Fails);
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((void)make_weight_function(Power{1.5}, 1e8), std::invalid_argument);
    CHECK_THROWS_AS((void)make_weight_function(Power{0.0}, 1e8), std::invalid_argument);
    CHECK_THROWS_AS((void)make_weight_function(LogPower{1.0}, 1e8), std::invalid_argument);
    CHECK_THROWS_AS((void)make_weight_function(Table{{1.0}, {0.0}}, 1e8), std::invalid_argument);
    CHECK_THROWS_AS((void)make_weight_function(Table{{1.0, 2.0}, {1.0, 0.5}}, 1e8),
                    std::invalid_argument);
}

TEST_CASE("conjugate spot values against the analytic maximizers") {
    const auto p1 = make_weight_function(Power{1.0}, cfg.t_max);
    const auto p05 = make_weight_function(Power{0.5}, cfg.t_max);

    const auto c1 = conjugate_at(p1, {0.0, 1.0, 10.0, 100.0}, cfg);
    // phi*(0) = -inf phi = -omega(1) = -1 for the power family
    CHECK(c1.phi_star[0] == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(c1.pos[0] == MaximizerPos::LowerEdge);
    // y >= 1: phi*(y) = y log y - y, maximizer s = log y
    CHECK(c1.phi_star[1] == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(c1.phi_star[2] == doctest::Approx(10.0 * std::log(10.0) - 10.0).epsilon(1e-9));
    CHECK(c1.maximizer[2] == doctest::Approx(std::log(10.0)).epsilon(1e-6));
    CHECK(c1.phi_star[3] == doctest::Approx(100.0 * std::log(100.0) - 100.0).epsilon(1e-9));
    CHECK(c1.pos[2] == MaximizerPos::Interior);

    const auto c05 = conjugate_at(p05, {10.0}, cfg);
    CHECK(c05.phi_star[0] == doctest::Approx(20.0 * std::log(20.0) - 20.0).epsilon(1e-9));
    CHECK(c05.maximizer[0] == doctest::Approx(2.0 * std::log(20.0)).epsilon(1e-6));

    // log-power has omega(1) = 0, so phi*(0) = 0
    const auto lp = make_weight_function(LogPower{2.0}, cfg.t_max);
    const auto cl = conjugate_at(lp, {0.0}, cfg);
    CHECK(cl.phi_star[0] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("conjugate table is convex and nondecreasing") {
    // ranges chosen so the maximizer stays on the grid: s* = 2 log(2y) for
    // the power family, s* = y/2 for log-power(2) against s_max = log t_max
    for (const auto& [fam, ymax] :
         {std::pair<OmegaFamily, double>{Power{0.5}, 200.0}, {LogPower{2.0}, 30.0}}) {
        const auto w = make_weight_function(fam, cfg.t_max);
        const auto ct = conjugate(w, ymax, 401, cfg);
        for (std::size_t i = 0; i < ct.y.size(); ++i) REQUIRE(ct.trusted(i));
        for (std::size_t i = 1; i < ct.y.size(); ++i)
            CHECK(ct.phi_star[i] >= ct.phi_star[i - 1] - 1e-9);
        for (std::size_t i = 1; i + 1 < ct.y.size(); ++i)
            CHECK(ct.phi_star[i - 1] + ct.phi_star[i + 1] - 2.0 * ct.phi_star[i] >= -1e-7);
        // maximizer nondecreasing in y
        for (std::size_t i = 1; i < ct.y.size(); ++i)
            CHECK(ct.maximizer[i] >= ct.maximizer[i - 1] - 1e-9);
    }
}

TEST_CASE("tabulated weight functions run through the conjugate") {
    // samples of omega(t) = t on a geometric grid interpolate exactly, so
    // the conjugate must match the closed form of the power(1) family
    std::vector<double> ts, ws;
    for (int i = 0; i <= 256; ++i) {
        const double s = 18.0 * i / 256.0;
        ts.push_back(std::exp(s));
        ws.push_back(std::exp(s));
    }
    const auto w = make_weight_function(Table{ts, ws}, 5e7);
    const auto ct = conjugate_at(w, {10.0, 100.0}, cfg);
    CHECK(ct.phi_star[0] == doctest::Approx(10.0 * std::log(10.0) - 10.0).epsilon(1e-6));
    CHECK(ct.phi_star[1] == doctest::Approx(100.0 * std::log(100.0) - 100.0).epsilon(1e-6));
}

TEST_CASE("discrete biconjugation recovers phi on interior points") {
    const auto p1 = make_weight_function(Power{1.0}, cfg.t_max);
    const auto ct = conjugate(p1, 100.0, 20001, cfg);
    for (double s : {1.0, 2.0, 3.0}) {
        double best = -1e300;
        for (std::size_t i = 0; i < ct.y.size(); ++i)
            best = std::max(best, s * ct.y[i] - ct.phi_star[i]);
        const double phi = std::exp(s);
        CHECK(std::fabs(best - phi) / phi < 1e-4);
    }
}

TEST_CASE("associated matrices") {
    SUBCASE("power(1) at lambda 1 is the factorial scale") {
        const auto w = make_weight_function(Power{1.0}, cfg.t_max);
        const auto entries = associated_matrix(w, {1.0}, 128, cfg);
        REQUIRE(entries.size() == 1);
        CHECK(entries[0].W.logM[0] == 0.0);
        const auto g1 = seqcore::build_family(seqcore::Gevrey{1.0}, 128);
        const auto rel = relations::compare(entries[0].W, g1, relations::Relation::Approx, cfg);
        CHECK(rel.status.status == Status::HoldsEmpirically);
    }
    SUBCASE("power(1/2) at lambda 1 is the gevrey(2) scale") {
        const auto w = make_weight_function(Power{0.5}, cfg.t_max);
        const auto entries = associated_matrix(w, {1.0}, 128, cfg);
        const auto g2 = seqcore::build_family(seqcore::Gevrey{2.0}, 128);
        const auto rel = relations::compare(entries[0].W, g2, relations::Relation::Approx, cfg);
        CHECK(rel.status.status == Status::HoldsEmpirically);
    }
    SUBCASE("the lambda grid is totally ordered and semiregular") {
        const auto w = make_weight_function(Power{0.5}, cfg.t_max);
        matrices::WeightMatrix mm;
        for (auto& e : associated_matrix(w, cfg.lambda_grid, 128, cfg))
            mm.entries.push_back({e.lambda, std::move(e.W)});
        for (auto mode : {matrices::MatrixMode::R, matrices::MatrixMode::B}) {
            const auto mc = matrices::check_matrix(mm, mode, cfg);
            CHECK(mc.report.find("axiom:total_order")->status == Status::Holds);
            CHECK(mc.semiregular.status == Status::HoldsEmpirically);
        }
        // lambda-monotonicity after normalization: exact pointwise domination
        for (std::size_t i = 0; i + 1 < mm.entries.size(); ++i)
            for (int k = 0; k <= 128; ++k)
                CHECK(mm.entries[i].M.logM[k] <= mm.entries[i + 1].M.logM[k] + 1e-9);
    }
    SUBCASE("escaped maximizers are rejected") {
        const auto w = make_weight_function(Power{1.0}, 100.0);  // s_max = log 100
        CHECK_THROWS_AS((void)associated_matrix(w, {4.0}, 128, cfg), std::invalid_argument);
    }
}

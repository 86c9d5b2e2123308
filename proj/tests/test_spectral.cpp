#include <stdexcept>
#include <cmath>
#include <complex>
#include <numbers>

#include <doctest.h>

#include "ultra/spectral.hpp"

using namespace ultra;
using namespace ultra::spectral;
using seqcore::build_family;
using seqcore::Gevrey;

namespace {

const RunConfig cfg{};

/// direct-summation oracle for || D^a u || with u-hat(xi) = exp(-|xi|^{1/s}), 1D
double log_norm_oracle(double s, int a, int N) {
    // scaled summation against the largest term
    double best = -1e300;
    for (int xi = 1; xi <= N; ++xi) {
        const double t = 2.0 * a * std::log(double(xi)) - 2.0 * std::pow(double(xi), 1.0 / s);
        best = std::max(best, t);
    }
    double sum = (a == 0) ? std::exp(0.0 - best) : 0.0;  // xi = 0 contributes only at a = 0
    for (int xi = 1; xi <= N; ++xi) {
        const double t = 2.0 * a * std::log(double(xi)) - 2.0 * std::pow(double(xi), 1.0 / s);
        sum += 2.0 * std::exp(t - best);
    }
    return 0.5 * (best + std::log(sum));
}

}  // namespace

TEST_CASE("field construction") {
    const auto one = make_field(FieldSingleMode{{1, 0}}, 1, 64, cfg);
    CHECK(l2_norm(one, cfg) == doctest::Approx(1.0));

    const auto prof = make_field(FieldGevreyProfile{2.0}, 1, 4096, cfg);
    CHECK(std::abs(prof.at(1)) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(std::abs(prof.at(4)) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));

    const auto om = make_field(FieldOmegaProfile{omega::make_weight_function(omega::Power{0.5}, 1e8)},
                               1, 64, cfg);
    CHECK(std::abs(om.at(9)) == doctest::Approx(std::exp(-3.0)).epsilon(1e-12));

    const auto rnd = make_field(FieldBandRandom{7, 16}, 1, 128, cfg);
    for (int xi = 17; xi <= 128; ++xi) {
        CHECK(std::abs(rnd.at(xi)) == 0.0);
        CHECK(std::abs(rnd.at(-xi)) == 0.0);
    }
    bool any = false;
    for (int xi = -16; xi <= 16; ++xi) any = any || std::abs(rnd.at(xi)) > 0.0;
    CHECK(any);

    CHECK_THROWS_AS((void)make_field(FieldGevreyProfile{2.0}, 1, 32, cfg), std::invalid_argument);
    CHECK_THROWS_AS((void)make_field(FieldSingleMode{{100, 0}}, 1, 64, cfg), std::invalid_argument);
}

TEST_CASE("symbol application") {
    const auto u1 = make_field(FieldSingleMode{{1, 0}}, 1, 64, cfg);
    const auto P = parse_operator("dx", 1);
    CHECK(l2_norm(apply(P.ops[0], u1, cfg), cfg) == doctest::Approx(1.0));

    const auto u3 = make_field(FieldSingleMode{{3, 0}}, 1, 64, cfg);
    const auto lap = parse_operator("laplace", 1);
    CHECK(l2_norm(apply(lap.ops[0], u3, cfg), cfg) == doctest::Approx(9.0));

    const auto u05 = make_field(FieldSingleMode{{0, 5}}, 2, 16, cfg);
    const auto dx = parse_operator("dx", 2);
    CHECK(l2_norm(apply(dx.ops[0], u05, cfg), cfg) == doctest::Approx(0.0));
}

TEST_CASE("parseval exactness") {
    const auto u = make_field(FieldBandRandom{11, 32}, 1, 64, cfg);
    const auto lap = parse_operator("laplace", 1);
    const auto Pu = apply(lap.ops[0], u, cfg);
    const double lhs = l2_norm(Pu, cfg);

    double direct = 0.0;
    for (int xi = -64; xi <= 64; ++xi) {
        const double sym = double(xi) * xi;
        direct += sym * sym * std::norm(u.at(xi));
    }
    CHECK(lhs * lhs == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("composition equals the symbol product") {
    const auto u = make_field(FieldBandRandom{13, 24}, 1, 64, cfg);
    const auto lap = parse_operator("laplace", 1).ops[0];
    const auto dx = parse_operator("dx", 1).ops[0];

    const auto two_step = apply(lap, apply(dx, u, cfg), cfg);
    const auto fused = apply(symbol_product(lap, dx), u, cfg);
    for (int xi = -64; xi <= 64; ++xi)
        CHECK(std::abs(two_step.at(xi) - fused.at(xi)) <=
              1e-12 * std::max(1.0, std::abs(fused.at(xi))));
}

TEST_CASE("ellipticity checks") {
    const auto lap2 = parse_operator("laplace", 2);
    const auto v2 = check_ellipticity(lap2, 2, 720, cfg);
    CHECK(v2.status == Status::HoldsEmpirically);
    CHECK(v2.diag.at("min_joint_magnitude") == doctest::Approx(1.0).epsilon(1e-9));

    const auto dx2 = parse_operator("dx", 2);
    const auto vdx = check_ellipticity(dx2, 2, 720, cfg);
    REQUIRE(vdx.status == Status::Fails);
    CHECK(std::fabs(vdx.diag.at("witness_x1")) < 1e-9);  // fails at (0, +-1)

    const auto grad = parse_operator("gradient", 2);
    const auto vg = check_ellipticity(grad, 2, 720, cfg);
    CHECK(vg.status == Status::HoldsEmpirically);
    CHECK(vg.diag.at("min_joint_magnitude") ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));

    const auto lap1 = parse_operator("laplace", 1);
    CHECK(check_ellipticity(lap1, 1, 2, cfg).status == Status::HoldsEmpirically);
}

TEST_CASE("iterate norms on a single mode are exact powers") {
    const auto u = make_field(FieldSingleMode{{2, 0}}, 1, 64, cfg);
    const auto lap = parse_operator("laplace", 1);
    const auto t = iterate_norms(lap, u, 6, cfg);
    REQUIRE(t.rows.size() == 7);
    for (const auto& r : t.rows) {
        CHECK(r.log_norm == doctest::Approx(r.word_len * std::log(4.0)).epsilon(1e-12));
        CHECK(r.total_order == 2 * r.word_len);
        CHECK_FALSE(r.cutoff_limited);
    }
}

TEST_CASE("iterate norms frozen regression for the exponential profile") {
    // u-hat(xi) = exp(-|xi|), ||Delta u||^2 = 2 sum xi^4 exp(-2 xi)
    const auto u = make_field(FieldGevreyProfile{1.0}, 1, 4096, cfg);
    const auto lap = parse_operator("laplace", 1);
    const auto t = iterate_norms(lap, u, 1, cfg);
    REQUIRE(t.rows.size() == 2);

    double oracle = 0.0;
    for (int xi = 1; xi <= 4096; ++xi)
        oracle += 2.0 * std::pow(double(xi), 4.0) * std::exp(-2.0 * xi);
    CHECK(oracle == doctest::Approx(1.5079274897584658).epsilon(1e-12));
    CHECK(t.rows[1].log_norm == doctest::Approx(0.5 * std::log(oracle)).epsilon(1e-10));
}

TEST_CASE("system words of equal symbol magnitude") {
    const auto u = make_field(FieldSingleMode{{1, 1}}, 2, 16, cfg);
    const auto grad = parse_operator("gradient", 2);
    const auto t = iterate_norms(grad, u, 2, cfg);
    REQUIRE(t.rows.size() == 1 + 2 + 4);
    for (const auto& r : t.rows)
        if (r.word_len == 2) CHECK(r.log_norm == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("word budget is enforced") {
    const auto u = make_field(FieldSingleMode{{1, 1}}, 2, 16, cfg);
    const auto grad = parse_operator("gradient", 2);
    CHECK_THROWS_AS((void)iterate_norms(grad, u, 13, cfg), std::invalid_argument);
}

TEST_CASE("derivative norms") {
    const auto u0 = make_field(FieldSingleMode{{0, 0}}, 1, 64, cfg);
    const auto t0 = derivative_norms(u0, 4, cfg);
    for (const auto& r : t0.rows)
        if (r.total_order > 0) CHECK(r.log_norm == -std::numeric_limits<double>::infinity());

    const auto u3 = make_field(FieldSingleMode{{3, 0}}, 1, 64, cfg);
    const auto t3 = derivative_norms(u3, 5, cfg);
    for (const auto& r : t3.rows)
        CHECK(r.log_norm == doctest::Approx(r.total_order * std::log(3.0)).epsilon(1e-12));

    const auto prof = make_field(FieldGevreyProfile{2.0}, 1, 4096, cfg);
    const auto tp = derivative_norms(prof, 20, cfg);
    for (const auto& r : tp.rows) {
        CHECK_FALSE(r.cutoff_limited);
        CHECK(r.log_norm ==
              doctest::Approx(log_norm_oracle(2.0, int(r.total_order), 4096)).epsilon(1e-9));
    }
}

TEST_CASE("cutoff poisoning") {
    const auto hot = make_field(FieldSingleMode{{4000, 0}}, 1, 4096, cfg);
    const auto lap = parse_operator("laplace", 1);
    const auto t = iterate_norms(lap, hot, 6, cfg);
    CHECK(t.all_cutoff_limited());
    CHECK_THROWS_AS((void)classify(t, {}, 2, cfg), std::invalid_argument);
}

TEST_CASE("classification of a pure exponential") {
    const auto u = make_field(FieldSingleMode{{2, 0}}, 1, 64, cfg);
    const auto lap = parse_operator("laplace", 1);
    const auto t = iterate_norms(lap, u, 8, cfg);
    std::vector<Candidate> cands{build_family(Gevrey{1.0}, 128)};
    const auto c = classify(t, cands, 2, cfg);
    // T_k = 4^k: h-hat for the factorial scale decays, giving both kinds of evidence
    CHECK(c.candidates[0].roumieu.status == Status::HoldsEmpirically);
    CHECK(c.candidates[0].beurling.status == Status::HoldsEmpirically);
    CHECK(c.candidates[0].h_last < 0.5);
}

TEST_CASE("empty candidate list still fits") {
    const auto u = make_field(FieldGevreyProfile{2.0}, 1, 1024, cfg);
    const auto lap = parse_operator("laplace", 1);
    const auto t = iterate_norms(lap, u, 6, cfg);
    const auto c = classify(t, {}, 2, cfg);
    CHECK(c.candidates.empty());
    CHECK(c.s_hat > 1.0);
    CHECK(c.rows_used >= 6);
}

TEST_CASE("derivatives of an applied operator classify in the shifted class") {
    // f in the gevrey(2) class, Q of order d: the table ||D^a Q f|| must
    // carry Roumieu evidence against M shifted by d (normalized so the
    // shifted sequence is again a weight sequence; the constant shift only
    // rescales h-hat)
    const auto f = make_field(FieldGevreyProfile{2.0}, 1, 4096, cfg);
    const auto Q = parse_operator("laplace", 1).ops[0];
    const auto Qf = apply(Q, f, cfg);
    const auto table = derivative_norms(Qf, 18, cfg);

    const auto g2 = build_family(Gevrey{2.0}, 128);
    std::vector<double> shifted(129 - 2);
    for (int k = 0; k + 2 <= 128; ++k) shifted[k] = g2.logM[k + 2] - g2.logM[2];
    const auto Mshift = seqcore::make_sequence("gevrey2-shift2", std::move(shifted));

    const auto c = classify(table, {Candidate{Mshift}}, 1, cfg);
    REQUIRE(c.candidates.size() == 1);
    CHECK(c.candidates[0].roumieu.status == Status::HoldsEmpirically);
}

TEST_CASE("matrix candidate quantifiers") {
    const auto u = make_field(FieldGevreyProfile{2.0}, 1, 4096, cfg);
    const auto lap = parse_operator("laplace", 1);
    const auto t = iterate_norms(lap, u, 12, cfg);

    matrices::WeightMatrix mm;
    mm.entries.push_back({1.5, build_family(Gevrey{1.5}, 128)});
    mm.entries.push_back({2.0, build_family(Gevrey{2.0}, 128)});
    const auto c = classify(t, {Candidate{mm}}, 2, cfg);
    REQUIRE(c.candidates.size() == 1);
    // some entry (gevrey 2) carries Roumieu evidence
    CHECK(c.candidates[0].roumieu.status == Status::HoldsEmpirically);
    // not every entry carries Beurling evidence
    CHECK(c.candidates[0].beurling.status != Status::HoldsEmpirically);
}

TEST_CASE("a-priori constants") {
    const auto lap1 = parse_operator("laplace", 1);
    const auto a1 = apriori_constant(lap1, 1, cfg);
    CHECK(a1.C == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(a1.arg[0]) == 1);

    const auto grad = parse_operator("gradient", 2);
    RunConfig c2 = cfg;
    c2.scan_radius = 64;
    const auto a2 = apriori_constant(grad, 2, c2);
    CHECK(a2.C == doctest::Approx(1.0).epsilon(1e-12));

    const auto id = parse_operator("identity", 1);
    const auto a3 = apriori_constant(id, 1, cfg);
    CHECK(a3.C == doctest::Approx(1.0));

    const auto dx2 = parse_operator("dx", 2);
    CHECK_THROWS_AS((void)apriori_constant(dx2, 2, c2), std::invalid_argument);

    // a zero-order bump suppresses the ratio on the whole lattice, so the
    // sup is attained only in the limit along the ray
    OperatorSystem bumped;
    bumped.ops.push_back(Operator{{{1.0, {2, 0}}, {10.0, {0, 0}}}});
    const auto a4 = apriori_constant(bumped, 1, cfg);
    CHECK(a4.ray_max);
    CHECK(a4.C == doctest::Approx(1.0));
}

TEST_CASE("weighted interpolation inequality on the torus") {
    const auto lap = parse_operator("laplace", 1);
    const auto u = make_field(FieldSingleMode{{5, 0}}, 1, 64, cfg);
    CHECK(weighted_interpolation_check(lap, u, 0.3, cfg).status == Status::Holds);
    CHECK(weighted_interpolation_check(lap, u, 1.0, cfg).status == Status::Holds);

    for (int i = 0; i < 20; ++i) {
        const auto r = make_field(FieldBandRandom{100 + std::uint64_t(i), 16}, 1, 64, cfg);
        CHECK(weighted_interpolation_check(lap, r, 0.5, cfg).status == Status::Holds);
    }
}

TEST_CASE("regular estimate") {
    const auto g2 = build_family(Gevrey{2.0}, 128);
    const auto v = regular_estimate_check(g2, 64, cfg);
    CHECK(v.status == Status::Holds);

    // spot value at a = 3, b = 2: 3 * M_2 / Theta_3^2
    const double theta3 = 3.0 * std::pow(6.0, 1.0 / 3.0);
    const double spot = 3.0 * 4.0 / (theta3 * theta3);
    CHECK(spot == doctest::Approx(0.40380457618491994).epsilon(1e-12));
    CHECK(v.diag.at("worst_log_value") <= 0.0);

    CHECK(regular_estimate_check(build_family(Gevrey{1.0}, 128), 64, cfg).status == Status::Holds);

    // a sequence with decreasing roots violates the precondition
    std::vector<double> bad(129, 0.0);
    for (int k = 1; k <= 128; ++k) bad[k] = std::lgamma(k + 1.0) + k * (1.0 / k);  // roots 1/k
    const auto B = seqcore::make_sequence("badroots", std::move(bad));
    CHECK_THROWS_AS((void)regular_estimate_check(B, 64, cfg), std::invalid_argument);
}

TEST_CASE("admissible constant bisection") {
    const auto z = find_admissible_A(0.0, 1.0, 1, 1, 1);
    CHECK(z.A == doctest::Approx(1.0));

    // C=1, H=1, d=1, n=1: bracket = 2/A + 1/(A-1) = 1 has root 2 + sqrt(2)
    const auto a = find_admissible_A(1.0, 1.0, 1, 1, 1);
    CHECK(a.A == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-7));
    CHECK(a.bracket <= 1.0);

    double prev = 0.0;
    for (double H : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        const auto r = find_admissible_A(1.5, H, 2, 1, 1);
        CHECK(r.A >= prev - 1e-12);
        prev = r.A;
    }
}

TEST_CASE("trace inequality") {
    const auto lap = parse_operator("laplace", 1);
    const auto g2 = build_family(Gevrey{2.0}, 128);

    const auto u = make_field(FieldSingleMode{{3, 0}}, 1, 64, cfg);
    const auto res = mainprop_trace(lap, u, g2, 0.5, 3, cfg);
    CHECK(res.verdict.status == Status::Holds);
    CHECK(res.A > 1.0);
    CHECK(res.C == doctest::Approx(std::sqrt(2.0)));

    const auto prof = make_field(FieldGevreyProfile{2.0}, 1, 4096, cfg);
    CHECK(mainprop_trace(lap, prof, g2, 0.01, 6, cfg).verdict.status == Status::Holds);

    // cutoff-limited rows abort
    const auto hot = make_field(FieldSingleMode{{4000, 0}}, 1, 4096, cfg);
    CHECK_THROWS_AS((void)mainprop_trace(lap, hot, g2, 0.5, 2, cfg), std::runtime_error);
}

TEST_CASE("radius schedule") {
    const auto g2 = build_family(Gevrey{2.0}, 128);
    const auto rs = rho_schedule(0.5, 0.25, g2, 4, cfg);
    CHECK(rs.rho == doctest::Approx(0.25 / (std::numbers::e * std::pow(576.0, 0.25))).epsilon(1e-12));
    const double theta4 = 4.0 * std::pow(24.0, 0.25);
    CHECK(rs.min_slack ==
          doctest::Approx(0.5 - theta4 * rs.rho - 0.25 / std::numbers::e).epsilon(1e-9));
    CHECK(rs.shrink_check.status == Status::Holds);
    CHECK(rs.min_slack > 0.0);

    const auto g1 = build_family(Gevrey{1.0}, 128);
    for (int dk : {1, 8, 32, 64}) {
        const auto r = rho_schedule(0.5, 0.25, g1, dk, cfg);
        CHECK(r.shrink_check.status == Status::Holds);
        CHECK(r.min_slack > 0.0);
    }

    // R' -> R collapses rho to 0 with nonnegative slack
    const auto tight = rho_schedule(0.5, 0.5 - 1e-9, g2, 8, cfg);
    CHECK(tight.rho < 1e-9);
    CHECK(tight.shrink_check.status == Status::Holds);

    CHECK_THROWS_AS((void)rho_schedule(0.25, 0.5, g2, 4, cfg), std::invalid_argument);
}

TEST_CASE("field and operator mini-language") {
    CHECK(std::holds_alternative<FieldGevreyProfile>(parse_field("gevrey:2")));
    CHECK(std::holds_alternative<FieldSingleMode>(parse_field("single:3")));
    CHECK(std::holds_alternative<FieldSingleMode>(parse_field("single:0,5")));
    CHECK(std::holds_alternative<FieldBandRandom>(parse_field("random:7:16")));
    CHECK(std::holds_alternative<FieldOmegaProfile>(parse_field("omega:power:0.5")));
    CHECK_THROWS_AS((void)parse_field("what:1"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_operator("nope", 1), std::invalid_argument);
    CHECK(parse_operator("laplace", 2).ops[0].order() == 2);
    CHECK(parse_operator("gradient", 2).ops.size() == 2);
}

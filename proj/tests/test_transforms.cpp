#include <stdexcept>
#include <cmath>
#include <random>

#include <doctest.h>

#include "ultra/conditions.hpp"
#include "ultra/relations.hpp"
#include "ultra/transforms.hpp"

using namespace ultra;
using namespace ultra::transforms;
using seqcore::build_family;
using seqcore::Gevrey;

namespace {

const RunConfig cfg{};

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// independent oracle: the infimum over a dense slope grid
double envelope_oracle(const std::vector<long>& ks, const std::vector<double>& a, long k) {
    double best = 1e300;
    for (double x = -50.0; x <= 50.0; x += 1e-3) {
        double sup = -1e300;
        for (std::size_t j = 0; j < ks.size(); ++j) sup = std::max(sup, a[j] - ks[j] * x);
        best = std::min(best, sup + k * x);
    }
    return best;
}

}  // namespace

TEST_CASE("concave envelope basics") {
    {
        const EnvelopePoints e = concave_envelope({0, 1, 2}, {0.0, 0.0, 0.0});
        CHECK(e.hull == std::vector<double>{0.0, 0.0, 0.0});
    }
    {
        // least concave majorant = chord of the endpoints, the zero line
        const EnvelopePoints e = concave_envelope({0, 1, 2}, {0.0, -2.0, 0.0});
        CHECK(e.hull[0] == doctest::Approx(0.0));
        CHECK(e.hull[1] == doctest::Approx(0.0));
        CHECK(e.hull[2] == doctest::Approx(0.0));
    }
    {
        std::vector<long> ks{0, 1, 2, 3, 4};
        std::vector<double> a;
        for (long k : ks) a.push_back(-double(k) * k);
        const EnvelopePoints e = concave_envelope(ks, a);
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(e.hull[i] == doctest::Approx(a[i]));
    }
    CHECK_THROWS_AS((void)concave_envelope({0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS((void)concave_envelope({0, 0}, {1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("concave envelope: majorization, concavity, idempotence, oracle") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<long> ks;
        std::vector<double> a;
        for (long k = 0; k <= 16; ++k) {
            ks.push_back(k);
            a.push_back(4.0 * unit(rng) - 2.0 - 0.1 * k * k * unit(rng));
        }
        const EnvelopePoints e = concave_envelope(ks, a);

        for (std::size_t i = 0; i < a.size(); ++i) CHECK(e.hull[i] >= a[i] - 1e-12);
        for (std::size_t i = 1; i + 1 < a.size(); ++i)
            CHECK(2.0 * e.hull[i] >= e.hull[i - 1] + e.hull[i + 1] - 1e-9);

        const EnvelopePoints e2 = concave_envelope(ks, e.hull);
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(e2.hull[i] == doctest::Approx(e.hull[i]).epsilon(1e-12));

        if (trial < 5)
            for (long k : {0L, 5L, 11L, 16L})
                CHECK(e.hull[k] == doctest::Approx(envelope_oracle(ks, a, k)).epsilon(5e-3));
    }
}

TEST_CASE("komatsu lift of the analytic class inside gevrey(2)") {
    const auto L = build_family(Gevrey{1.0}, 32);
    const auto M = build_family(Gevrey{2.0}, 32);
    const auto res = komatsu_lift(L, M, cfg);

    // construction collapses to N_k = (k!)^{3/2}; frozen regression value
    CHECK(res.N.logM[4] == doctest::Approx(4.767080745521919).epsilon(1e-9));
    for (int k = 1; k <= 32; ++k)
        CHECK(res.N.logM[k] == doctest::Approx(1.5 * std::lgamma(k + 1.0)).epsilon(1e-9));

    CHECK(res.domination.status == Status::Holds);
    const auto rel = relations::compare(res.N, M, relations::Relation::Lhd, cfg);
    CHECK(rel.status.status == Status::HoldsEmpirically);
}

TEST_CASE("komatsu lift rejects a non-strict pair") {
    const auto M = build_family(Gevrey{2.0}, 32);
    CHECK_THROWS_AS((void)komatsu_lift(M, M, cfg), std::invalid_argument);
}

TEST_CASE("komatsu lift of the constant sequence") {
    std::vector<double> ones(33, 0.0);
    const auto L = seqcore::make_sequence("ones", std::move(ones));
    const auto M = build_family(Gevrey{2.0}, 32);
    const auto res = komatsu_lift(L, M, cfg);
    CHECK(res.domination.status == Status::Holds);
    // same collapse as for the analytic class: roots are m_k^{1/2k}
    for (int k = 1; k <= 32; ++k)
        CHECK(res.N.logM[k] == doctest::Approx(1.5 * std::lgamma(k + 1.0)).epsilon(1e-9));
    CHECK(relations::compare(res.N, M, relations::Relation::Lhd, cfg).status.status ==
          Status::HoldsEmpirically);
}

TEST_CASE("regularization leaves monotone roots alone") {
    const auto M = build_family(Gevrey{2.0}, 64);
    const auto res = regularize_almost_increasing(M, 1.0, cfg);
    for (int k = 0; k <= 64; ++k) CHECK(res.Mt.logM[k] == doctest::Approx(M.logM[k]).epsilon(1e-12));
    CHECK(res.envelope_bounds.status == Status::Holds);
    CHECK(res.equivalence.status == Status::HoldsEmpirically);
    CHECK(res.boundary_flagged);
}

TEST_CASE("regularization lifts a dipping root") {
    std::vector<double> logM(33, 0.0);
    std::vector<double> roots{0.0, 0.5, 0.2, 0.9, 1.0, 1.1};
    for (int k = 1; k <= 32; ++k) {
        const double r = k < static_cast<int>(roots.size()) ? roots[k] : 1.1 + 0.01 * (k - 5);
        logM[k] = std::lgamma(k + 1.0) + k * r;
    }
    const auto M = seqcore::make_sequence("dip", std::move(logM));
    const double C = std::exp(0.3);  // covers the dip 0.5 -> 0.2
    const auto res = regularize_almost_increasing(M, C, cfg);

    // nu_2 picks the later smaller root, scaled by C
    CHECK(res.log_nu[2] == doctest::Approx(0.3 + 0.2).epsilon(1e-12));
    for (std::size_t k = 1; k + 1 < res.log_nu.size(); ++k)
        CHECK(res.log_nu[k + 1] >= res.log_nu[k] - 1e-12);
    CHECK(res.envelope_bounds.status == Status::Holds);
    CHECK(res.equivalence.status == Status::HoldsEmpirically);

    // C below the observed constant is rejected with the dip named
    CHECK_THROWS_AS((void)regularize_almost_increasing(M, 1.05, cfg), std::invalid_argument);
}

TEST_CASE("regularization with a global constant") {
    const auto M = build_family(Gevrey{2.0}, 32);
    const auto res = regularize_almost_increasing(M, 2.0, cfg);
    for (int k = 1; k <= 32; ++k)
        CHECK(res.Mt.logM[k] ==
              doctest::Approx(2.0 * std::lgamma(k + 1.0) + k * std::log(2.0)).epsilon(1e-9));
    CHECK(res.equivalence.status == Status::HoldsEmpirically);
}

TEST_CASE("dominating sequence") {
    SUBCASE("factorial floor") {
        DominatingInputs in;
        in.d = 1;
        in.iterate_norm[0] = 1.0;
        in.iterate_norm[1] = 0.5;
        const auto L = dominating_sequence(in, 16);
        for (int k = 0; k <= 16; ++k) CHECK(L[k] == doctest::Approx(std::lgamma(k + 1.0)));
    }
    SUBCASE("large coefficient wins until 10!") {
        DominatingInputs in;
        in.d = 1;
        in.coeff_sup[0] = 1e6;
        const auto L = dominating_sequence(in, 16);
        for (int k = 0; k <= 9; ++k) CHECK(L[k] == doctest::Approx(std::log(1e6)));
        for (int k = 10; k <= 16; ++k) CHECK(L[k] == doctest::Approx(std::lgamma(k + 1.0)));
    }
    SUBCASE("iterate norms enter at nu <= k/d") {
        DominatingInputs in;
        in.d = 2;
        in.iterate_norm[1] = 1e12;
        const auto L = dominating_sequence(in, 8);
        CHECK(L[0] == doctest::Approx(0.0));
        CHECK(L[1] == doctest::Approx(0.0));
        for (int k = 2; k <= 8; ++k) CHECK(L[k] == doctest::Approx(std::log(1e12)));
    }
}

TEST_CASE("order equalization") {
    {
        const auto r = equalize_orders({2});
        CHECK(r.exponents == std::vector<long>{1});
        CHECK(r.common_order == 2);
    }
    {
        const auto r = equalize_orders({1, 2});
        CHECK(r.exponents == std::vector<long>{2, 1});
        CHECK(r.common_order == 2);
    }
    {
        const auto r = equalize_orders({2, 3});
        CHECK(r.exponents == std::vector<long>{3, 2});
        CHECK(r.common_order == 6);
    }
    std::mt19937_64 rng(17);
    for (int t = 0; t < 20; ++t) {
        std::vector<long> orders;
        for (int j = 0; j < 4; ++j) orders.push_back(1 + static_cast<long>(5 * unit(rng)));
        const auto r = equalize_orders(orders);
        for (std::size_t j = 0; j < orders.size(); ++j)
            CHECK(r.exponents[j] * orders[j] == r.common_order);
    }
    CHECK_THROWS_AS((void)equalize_orders({}), std::invalid_argument);
    CHECK_THROWS_AS((void)equalize_orders({0}), std::invalid_argument);
    CHECK_THROWS_AS((void)equalize_orders({100000, 100000, 100000}), std::invalid_argument);
}

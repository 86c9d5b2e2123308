#include <cmath>
#include <random>

#include <doctest.h>

#include "ultra/relations.hpp"
#include "ultra/weight_sequence.hpp"

using namespace ultra;
using namespace ultra::relations;
using seqcore::build_family;
using seqcore::Gevrey;
using seqcore::QGevrey;

namespace {
const RunConfig cfg{};
}

TEST_CASE("known relations between named families") {
    const auto g1 = build_family(Gevrey{1.0}, 128);
    const auto g2 = build_family(Gevrey{2.0}, 128);
    const auto g5 = build_family(Gevrey{5.0}, 128);
    const auto nq = build_family(QGevrey{2.0}, 128);

    CHECK(compare(g1, g2, Relation::Lhd, cfg).status.status == Status::HoldsEmpirically);
    CHECK(compare(g5, nq, Relation::Lhd, cfg).status.status == Status::HoldsEmpirically);
    CHECK(compare(g2, g1, Relation::Lhd, cfg).status.status == Status::Fails);
    CHECK(compare(g1, g2, Relation::Preceq, cfg).status.status == Status::HoldsEmpirically);
    CHECK(compare(g2, g1, Relation::Preceq, cfg).status.status == Status::Fails);

    const auto self = compare(g2, g2, Relation::Approx, cfg);
    CHECK(self.status.status == Status::HoldsEmpirically);
    for (double g : self.gap) CHECK(g == 0.0);
}

TEST_CASE("strict relation implies the weak one on the same window") {
    const auto g1 = build_family(Gevrey{1.0}, 128);
    const auto g2 = build_family(Gevrey{2.0}, 128);
    const auto g5 = build_family(Gevrey{5.0}, 128);
    const auto nq = build_family(QGevrey{2.0}, 128);
    for (const auto& [M, N] : {std::pair{&g1, &g2}, {&g2, &g5}, {&g5, &nq}, {&g1, &nq}}) {
        REQUIRE(compare(*M, *N, Relation::Lhd, cfg).status.status == Status::HoldsEmpirically);
        CHECK(compare(*M, *N, Relation::Preceq, cfg).status.status == Status::HoldsEmpirically);
    }
}

TEST_CASE("evidence antisymmetry") {
    const auto g1 = build_family(Gevrey{1.0}, 128);
    const auto g2 = build_family(Gevrey{2.0}, 128);
    const auto g5 = build_family(Gevrey{5.0}, 128);
    const auto nq = build_family(QGevrey{2.0}, 128);
    for (const auto& [M, N] : {std::pair{&g1, &g2}, {&g2, &g5}, {&g5, &nq}}) {
        const bool lhd_holds =
            compare(*M, *N, Relation::Lhd, cfg).status.status == Status::HoldsEmpirically;
        const bool rev_preceq =
            compare(*N, *M, Relation::Preceq, cfg).status.status == Status::HoldsEmpirically;
        CHECK_FALSE((lhd_holds && rev_preceq));
    }
}

TEST_CASE("uniform scaling shifts the gap but not the strict verdict") {
    const auto g1 = build_family(Gevrey{1.0}, 128);
    const auto g2 = build_family(Gevrey{2.0}, 128);
    const double c = 2.5;

    std::vector<double> scaled = g2.logM;
    for (int k = 0; k <= 128; ++k) scaled[k] += k * std::log(c);
    const auto g2s = seqcore::make_sequence("scaled", std::move(scaled));

    const auto base = compare(g1, g2, Relation::Lhd, cfg);
    const auto shifted = compare(g1, g2s, Relation::Lhd, cfg);
    CHECK(base.status.status == Status::HoldsEmpirically);
    CHECK(shifted.status.status == Status::HoldsEmpirically);
    for (std::size_t i = 0; i < base.gap.size(); ++i)
        CHECK(shifted.gap[i] == doctest::Approx(base.gap[i] - std::log(c)).epsilon(1e-12));
}

TEST_CASE("flat gap fails the strict relation") {
    const auto g2 = build_family(Gevrey{2.0}, 128);
    const auto v = compare(g2, g2, Relation::Lhd, cfg);
    CHECK(v.status.status == Status::Fails);
}

TEST_CASE("tail slope is reported") {
    const auto g1 = build_family(Gevrey{1.0}, 128);
    const auto g2 = build_family(Gevrey{2.0}, 128);
    const auto v = compare(g1, g2, Relation::Lhd, cfg);
    CHECK(v.tail_slope < 0.0);
    CHECK(v.status.diag.count("delta") == 1);
    CHECK(v.status.diag.count("preceq_margin") == 1);
}

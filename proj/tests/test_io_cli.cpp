#include <cstdio>
#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "ultra/io.hpp"

using namespace ultra;

namespace {

const RunConfig cfg{};

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() / "ultra_io_test";
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("float formatting is fixed at 12 significant digits") {
    CHECK(io::fmt(2.0) == "2");
    CHECK(io::fmt(1.0 / 3.0) == "0.333333333333");
    CHECK(io::fmt(-1.0) == "-1");
    CHECK(io::fmt(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(io::fmt(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("sequence files round-trip and validate") {
    TempDir tmp;
    const auto M = seqcore::build_family(seqcore::Gevrey{2.0}, 32);
    io::save_sequence(M, tmp.file("g2.json"), {{"source", "gevrey:2"}});
    const auto back = io::load_sequence(tmp.file("g2.json"));
    CHECK(back.name == M.name);
    REQUIRE(back.K() == 32);
    for (int k = 0; k <= 32; ++k) CHECK(back.logM[k] == M.logM[k]);

    SUBCASE("nonzero leading entry is rejected with the field named") {
        std::ofstream f(tmp.file("bad.json"));
        f << R"({"name":"x","K":8,"log_values":[0.5,0,0,0,0,0,0,0,0],"meta":{}})";
        f.close();
        try {
            (void)io::load_sequence(tmp.file("bad.json"));
            FAIL("expected FileError");
        } catch (const io::FileError& e) {
            CHECK(e.field == "log_values");
        }
    }
    SUBCASE("length mismatch is rejected") {
        std::ofstream f(tmp.file("bad2.json"));
        f << R"({"name":"x","K":9,"log_values":[0,0,0,0,0,0,0,0,0],"meta":{}})";
        f.close();
        CHECK_THROWS_AS((void)io::load_sequence(tmp.file("bad2.json")), io::FileError);
    }
    SUBCASE("missing name is rejected") {
        std::ofstream f(tmp.file("bad3.json"));
        f << R"({"K":8,"log_values":[0,0,0,0,0,0,0,0,0]})";
        f.close();
        CHECK_THROWS_AS((void)io::load_sequence(tmp.file("bad3.json")), io::FileError);
    }
    SUBCASE("unreadable path is rejected") {
        CHECK_THROWS_AS((void)io::load_sequence(tmp.file("missing.json")), io::FileError);
    }
}

TEST_CASE("weight-function files round-trip") {
    TempDir tmp;
    const auto w = omega::make_weight_function(omega::LogPower{2.0}, 1e6);
    io::save_weight_function(w, tmp.file("w.json"));
    const auto back = io::load_weight_function(tmp.file("w.json"));
    CHECK(back.t_max == 1e6);
    CHECK(back.describe() == w.describe());
    CHECK(back.omega(100.0) == doctest::Approx(w.omega(100.0)));
}

TEST_CASE("operator files round-trip") {
    TempDir tmp;
    const auto P = spectral::parse_operator("laplace", 2);
    io::save_operator(P, tmp.file("op.json"));
    const auto back = io::load_operator(tmp.file("op.json"), 2);
    REQUIRE(back.ops.size() == 1);
    for (double x : {0.0, 1.0, -2.0})
        for (double y : {0.5, 3.0})
            CHECK(back.ops[0].symbol(x, y) == doctest::Approx(P.ops[0].symbol(x, y)));

    std::ofstream f(tmp.file("badop.json"));
    f << R"([[{"coeff":1.0,"multi_index":[1,2,3]}]])";
    f.close();
    CHECK_THROWS_AS((void)io::load_operator(tmp.file("badop.json"), 2), io::FileError);
}

TEST_CASE("matrix index files round-trip") {
    TempDir tmp;
    matrices::WeightMatrix mm;
    mm.entries.push_back({0.5, seqcore::build_family(seqcore::Gevrey{1.5}, 16)});
    mm.entries.push_back({1.0, seqcore::build_family(seqcore::Gevrey{2.0}, 16)});
    io::save_matrix(mm, tmp.file("mat.json"));
    const auto back = io::load_matrix(tmp.file("mat.json"));
    REQUIRE(back.entries.size() == 2);
    CHECK(back.entries[0].lambda == 0.5);
    CHECK(back.entries[1].M.logM[5] == mm.entries[1].M.logM[5]);
}

TEST_CASE("norm table csv quotes labels") {
    spectral::NormTable t;
    t.rows.push_back({"", 0, 0, 0.5, false, {0, 0}});
    t.rows.push_back({"2,3", -1, 5, 1.25, true, {0, 0}});
    const std::string csv = io::norm_table_csv(t);
    CHECK(csv == "word_or_alpha,log_norm,cutoff_flag\n\"-\",0.5,0\n\"2,3\",1.25,1\n");
}

TEST_CASE("verdict and report serialization is stable") {
    Verdict v = Verdict::holds_empirically();
    v.diag["gamma_hat"] = 3.5;
    v.note = "sample";
    const std::string j = io::verdict_json(v);
    CHECK(j ==
          R"({"status":"holds-empirically","witness":null,"diag":{"gamma_hat":3.5},"note":"sample"})");

    Report r;
    r.add("first", v);
    const std::string rj = io::report_json(r);
    CHECK(rj.find("\"aggregate\":\"holds-empirically\"") != std::string::npos);
    CHECK(rj.find("\"name\":\"first\"") != std::string::npos);
}

TEST_CASE("config round-trip via file") {
    TempDir tmp;
    io::write_file(tmp.file("cfg.json"), R"({"K": 64, "cutoff": 512, "theta": 5.0})");
    const auto c = RunConfig::from_file(tmp.file("cfg.json"));
    CHECK(c.K == 64);
    CHECK(c.cutoff == 512);
    CHECK(c.theta == 5.0);

    io::write_file(tmp.file("bad.json"), R"({"K": 64, "mystery": 1})");
    CHECK_THROWS_AS((void)RunConfig::from_file(tmp.file("bad.json")), io::FileError);
}

#include "ultra/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ultra/io.hpp"

namespace ultra {

namespace {

using nlohmann::json;

void apply(RunConfig& c, const json& j, const std::string& path) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        const json& v = it.value();
        if (key == "K") c.K = v.get<int>();
        else if (key == "tolerance") c.tol = v.get<double>();
        else if (key == "tail_fraction") c.tail_fraction = v.get<double>();
        else if (key == "theta") c.theta = v.get<double>();
        else if (key == "delta") c.delta = v.get<double>();
        else if (key == "lhd_logslope") c.lhd_logslope = v.get<double>();
        else if (key == "preceq_margin") c.preceq_margin = v.get<double>();
        else if (key == "ratio_margin") c.ratio_margin = v.get<double>();
        else if (key == "raabe_band") c.raabe_band = v.get<double>();
        else if (key == "bertrand_min") c.bertrand_min = v.get<double>();
        else if (key == "t_max") c.t_max = v.get<double>();
        else if (key == "omega_grid") c.omega_grid = v.get<int>();
        else if (key == "lambda_grid") c.lambda_grid = v.get<std::vector<double>>();
        else if (key == "cutoff") c.cutoff = v.get<int>();
        else if (key == "cutoff_guard") c.cutoff_guard = v.get<double>();
        else if (key == "word_budget") c.word_budget = v.get<int>();
        else if (key == "scan_radius") c.scan_radius = v.get<int>();
        else if (key == "sphere_points") c.sphere_points = v.get<int>();
        else if (key == "classify_slope_ok") c.classify_slope_ok = v.get<double>();
        else if (key == "classify_slope_reject") c.classify_slope_reject = v.get<double>();
        else if (key == "classify_slope_dec") c.classify_slope_dec = v.get<double>();
        else if (key == "classify_eps") c.classify_eps = v.get<double>();
        else if (key == "seed") c.seed = v.get<std::uint64_t>();
        else if (key == "n_random_fields") c.n_random_fields = v.get<int>();
        else if (key == "out_dir") c.out_dir = v.get<std::string>();
        else if (key == "parallel") c.parallel = v.get<bool>();
        else throw io::FileError(path, key, "unknown config key");
    }
    if (c.K < 8) throw io::FileError(path, "K", "K >= 8 required");
    if (!(c.tol > 0)) throw io::FileError(path, "tolerance", "must be positive");
    if (!(c.tail_fraction > 0 && c.tail_fraction <= 1))
        throw io::FileError(path, "tail_fraction", "must be in (0, 1]");
    if (!(c.theta > 0)) throw io::FileError(path, "theta", "must be positive");
    if (!(c.delta > 0)) throw io::FileError(path, "delta", "must be positive");
}

}  // namespace

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io::FileError(path, "", "cannot open config file");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw io::FileError(path, "", std::string("invalid JSON: ") + e.what());
    }
    RunConfig c;
    apply(c, j, path);
    return c;
}

RunConfig RunConfig::from_env() {
    if (const char* p = std::getenv("ULTRACLASS_CONFIG")) return from_file(p);
    return RunConfig{};
}

std::string RunConfig::to_json() const {
    json j;
    j["K"] = K;
    j["tolerance"] = tol;
    j["tail_fraction"] = tail_fraction;
    j["theta"] = theta;
    j["delta"] = delta;
    j["lhd_logslope"] = lhd_logslope;
    j["preceq_margin"] = preceq_margin;
    j["ratio_margin"] = ratio_margin;
    j["raabe_band"] = raabe_band;
    j["bertrand_min"] = bertrand_min;
    j["t_max"] = t_max;
    j["omega_grid"] = omega_grid;
    j["lambda_grid"] = lambda_grid;
    j["cutoff"] = cutoff;
    j["cutoff_guard"] = cutoff_guard;
    j["word_budget"] = word_budget;
    j["scan_radius"] = scan_radius;
    j["sphere_points"] = sphere_points;
    j["classify_slope_ok"] = classify_slope_ok;
    j["classify_slope_reject"] = classify_slope_reject;
    j["classify_slope_dec"] = classify_slope_dec;
    j["classify_eps"] = classify_eps;
    j["seed"] = seed;
    j["n_random_fields"] = n_random_fields;
    // out_dir is where reports land, not a semantic threshold; keeping it
    // out of the echo lets two runs into different directories compare equal
    j["parallel"] = parallel;
    return j.dump(2);
}

}  // namespace ultra

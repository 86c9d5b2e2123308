#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ultra/config.hpp"

namespace ultra::selftest {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double seconds = 0.0;
    std::string detail;  ///< deterministic summary line (no timing inside)
};

/// Runs the full verification battery and writes its reports under
/// cfg.out_dir.  Report bytes are a pure function of the config; timing
/// goes only to the progress sink, never into report files.
std::vector<CriterionResult> run_all(const RunConfig& cfg,
                                     const std::function<void(const std::string&)>& progress);

/// Concatenated deterministic report (what selftest writes to
/// out_dir/selftest_report.json).
std::string report_text(const RunConfig& cfg, const std::vector<CriterionResult>& results);

}  // namespace ultra::selftest

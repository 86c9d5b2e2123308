#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ultra {

/// All tunables in one place.  Every report serializes the config it ran
/// under, so results are reproducible from the artifact alone.
struct RunConfig {
    // window / tolerances
    int K = 128;                   ///< default truncation order
    double tol = 1e-9;             ///< absolute log-space tolerance for inequality checks
    double tail_fraction = 0.25;   ///< limit conditions look at the last ceil(K/4) indices
    double theta = 10.0;           ///< root-growth threshold for the analytic-inclusion check

    // relation decisions
    double delta = 0.5;            ///< required tail drop of g_k for the strict relation
    double lhd_logslope = 0.1;     ///< alternative divergence evidence: |d g / d log k| on the tail
    double preceq_margin = 0.1;    ///< slack allowed between tail max and first-half max of g_k

    // series-convergence heuristic
    double ratio_margin = 0.05;    ///< geometric branch: tail log-ratio <= log(1 - ratio_margin)
    double raabe_band = 0.25;      ///< Raabe exponent decides outside [1-band, 1+band]
    double bertrand_min = 1.25;    ///< Bertrand exponent needed to call the boundary convergent

    // weight functions
    double t_max = 1e8;            ///< domain cap for sampled weight functions
    int omega_grid = 4096;         ///< s-grid resolution on [0, log t_max]

    // weight matrices
    std::vector<double> lambda_grid = {0.25, 0.5, 1.0, 2.0, 4.0};

    // spectral harness
    int cutoff = 4096;             ///< max frequency per axis
    double cutoff_guard = 0.8;     ///< rows with dominant frequency beyond guard*cutoff are poisoned
    int word_budget = 4096;        ///< cap on enumerated operator words
    int scan_radius = 512;         ///< lattice radius for the a-priori constant scan
    int sphere_points = 720;       ///< ellipticity sample resolution in 2D

    // classification thresholds (log h-hat vs log k tail fit)
    double classify_slope_ok = 0.25;   ///< slope below which h-hat counts as bounded
    double classify_slope_reject = 0.40;  ///< slope above which the candidate is rejected
    double classify_slope_dec = 0.05;  ///< slope below -this means h-hat -> 0
    double classify_eps = 0.1;         ///< plateau level accepted as "already negligible"

    // monte carlo
    std::uint64_t seed = 7;
    int n_random_fields = 20;

    std::string out_dir = "reports";

    bool parallel = true;          ///< use the OpenMP kernels when compiled in

    /// Reads overrides from a JSON file (used for the ULTRACLASS_CONFIG
    /// environment variable).  Unknown keys are rejected.
    static RunConfig from_file(const std::string& path);

    /// Applies the ULTRACLASS_CONFIG environment variable if set.
    static RunConfig from_env();

    std::string to_json() const;
};

}  // namespace ultra

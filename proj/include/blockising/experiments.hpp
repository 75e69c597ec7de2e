#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blockising/fluctuations.hpp"
#include "blockising/model.hpp"
#include "blockising/recovery.hpp"
#include "blockising/rng.hpp"

namespace blockising {

// Parsed experiment configuration (JSON, schema_version 1; unknown keys are
// rejected).  Model parameters are kept raw so a config can be inspected
// before ModelParams validation runs.
struct ExperimentConfig {
    int schema_version = 1;

    int n_sites = 0;
    double alpha = 0.0;
    double beta = 0.0;
    SeedSpec seed{};
    int threads = 1;

    // sample
    int sample_count = 1000;
    int glauber_sweeps = 0;  // 0 -> exact sampler, > 0 -> Glauber with this spacing

    // recover
    RecoverOptions recover_opts{};

    // sweep / minimal-n search
    std::vector<int> sweep_n_grid{32, 64, 128, 256};
    std::vector<double> sweep_alphas{0.5, -0.5};
    double delta = 0.1;
    int trials = 50;
    int n_lo = 25;
    int n_hi = 200000;
    // Cells run on the critical line beta = 2 - |alpha| unless the config
    // pins a fixed sweep beta.
    bool sweep_critical_line = true;
    double sweep_beta = 0.0;

    // fluct / gap grids
    std::vector<int> fluct_n_grid{256, 1024, 2500};
    std::vector<int> gap_n_grid{64, 128, 256, 512, 1024};

    std::string out_path;           // empty -> stdout
    std::string out_format = "csv"; // csv | json | bin

    ModelParams model() const { return ModelParams(n_sites, alpha, beta); }
};

// Throws MalformedInputError on schema violations (unknown keys, missing
// required fields, out-of-range delta/trials, bad format string).
ExperimentConfig parse_config_json(const std::string& text);
ExperimentConfig load_config(const std::string& path);

struct TrialRecord {
    int trial_index = 0;
    SeedSpec seed{};
    int n = 0;
    bool exact = false;
    double error = 0.0;
    double objective = 0.0;
    double wall_time_s = 0.0;
};

struct MinimalNResult {
    int n_sites = 0;
    double alpha = 0.0;
    double beta = 0.0;
    double delta = 0.0;
    int trials = 0;
    int n_lo = 0;
    int n_hi = 0;

    int n_min = 0;        // smallest tested n meeting the success target
    bool censored = false;  // n_hi reached without success
    double success_rate = 0.0;  // empirical rate at n_min (or at n_hi if censored)
    int evaluations = 0;  // distinct n values tested
    std::vector<TrialRecord> records;  // trials at n_min (real runs only)
};

// Doubling search from n_lo followed by geometric bisection down to a 5%
// multiplicative grid.  `trial_success` must be deterministic in (n, trial):
// trials are seeded by stream_index = trial index, so a fixed trial re-uses
// its random stream across different n (common random numbers).  Success at
// a given n means at least ceil((1-delta) * trials) successful trials.
MinimalNResult find_minimal_n(double delta, int trials, int n_lo, int n_hi,
                              const std::function<bool(int n, int trial_index)>& trial_success);

// Full-pipeline variant: per trial, draws n exact samples of the model with
// hidden partition first_half(N), runs recover(), and counts exact recovery.
MinimalNResult find_minimal_n(const ModelParams& params, SeedSpec seed,
                              double delta, int trials, int n_lo, int n_hi,
                              const RecoverOptions& opts = {}, int threads = 1);

struct SweepResult {
    struct AlphaFit {
        double alpha = 0.0;
        PowerLawFit fit;
        int cells_used = 0;
        bool valid = false;       // >= 4 non-censored cells
        bool monotone_ok = true;  // n_min nondecreasing in N (1 grid step slack)
    };
    struct ExponentGap {
        double alpha_pos = 0.0;
        double alpha_neg = 0.0;
        double difference = 0.0;  // exponent(alpha_pos) - exponent(alpha_neg)
    };

    std::vector<MinimalNResult> cells;  // ordered by (alpha index, N)
    std::vector<AlphaFit> fits;
    std::vector<ExponentGap> gaps;
};

SweepResult run_sweep(const ExperimentConfig& config);

// Same sweep logic against an injected success oracle (tests / calibration).
SweepResult run_sweep_with_oracle(
    std::span<const int> n_grid, std::span<const double> alphas, double delta,
    int trials, int n_lo, int n_hi,
    const std::function<bool(int n_sites, double alpha, int n, int trial_index)>& success);

// CLI entry points.  Each returns a process exit code: 0 success, 2 I/O
// failure, 3 malformed input, 4 numeric failure.  Human-readable progress
// goes to `log`; data goes to config.out_path (stdout when empty).
int cmd_sample(const ExperimentConfig& config, std::ostream& log);
int cmd_recover(const ExperimentConfig& config, const std::string& batch_path,
                const std::string& truth_path, std::ostream& log);
int cmd_fluct(const ExperimentConfig& config, std::ostream& log);
int cmd_gap(const ExperimentConfig& config, std::ostream& log);
int cmd_sweep(const ExperimentConfig& config, std::ostream& log);

}  // namespace blockising

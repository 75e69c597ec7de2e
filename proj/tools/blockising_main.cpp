#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "blockising/errors.hpp"
#include "blockising/experiments.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::optional<std::string> out;
    std::optional<std::string> format;
};

void add_common(CLI::App* sub, CommonFlags& flags) {
    sub->add_option("--config", flags.config_path, "JSON experiment config")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", flags.seed, "override master seed");
    sub->add_option("--threads", flags.threads, "worker threads for trials");
    sub->add_option("--out", flags.out, "output path (default stdout)");
    sub->add_option("--format", flags.format, "output format")
        ->check(CLI::IsMember({"csv", "json", "bin"}));
}

// Returns the effective config, or exits with code 3 on config errors.
blockising::ExperimentConfig resolve(const CommonFlags& flags) {
    blockising::ExperimentConfig cfg = blockising::load_config(flags.config_path);
    if (flags.seed) cfg.seed.master_seed = *flags.seed;
    if (flags.threads) cfg.threads = *flags.threads;
    if (flags.out) cfg.out_path = *flags.out;
    if (flags.format) cfg.out_format = *flags.format;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-block spin Ising model: sampling, recovery and fluctuation experiments"};
    app.require_subcommand(1);

    CommonFlags sample_flags, recover_flags, fluct_flags, gap_flags, sweep_flags;
    std::string batch_path, truth_path;

    CLI::App* sample = app.add_subcommand("sample", "draw a batch from the Gibbs measure");
    add_common(sample, sample_flags);

    CLI::App* recover = app.add_subcommand("recover", "recover the hidden partition from a batch");
    add_common(recover, recover_flags);
    recover->add_option("batch", batch_path, "batch file (csv or bin per --format)")
        ->required()
        ->check(CLI::ExistingFile);
    recover->add_option("--truth", truth_path, "file of +-1 entries for error reporting")
        ->check(CLI::ExistingFile);

    CLI::App* fluct = app.add_subcommand("fluct", "critical fluctuation statistics over an N grid");
    add_common(fluct, fluct_flags);

    CLI::App* gap = app.add_subcommand("gap", "exact correlation gap Z-Z' over an N grid");
    add_common(gap, gap_flags);

    CLI::App* sweep = app.add_subcommand("sweep", "minimal-n sample complexity sweep");
    add_common(sweep, sweep_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help and friends
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;  // bad command line is malformed input
    }

    try {
        if (sample->parsed()) {
            return blockising::cmd_sample(resolve(sample_flags), std::cerr);
        }
        if (recover->parsed()) {
            return blockising::cmd_recover(resolve(recover_flags), batch_path,
                                           truth_path, std::cerr);
        }
        if (fluct->parsed()) {
            return blockising::cmd_fluct(resolve(fluct_flags), std::cerr);
        }
        if (gap->parsed()) {
            return blockising::cmd_gap(resolve(gap_flags), std::cerr);
        }
        if (sweep->parsed()) {
            return blockising::cmd_sweep(resolve(sweep_flags), std::cerr);
        }
    } catch (const blockising::MalformedInputError& e) {
        std::cerr << "error (malformed input): " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

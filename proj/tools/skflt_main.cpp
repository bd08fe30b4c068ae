// Command-line front end: runs the simulation experiments described by a JSON
// config, the randomized identity suite, or a one-off M2 distance between two
// path CSV files.
//
// Exit codes: 0 success, 1 configuration or usage error, 2 when --check is
// set and an acceptance threshold is breached.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "skflt/cadlag_geometry.hpp"
#include "skflt/experiments.hpp"
#include "skflt/path_csv.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> reps;
    std::string out;
    bool check = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_config) {
    auto* c = cmd->add_option("--config", opts.config_path, "JSON experiment config");
    if (needs_config) c->required();
    cmd->add_option("--seed", opts.seed, "override the config seed");
    cmd->add_option("--reps", opts.reps, "override the replicate count");
    cmd->add_option("--out", opts.out, "override the output CSV path");
    cmd->add_flag("--check", opts.check, "exit 2 if an acceptance threshold is breached");
}

skflt::ExperimentConfig load(const CommonOpts& opts, skflt::ExperimentKind expected,
                             const char* name) {
    auto cfg = skflt::ExperimentConfig::from_file(opts.config_path);
    if (cfg.experiment != expected)
        throw skflt::ConfigError(std::string("config experiment does not match subcommand ") +
                                 name);
    if (opts.seed) cfg.seed = *opts.seed;
    if (opts.reps) {
        cfg.reps = *opts.reps;
        cfg.validate();
    }
    if (!opts.out.empty()) cfg.output_path = opts.out;
    return cfg;
}

int emit(const skflt::ResultTable& table, const std::string& path,
         const std::string& check_message, bool check) {
    if (path.empty()) {
        table.write_csv(std::cout);
    } else {
        table.write_csv_file(path);
        std::cerr << "wrote " << path << "\n";
    }
    if (!check_message.empty()) {
        std::cerr << "check failed: " << check_message << "\n";
        if (check) return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"heavy-tailed moving-average simulation lab"};
    app.require_subcommand(1);

    CommonOpts marginal_opts, truncation_opts, dependence_opts;
    auto* marginal = app.add_subcommand(
        "marginal", "marginal-distribution check of the stable functional limit");
    add_common(marginal, marginal_opts, true);
    auto* truncation =
        app.add_subcommand("truncation", "M2 negligibility of the truncated moving average");
    add_common(truncation, truncation_opts, true);
    auto* dependence =
        app.add_subcommand("dependence", "anti-clustering and small-jump diagnostics");
    add_common(dependence, dependence_opts, true);

    std::uint64_t lemma_seed = 1;
    std::size_t lemma_cases = 1000;
    bool lemma_check = false;
    std::string lemma_out;
    auto* lemma = app.add_subcommand("lemma", "randomized telescoping-identity suite");
    lemma->add_option("--seed", lemma_seed, "suite seed");
    lemma->add_option("--cases", lemma_cases, "number of randomized instances");
    lemma->add_option("--out", lemma_out, "output CSV path");
    lemma->add_flag("--check", lemma_check, "exit 2 if the identity tolerance is breached");

    std::string path_a, path_b;
    auto* m2dist = app.add_subcommand("m2dist", "M2 distance between two path CSV files");
    m2dist->add_option("path1", path_a, "first path CSV")->required();
    m2dist->add_option("path2", path_b, "second path CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*marginal) {
            const auto cfg = load(marginal_opts, skflt::ExperimentKind::marginal, "marginal");
            const auto table = skflt::run_marginal_convergence(cfg);
            return emit(table, cfg.output_path, skflt::check_marginal(table),
                        marginal_opts.check);
        }
        if (*truncation) {
            const auto cfg = load(truncation_opts, skflt::ExperimentKind::truncation,
                                  "truncation");
            const auto table = skflt::run_truncation_study(cfg);
            return emit(table, cfg.output_path, skflt::check_truncation(table),
                        truncation_opts.check);
        }
        if (*dependence) {
            const auto cfg = load(dependence_opts, skflt::ExperimentKind::dependence,
                                  "dependence");
            const auto table = skflt::run_dependence_diagnostics(cfg);
            return emit(table, cfg.output_path, skflt::check_dependence(table),
                        dependence_opts.check);
        }
        if (*lemma) {
            const auto summary = skflt::run_lemma_suite(lemma_seed, lemma_cases);
            return emit(skflt::lemma_summary_table(summary), lemma_out,
                        skflt::check_lemma(summary), lemma_check);
        }
        if (*m2dist) {
            const auto x1 = skflt::read_path_csv_file(path_a);
            const auto x2 = skflt::read_path_csv_file(path_b);
            std::cout << skflt::format_double(skflt::m2_distance(x1, x2)) << "\n";
            return 0;
        }
    } catch (const skflt::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "skflt/innovations.hpp"
#include "skflt/levy_limit.hpp"
#include "skflt/moving_average.hpp"
#include "skflt/tail_model.hpp"

namespace skflt {

enum class ExperimentKind { marginal, truncation, dependence, lemma };

/// Thrown on any configuration inconsistency; the message names the violated
/// condition. The CLI maps it to exit code 1.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::lemma;
    TailParams tail = TailParams::make(1.0, 0.5, 1.0);
    InnovationModel innovation = InnovationModel::iid(tail);
    CoefficientModel coefficients = CoefficientModel::deterministic({1.0});
    std::size_t n = 1000;
    std::size_t reps = 100;
    std::vector<std::size_t> q_grid;
    std::vector<std::size_t> k_grid;
    std::vector<double> u_grid;   // truncation levels for the small-jump check
    std::vector<double> x_grid;   // exceedance levels for the anti-clustering check
    std::vector<double> t_grid;   // marginal evaluation times, subset of (0,1]
    double eps = 0.25;            // threshold for the small-jump check
    std::uint64_t seed = 1;
    std::string output_path;
    std::size_t cases = 1000;           // lemma suite instances
    std::size_t levy_steps = 100;       // grid of the sampled limit path
    std::size_t cf_mixture_draws = 20000;
    std::size_t ma_order = 0;           // materialized filter length; 0 = automatic

    /// Parses the JSON document (field names match the struct, snake_case)
    /// and revalidates every module-level invariant plus the moment and
    /// symmetry hypotheses behind the stable limit. Throws ConfigError
    /// naming the first violated condition.
    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig from_file(const std::string& filename);

    void validate() const;
};

/// Rows of already formatted cells; every float is rendered with 17
/// significant digits so reruns are byte-identical.
struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void write_csv(std::ostream& out) const;
    void write_csv_file(const std::string& filename) const;
    std::string csv_text() const;

    /// Column index by name; throws if absent.
    std::size_t column(const std::string& name) const;
    double number_at(std::size_t row, const std::string& name) const;
};

/// Marginal distribution check of the functional limit: per t in t_grid,
/// compares the empirical characteristic function of V_n(t) against the
/// limit CF of C~ V(t) on the 21-point grid u in [-2,2], and runs a
/// two-sample KS test against directly sampled limit marginals.
ResultTable run_marginal_convergence(const ExperimentConfig& config);

/// Truncation negligibility: per q in q_grid, the M2 distance between the
/// q-truncated process and the long materialized filter built from the same
/// innovations and coefficients; reports median and 0.9-quantile over
/// replicates plus the analytic bound on the unmaterialized remainder.
ResultTable run_truncation_study(const ExperimentConfig& config);

/// Test seam: the truncation study with a custom innovation source (used to
/// verify that both processes of a replicate share one window).
using InnovationSource =
    std::function<InnovationWindow(const InnovationModel&, std::size_t, std::size_t, std::uint64_t)>;
ResultTable run_truncation_study_with_source(const ExperimentConfig& config,
                                             const InnovationSource& source);

/// Dependence diagnostics: anti-clustering estimates over k_grid x x_grid
/// (with the closed-form column for IID innovations) and small-jump
/// probabilities over u_grid.
ResultTable run_dependence_diagnostics(const ExperimentConfig& config);

struct LemmaSummary {
    std::size_t cases = 0;
    std::size_t passes = 0;
    double max_rel_error = 0.0;
};

/// Randomized identity suite for the telescoping decompositions (filter
/// order <= 10, n <= 100, Pareto innovations), all three cases per instance.
LemmaSummary run_lemma_suite(std::uint64_t seed, std::size_t cases);
ResultTable lemma_summary_table(const LemmaSummary& summary);

/// Acceptance-threshold checks used by the CLI's --check flag. Returns an
/// empty string when the table passes, otherwise the failed condition.
std::string check_marginal(const ResultTable& table);
std::string check_truncation(const ResultTable& table);
std::string check_dependence(const ResultTable& table);
std::string check_lemma(const LemmaSummary& summary);

}  // namespace skflt

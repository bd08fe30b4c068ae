#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "skflt/innovations.hpp"
#include "skflt/random.hpp"
#include "skflt/step_path.hpp"

namespace skflt {

/// Nonnegative scalar law used for pattern scales and geometric weights.
struct ScalarLaw {
    enum class Kind { constant, uniform };

    Kind kind = Kind::constant;
    double a = 1.0;  // constant value, or lower uniform bound
    double b = 1.0;  // upper uniform bound

    static ScalarLaw constant(double value);
    static ScalarLaw uniform(double lo, double hi);  // requires 0 <= lo < hi

    double sample(Rng& rng) const;
    double mean() const;
    double moment(double order) const;  // E X^order, order > 0
    double max_value() const { return b; }
};

/// Coefficient models for the moving-average filter. All built-in kinds
/// produce a.s. nonnegative coefficient sequences, so every realization
/// keeps its partial sums between zero and the total sum. The delta moment
/// condition sum_j E|C_j|^delta < infinity is certified analytically per
/// kind at construction; mixed-sign user lists are accepted only through
/// the Deterministic kind and only when they pass validate_sandwich.
struct CoefficientModel {
    enum class Kind { deterministic, scaled_pattern, geometric_random };

    Kind kind = Kind::deterministic;
    std::vector<double> pattern;  // coefficient list or pattern
    ScalarLaw law;                // scale law / weight law
    double theta = 0.5;           // geometric ratio
    double delta = 1.0;           // moment exponent in (0,1]
    std::optional<double> gamma;    // extra exponent for alpha < 1
    std::optional<double> r_order;  // moment order for alpha in [1,2)

    static CoefficientModel deterministic(std::vector<double> coeffs, double delta = 1.0);
    static CoefficientModel scaled_pattern(std::vector<double> pattern, const ScalarLaw& scale_law,
                                           double delta = 1.0);
    static CoefficientModel geometric_random(double theta, const ScalarLaw& weight_law,
                                             double delta = 1.0);

    bool infinite_order() const { return kind == Kind::geometric_random; }

    /// sum_j E|C_j|^delta, finite for every built-in kind.
    double delta_moment_sum() const;

    /// True when E (sum_j |C_j|)^r < infinity is certified; all built-in
    /// descriptors are bounded, so any finite r is certified.
    bool certifies_r_moment(double r) const;

    /// Expected coefficient mass beyond the first `len` lags (exact for
    /// degenerate weight laws; the mean tail otherwise). Zero for finite
    /// kinds.
    double mean_tail_beyond(std::size_t len) const;

    /// Materialized length used by default when a finite filter stands in
    /// for the infinite-order model.
    std::size_t default_order() const;
};

/// Deterministic given seed; length `count`.
std::vector<double> sample_coefficients(const CoefficientModel& model, std::size_t count,
                                        std::uint64_t seed);

/// True iff 0 <= (sum_{i<=s} c_i) / (sum_i c_i) <= 1 for every s. The
/// all-zero list validates by convention (the zero process trivially
/// satisfies everything downstream).
bool validate_sandwich(std::span<const double> coeffs);

/// Tail mass C'_q = sum_{i>=q} C_i of a realized coefficient sequence,
/// extending beyond the materialized list with the model's analytic tail.
double tail_sum(const CoefficientModel& model, std::span<const double> coeffs, std::size_t q);

/// Draw from the law of the total sum C = sum_i C_i.
double sample_total_sum(const CoefficientModel& model, Rng& rng);

/// X_t = sum_{i=0}^{q} c_i Z_{t-i} for t = 1..n; requires prehistory >= q.
std::vector<double> build_finite_ma(std::span<const double> coeffs, const InnovationWindow& window);

/// The q-truncated process X_t^q = sum_{j<q} c_j Z_{t-j} + C'_q Z_{t-q},
/// with the full tail mass attached at lag q.
std::vector<double> build_truncated_ma(const CoefficientModel& model,
                                       std::span<const double> coeffs, std::size_t q,
                                       const InnovationWindow& window);

/// V_n(t) = (1/a_n) sum_{i <= floor(nt)} X_i as a step path with jumps at
/// i/n; value 0 on [0, 1/n).
StepPath partial_sum_path(std::span<const double> x, double a_n, std::size_t n);

/// Exact telescoping decompositions of C * (partial sum of Z) minus the
/// matching partial sum of the filtered process, all divided by a_n.
/// With S(a,b) = sum_{s=a..b} C_s (empty when a > b, indices clamped to
/// [0,q]), the identities are
///   case 1 (k < q):        lhs = H - G - T with
///       H = sum_{u=0}^{k-1} Z_{k-u} S(u+1, q) / a_n,
///       G = sum_{u=q-k}^{q-1} Z_{-u} S(u+1, q) / a_n,
///       T = sum_{u=0}^{q-k-1} Z_{-u} S(u+1, u+k) / a_n;
///   case 2 (k >= q):       lhs = H - G with
///       H = sum_{u=0}^{q-1} Z_{k-u} S(u+1, q) / a_n,
///       G = sum_{u=0}^{q-1} Z_{-u} S(u+1, q) / a_n;
///   case 3 (q <= k <= n-q): lhs' = -G - T with the longer X-sum
///       lhs' = sum_{i<=k} C Z_i / a_n - sum_{i<=k+q} X_i / a_n,
///       T = sum_{u=1}^{q} Z_{k+u} S(0, q-u) / a_n.
enum class LemmaCase { one, two, three };

struct LemmaDecomposition {
    double lhs = 0.0;
    double h = 0.0;
    double g = 0.0;
    double t = 0.0;
    LemmaCase which = LemmaCase::one;

    double rhs() const;
};

LemmaDecomposition lemma_decomposition(std::span<const double> coeffs,
                                       const InnovationWindow& window, std::size_t n,
                                       std::size_t k, double a_n, LemmaCase which);

}  // namespace skflt

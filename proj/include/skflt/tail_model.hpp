#pragma once

#include <cstdint>

namespace skflt {

/// Two-sided Pareto law with regularly varying tails of index alpha:
/// the unshifted magnitude satisfies P(|Y| > x) = (scale/x)^alpha for
/// x >= scale, with P(Y > 0) = p and P(Y < 0) = r = 1 - p. The sampled
/// variable is Z = Y - shift, where the centering shift is chosen so that
///   alpha in (1,2):  E Z = 0        (shift = (p-r)*alpha*scale/(alpha-1))
///   alpha  = 1:      Z symmetric    (requires p = r = 1/2, shift = 0)
///   alpha in (0,1):  shift = 0.
struct TailParams {
    double alpha;
    double p;
    double r;
    double scale;
    double shift;

    /// Validates ranges and derives r and the centering shift.
    /// Throws std::invalid_argument naming the violated condition.
    static TailParams make(double alpha, double p, double scale);
};

/// Inverse-CDF draw: sign from u2 (positive iff u2 < p), magnitude
/// scale * u1^{-1/alpha}, then centering. u1 in (0,1), u2 in [0,1).
double sample_two_sided_pareto(const TailParams& params, double u1, double u2);

/// a_n = scale * n^{1/alpha}; satisfies n * P(|Y| > a_n) = 1 exactly.
double norming_constant(const TailParams& params, std::uint64_t n);

/// P(|Y| > x) for the unshifted magnitude law (1 for x below scale).
double magnitude_tail_probability(const TailParams& params, double x);

/// P(|Z| > c) for the actual (centered) law.
double abs_tail_probability(const TailParams& params, double c);

/// CDF and quantile of the centered law Z.
double cdf(const TailParams& params, double z);
double quantile(const TailParams& params, double prob);

/// E[Y 1{|Y| <= cutoff}] for the unshifted law, in closed form:
/// (p-r) * alpha * scale^alpha / (1-alpha) * (cutoff^{1-alpha} - scale^{1-alpha})
/// for alpha != 1, and 0 for the symmetric alpha = 1 law.
/// Returns 0 when cutoff < scale (no mass below the cutoff).
double truncated_first_moment(const TailParams& params, double cutoff);

/// E[Y 1{a <= Y <= b}] for the unshifted law, closed form.
double interval_first_moment(const TailParams& params, double a, double b);

/// E[Z 1{|Z| <= c}] for the centered law (equals truncated_first_moment
/// when shift = 0).
double truncated_first_moment_centered(const TailParams& params, double c);

/// Limit of n E[(Y/a_n) 1{|Y| <= a_n}]: (p-r)*alpha/(1-alpha), alpha != 1.
/// Throws for alpha = 1 (the constant is not defined by this formula).
double karamata_limit(const TailParams& params);

/// Companion constant for the complementary truncation,
/// lim n E[(Y/a_n) 1{|Y| > a_n}] = (p-r)*alpha/(alpha-1), alpha > 1 only.
double karamata_tail_limit(const TailParams& params);

/// Chambers-Mallows-Stuck draw from the standard stable law S_alpha(1, beta, 0)
/// in the 1-parameterization: log CF = -|u|^alpha (1 - i beta tan(pi alpha/2) sgn u)
/// for alpha != 1, and -|u| for alpha = 1 (beta must then be 0).
/// u is uniform(0,1), e is exponential(1).
double sample_stable_standard(double alpha, double beta, double u, double e);

}  // namespace skflt

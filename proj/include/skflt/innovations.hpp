#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "skflt/tail_model.hpp"

namespace skflt {

/// A mean/standard-error pair from a Monte Carlo estimator.
struct McEstimate {
    double estimate;
    double std_error;
};

/// Strictly stationary innovation generators sharing an exact marginal law.
///
/// IID: independent draws from the tail law.
/// GaussCopulaAr: probability-integral transform of a stationary Gaussian
/// AR(1), so the marginal equals the tail law exactly while the latent
/// lag-1 correlation is ar_coefficient. The latent chain starts from its
/// stationary N(0,1) law, never from an arbitrary state. Gaussian AR(1) is
/// geometrically rho-mixing and its extremes are asymptotically independent,
/// which is why it serves as the weakly dependent exemplar; mixing rates are
/// documented, not estimated.
struct InnovationModel {
    enum class Kind { iid, gauss_copula_ar };

    Kind kind;
    TailParams tail;
    double ar_coefficient = 0.0;

    static InnovationModel iid(const TailParams& tail);
    static InnovationModel gauss_copula_ar(const TailParams& tail, double ar_coefficient);
};

/// Innovations Z_i for i = 1-h, ..., n; the prehistory h feeds moving-average
/// filters that look back up to h lags.
struct InnovationWindow {
    std::size_t length = 0;   // n
    std::size_t prehistory = 0;  // h
    std::vector<double> data;    // size n + h; data.front() is Z_{1-h}

    double at(std::ptrdiff_t i) const {
        return data[static_cast<std::size_t>(i - 1 + static_cast<std::ptrdiff_t>(prehistory))];
    }
};

/// Deterministic given (model, n, prehistory, seed).
InnovationWindow generate(const InnovationModel& model, std::size_t n, std::size_t prehistory,
                          std::uint64_t seed);

/// Monte Carlo estimate of the anti-clustering statistic
///   n * sum_{i=1}^{floor(n/k)} P(|Z_0|/a_n > x, |Z_i|/a_n > x),
/// averaged over all n window starts per replicate (valid by stationarity).
McEstimate dprime_estimate(const InnovationModel& model, std::size_t n, std::size_t k, double x,
                           std::size_t reps, std::uint64_t seed);

/// Closed form of the same statistic for IID innovations:
/// n * floor(n/k) * P(|Z| > a_n x)^2.
double dprime_closed_form_iid(const InnovationModel& model, std::size_t n, std::size_t k,
                              double x);

/// Monte Carlo estimate of the vanishing-small-values probability
///   P[ max_{1<=k<=n} | sum_{i<=k} ( (Z_i/a_n) 1{|Z_i|/a_n <= u}
///                                  - E (Z_i/a_n) 1{|Z_i|/a_n <= u} ) | > eps ],
/// with the truncated mean taken from the analytic tail law.
McEstimate vsv_estimate(const InnovationModel& model, std::size_t n, double u, double eps,
                        std::size_t reps, std::uint64_t seed);

/// Monte Carlo estimate of
///   E[ max_{1<=l<=n} | (1/a_n) sum_{i<=l} Z_{i-j} 1{|Z_{i-j}| <= a_n} |^r ];
/// by stationarity the value does not depend on j.
McEstimate truncated_max_moment_estimate(const InnovationModel& model, std::size_t n,
                                         std::size_t j, double r_order, std::size_t reps,
                                         std::uint64_t seed);

/// Standard normal CDF (used by the copula transform).
double normal_cdf(double x);

}  // namespace skflt

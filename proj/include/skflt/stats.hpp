#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace skflt {

/// Two-sample Kolmogorov-Smirnov statistic sup |F1 - F2| (inputs copied and
/// sorted internally).
inline double ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double nx = static_cast<double>(x.size()), ny = static_cast<double>(y.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= v) ++i;
        while (j < y.size() && y[j] <= v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
    }
    return d;
}

/// One-sample KS statistic against an exact CDF.
inline double ks_one_sample(std::span<const double> sample,
                            const std::function<double(double)>& cdf) {
    if (sample.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
    std::vector<double> x(sample.begin(), sample.end());
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = cdf(x[i]);
        d = std::max(d, std::max(f - static_cast<double>(i) / n,
                                 static_cast<double>(i + 1) / n - f));
    }
    return d;
}

/// Asymptotic KS critical values: c(level) * sqrt((n+m)/(n m)) two-sample,
/// c(level)/sqrt(n) one-sample, with c(level) = sqrt(-ln(level/2)/2).
inline double ks_critical_coefficient(double level) {
    return std::sqrt(-0.5 * std::log(level / 2.0));
}

inline double ks_two_sample_critical(double level, std::size_t n, std::size_t m) {
    const double nn = static_cast<double>(n), mm = static_cast<double>(m);
    return ks_critical_coefficient(level) * std::sqrt((nn + mm) / (nn * mm));
}

inline double ks_one_sample_critical(double level, std::size_t n) {
    return ks_critical_coefficient(level) / std::sqrt(static_cast<double>(n));
}

struct MeanSe {
    double mean;
    double se;
};

inline MeanSe mean_and_se(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("mean_and_se: empty input");
    double sum = 0.0;
    for (double v : values) sum += v;
    const double n = static_cast<double>(values.size());
    const double mean = sum / n;
    if (values.size() == 1) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

inline double median_sorted(std::span<const double> sorted) {
    const std::size_t n = sorted.size();
    if (n == 0) throw std::invalid_argument("median: empty input");
    return (n % 2 == 1) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

inline double quantile_sorted(std::span<const double> sorted, double prob) {
    if (sorted.empty()) throw std::invalid_argument("quantile: empty input");
    const double pos = prob * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace skflt

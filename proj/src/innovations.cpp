#include "skflt/innovations.hpp"

#include <cmath>
#include <stdexcept>

#include "skflt/random.hpp"

namespace skflt {

double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.7071067811865475244); }

InnovationModel InnovationModel::iid(const TailParams& tail) {
    return InnovationModel{Kind::iid, tail, 0.0};
}

InnovationModel InnovationModel::gauss_copula_ar(const TailParams& tail, double ar_coefficient) {
    if (!(ar_coefficient > -1.0 && ar_coefficient < 1.0))
        throw std::invalid_argument("InnovationModel: ar_coefficient in (-1,1) required");
    return InnovationModel{Kind::gauss_copula_ar, tail, ar_coefficient};
}

InnovationWindow generate(const InnovationModel& model, std::size_t n, std::size_t prehistory,
                          std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("generate: n >= 1 required");
    InnovationWindow w;
    w.length = n;
    w.prehistory = prehistory;
    w.data.resize(n + prehistory);
    Rng rng(seed);
    if (model.kind == InnovationModel::Kind::iid) {
        for (double& z : w.data) {
            const double u1 = rng.uniform_open();
            const double u2 = rng.uniform_open();
            z = sample_two_sided_pareto(model.tail, u1, u2);
        }
    } else {
        const double phi = model.ar_coefficient;
        const double innov_sd = std::sqrt(1.0 - phi * phi);
        double g = rng.normal();  // stationary start
        w.data[0] = quantile(model.tail, normal_cdf(g));
        for (std::size_t i = 1; i < w.data.size(); ++i) {
            g = phi * g + innov_sd * rng.normal();
            w.data[i] = quantile(model.tail, normal_cdf(g));
        }
    }
    return w;
}

McEstimate dprime_estimate(const InnovationModel& model, std::size_t n, std::size_t k, double x,
                           std::size_t reps, std::uint64_t seed) {
    if (k == 0 || k > n) throw std::invalid_argument("dprime_estimate: 1 <= k <= n required");
    if (!(x > 0.0)) throw std::invalid_argument("dprime_estimate: x > 0 required");
    if (reps == 0) throw std::invalid_argument("dprime_estimate: reps >= 1 required");
    const std::size_t lag_span = n / k;
    const double threshold = norming_constant(model.tail, n) * x;

    double sum = 0.0, sum_sq = 0.0;
    std::vector<std::size_t> exceed;
    for (std::size_t rep = 0; rep < reps; ++rep) {
        const InnovationWindow w =
            generate(model, n + lag_span, 0, derive_stream(seed, "dprime", rep));
        exceed.clear();
        for (std::size_t t = 0; t < w.data.size(); ++t) {
            if (std::abs(w.data[t]) > threshold) exceed.push_back(t);
        }
        // pairs (t, t+i) with start t <= n and lag 1 <= i <= lag_span; the
        // average over the n starts estimates the lag sum by stationarity
        std::size_t pairs = 0;
        for (std::size_t a = 0; a < exceed.size(); ++a) {
            if (exceed[a] >= n) break;
            for (std::size_t b = a + 1; b < exceed.size(); ++b) {
                if (exceed[b] - exceed[a] > lag_span) break;
                ++pairs;
            }
        }
        const double est = static_cast<double>(pairs);  // n * (pairs / n)
        sum += est;
        sum_sq += est * est;
    }
    const double mean = sum / static_cast<double>(reps);
    double se = 0.0;
    if (reps > 1) {
        const double var =
            (sum_sq - sum * sum / static_cast<double>(reps)) / static_cast<double>(reps - 1);
        se = std::sqrt(std::max(var, 0.0) / static_cast<double>(reps));
    }
    return McEstimate{mean, se};
}

double dprime_closed_form_iid(const InnovationModel& model, std::size_t n, std::size_t k,
                              double x) {
    const double prob = abs_tail_probability(model.tail, norming_constant(model.tail, n) * x);
    return static_cast<double>(n) * static_cast<double>(n / k) * prob * prob;
}

McEstimate vsv_estimate(const InnovationModel& model, std::size_t n, double u, double eps,
                        std::size_t reps, std::uint64_t seed) {
    if (!(u > 0.0 && u <= 1.0)) throw std::invalid_argument("vsv_estimate: u in (0,1] required");
    if (!(eps > 0.0)) throw std::invalid_argument("vsv_estimate: eps > 0 required");
    if (reps == 0) throw std::invalid_argument("vsv_estimate: reps >= 1 required");
    const double a_n = norming_constant(model.tail, n);
    const double cutoff = a_n * u;
    const double trunc_mean = truncated_first_moment_centered(model.tail, cutoff) / a_n;

    std::size_t hits = 0;
    for (std::size_t rep = 0; rep < reps; ++rep) {
        const InnovationWindow w = generate(model, n, 0, derive_stream(seed, "vsv", rep));
        double partial = 0.0;
        for (double z : w.data) {
            const double term = (std::abs(z) <= cutoff) ? z / a_n : 0.0;
            partial += term - trunc_mean;
            if (std::abs(partial) > eps) {
                ++hits;
                break;
            }
        }
    }
    const double phat = static_cast<double>(hits) / static_cast<double>(reps);
    const double se = std::sqrt(phat * (1.0 - phat) / static_cast<double>(reps));
    return McEstimate{phat, se};
}

McEstimate truncated_max_moment_estimate(const InnovationModel& model, std::size_t n,
                                         std::size_t j, double r_order, std::size_t reps,
                                         std::uint64_t seed) {
    if (reps == 0) throw std::invalid_argument("truncated_max_moment_estimate: reps >= 1 required");
    if (!(r_order >= 1.0))
        throw std::invalid_argument("truncated_max_moment_estimate: r_order >= 1 required");
    const double a_n = norming_constant(model.tail, n);

    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t rep = 0; rep < reps; ++rep) {
        const InnovationWindow w = generate(model, n, j, derive_stream(seed, "maxmom", rep));
        double partial = 0.0, max_abs = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            const double z = w.at(static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(j));
            if (std::abs(z) <= a_n) partial += z / a_n;
            max_abs = std::max(max_abs, std::abs(partial));
        }
        const double v = std::pow(max_abs, r_order);
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / static_cast<double>(reps);
    double se = 0.0;
    if (reps > 1) {
        const double var =
            (sum_sq - sum * sum / static_cast<double>(reps)) / static_cast<double>(reps - 1);
        se = std::sqrt(std::max(var, 0.0) / static_cast<double>(reps));
    }
    return McEstimate{mean, se};
}

}  // namespace skflt

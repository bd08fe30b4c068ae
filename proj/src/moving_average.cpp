#include "skflt/moving_average.hpp"

#include <cmath>
#include <stdexcept>

namespace skflt {

ScalarLaw ScalarLaw::constant(double value) {
    if (!(value >= 0.0)) throw std::invalid_argument("ScalarLaw: constant value must be >= 0");
    return ScalarLaw{Kind::constant, value, value};
}

ScalarLaw ScalarLaw::uniform(double lo, double hi) {
    if (!(lo >= 0.0 && hi > lo)) throw std::invalid_argument("ScalarLaw: need 0 <= lo < hi");
    return ScalarLaw{Kind::uniform, lo, hi};
}

double ScalarLaw::sample(Rng& rng) const {
    if (kind == Kind::constant) return a;
    return a + (b - a) * rng.uniform_open();
}

double ScalarLaw::mean() const {
    if (kind == Kind::constant) return a;
    return 0.5 * (a + b);
}

double ScalarLaw::moment(double order) const {
    if (!(order > 0.0)) throw std::invalid_argument("ScalarLaw::moment: order > 0 required");
    if (kind == Kind::constant) return std::pow(a, order);
    // E X^s = (b^{s+1} - a^{s+1}) / ((s+1)(b-a))
    return (std::pow(b, order + 1.0) - std::pow(a, order + 1.0)) / ((order + 1.0) * (b - a));
}

namespace {

void check_delta(double delta) {
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::invalid_argument("CoefficientModel: delta in (0,1] required");
}

}  // namespace

CoefficientModel CoefficientModel::deterministic(std::vector<double> coeffs, double delta) {
    check_delta(delta);
    if (coeffs.empty()) throw std::invalid_argument("CoefficientModel: empty coefficient list");
    if (!validate_sandwich(coeffs))
        throw std::invalid_argument("CoefficientModel: coefficients fail the sandwich condition");
    CoefficientModel m;
    m.kind = Kind::deterministic;
    m.pattern = std::move(coeffs);
    m.delta = delta;
    return m;
}

CoefficientModel CoefficientModel::scaled_pattern(std::vector<double> pattern,
                                                  const ScalarLaw& scale_law, double delta) {
    check_delta(delta);
    if (pattern.empty()) throw std::invalid_argument("CoefficientModel: empty pattern");
    for (double c : pattern) {
        if (!(c >= 0.0))
            throw std::invalid_argument("CoefficientModel: pattern entries must be >= 0");
    }
    CoefficientModel m;
    m.kind = Kind::scaled_pattern;
    m.pattern = std::move(pattern);
    m.law = scale_law;
    m.delta = delta;
    return m;
}

CoefficientModel CoefficientModel::geometric_random(double theta, const ScalarLaw& weight_law,
                                                    double delta) {
    check_delta(delta);
    if (!(theta > 0.0 && theta < 1.0))
        throw std::invalid_argument("CoefficientModel: theta in (0,1) required");
    CoefficientModel m;
    m.kind = Kind::geometric_random;
    m.law = weight_law;
    m.theta = theta;
    m.delta = delta;
    return m;
}

double CoefficientModel::delta_moment_sum() const {
    switch (kind) {
        case Kind::deterministic: {
            double s = 0.0;
            for (double c : pattern) s += std::pow(std::abs(c), delta);
            return s;
        }
        case Kind::scaled_pattern: {
            double s = 0.0;
            for (double c : pattern) s += std::pow(c, delta);
            return law.moment(delta) * s;
        }
        case Kind::geometric_random:
            // sum_j E W^delta theta^{j delta}
            return law.moment(delta) / (1.0 - std::pow(theta, delta));
    }
    return 0.0;
}

bool CoefficientModel::certifies_r_moment(double r) const {
    if (!(r >= 1.0)) return false;
    // every built-in law is bounded, so (sum |C_j|)^r has all moments as long
    // as the coefficient mass is summable (finite list or geometric decay)
    return std::isfinite(law.max_value());
}

double CoefficientModel::mean_tail_beyond(std::size_t len) const {
    if (kind != Kind::geometric_random) return 0.0;
    return law.mean() * std::pow(theta, static_cast<double>(len)) / (1.0 - theta);
}

std::size_t CoefficientModel::default_order() const {
    if (kind != Kind::geometric_random) return pattern.size();
    // enough lags that the expected remainder is below double round-off
    const double tail_unit = law.mean() / (1.0 - theta);
    std::size_t len = 1;
    while (tail_unit * std::pow(theta, static_cast<double>(len)) > 1e-18 && len < 4096) ++len;
    return len;
}

std::vector<double> sample_coefficients(const CoefficientModel& model, std::size_t count,
                                        std::uint64_t seed) {
    if (count == 0) throw std::invalid_argument("sample_coefficients: count >= 1 required");
    std::vector<double> out(count, 0.0);
    Rng rng(seed);
    switch (model.kind) {
        case CoefficientModel::Kind::deterministic:
            for (std::size_t i = 0; i < count && i < model.pattern.size(); ++i)
                out[i] = model.pattern[i];
            break;
        case CoefficientModel::Kind::scaled_pattern: {
            const double s = model.law.sample(rng);
            for (std::size_t i = 0; i < count && i < model.pattern.size(); ++i)
                out[i] = s * model.pattern[i];
            break;
        }
        case CoefficientModel::Kind::geometric_random: {
            double power = 1.0;
            for (std::size_t i = 0; i < count; ++i) {
                out[i] = model.law.sample(rng) * power;
                power *= model.theta;
            }
            break;
        }
    }
    return out;
}

bool validate_sandwich(std::span<const double> coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("validate_sandwich: empty list");
    double total = 0.0;
    for (double c : coeffs) total += c;
    if (total == 0.0) {
        // ratio undefined at C = 0; the zero list is accepted by convention,
        // anything else summing to zero has a partial sum outside [0, 0]
        for (double c : coeffs) {
            if (c != 0.0) return false;
        }
        return true;
    }
    double partial = 0.0;
    for (double c : coeffs) {
        partial += c;
        const double ratio = partial / total;
        if (!(ratio >= 0.0 && ratio <= 1.0)) return false;
    }
    return true;
}

double tail_sum(const CoefficientModel& model, std::span<const double> coeffs, std::size_t q) {
    double s = 0.0;
    for (std::size_t i = q; i < coeffs.size(); ++i) s += coeffs[i];
    return s + model.mean_tail_beyond(coeffs.size());
}

double sample_total_sum(const CoefficientModel& model, Rng& rng) {
    switch (model.kind) {
        case CoefficientModel::Kind::deterministic: {
            double s = 0.0;
            for (double c : model.pattern) s += c;
            return s;
        }
        case CoefficientModel::Kind::scaled_pattern: {
            double s = 0.0;
            for (double c : model.pattern) s += c;
            return model.law.sample(rng) * s;
        }
        case CoefficientModel::Kind::geometric_random: {
            const std::size_t len = model.default_order();
            double s = 0.0, power = 1.0;
            for (std::size_t i = 0; i < len; ++i) {
                s += model.law.sample(rng) * power;
                power *= model.theta;
            }
            return s + model.mean_tail_beyond(len);
        }
    }
    return 0.0;
}

std::vector<double> build_finite_ma(std::span<const double> coeffs,
                                    const InnovationWindow& window) {
    if (coeffs.empty()) throw std::invalid_argument("build_finite_ma: empty coefficients");
    const std::size_t q = coeffs.size() - 1;
    if (window.prehistory < q)
        throw std::invalid_argument("build_finite_ma: window prehistory must be >= filter order");
    const std::size_t n = window.length;
    std::vector<double> x(n, 0.0);
    // window.data[h + t - 1] is Z_t; lag j reads Z_{t-j}
    const double* z = window.data.data() + window.prehistory;
    for (std::size_t t = 0; t < n; ++t) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= q; ++j)
            acc += coeffs[j] * z[static_cast<std::ptrdiff_t>(t) - static_cast<std::ptrdiff_t>(j)];
        x[t] = acc;
    }
    return x;
}

std::vector<double> build_truncated_ma(const CoefficientModel& model,
                                       std::span<const double> coeffs, std::size_t q,
                                       const InnovationWindow& window) {
    if (q == 0) throw std::invalid_argument("build_truncated_ma: q >= 1 required");
    std::vector<double> truncated(q + 1, 0.0);
    for (std::size_t j = 0; j < q && j < coeffs.size(); ++j) truncated[j] = coeffs[j];
    truncated[q] = tail_sum(model, coeffs, q);
    return build_finite_ma(truncated, window);
}

StepPath partial_sum_path(std::span<const double> x, double a_n, std::size_t n) {
    if (!(a_n > 0.0)) throw std::invalid_argument("partial_sum_path: a_n > 0 required");
    if (x.size() != n) throw std::invalid_argument("partial_sum_path: need length(X) = n");
    std::vector<double> times(n), values(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += x[i];
        times[i] = static_cast<double>(i + 1) / static_cast<double>(n);
        values[i] = acc / a_n;
    }
    return StepPath{0.0, std::move(times), std::move(values)};
}

double LemmaDecomposition::rhs() const {
    switch (which) {
        case LemmaCase::one:
            return h - g - t;
        case LemmaCase::two:
            return h - g;
        case LemmaCase::three:
            return -g - t;
    }
    return 0.0;
}

LemmaDecomposition lemma_decomposition(std::span<const double> coeffs,
                                       const InnovationWindow& window, std::size_t n,
                                       std::size_t k, double a_n, LemmaCase which) {
    if (coeffs.empty()) throw std::invalid_argument("lemma_decomposition: empty coefficients");
    if (!(a_n > 0.0)) throw std::invalid_argument("lemma_decomposition: a_n > 0 required");
    const std::size_t q = coeffs.size() - 1;
    if (window.prehistory < q || window.length < n)
        throw std::invalid_argument("lemma_decomposition: window too short for filter order");
    if (k < 1 || k > n) throw std::invalid_argument("lemma_decomposition: k in 1..n required");
    switch (which) {
        case LemmaCase::one:
            if (!(k < q))
                throw std::invalid_argument("lemma_decomposition: case 1 requires k < q");
            break;
        case LemmaCase::two:
            if (!(k >= q))
                throw std::invalid_argument("lemma_decomposition: case 2 requires k >= q");
            break;
        case LemmaCase::three:
            if (!(k >= q && k + q <= n))
                throw std::invalid_argument(
                    "lemma_decomposition: case 3 requires q <= k <= n - q");
            break;
    }

    // extended precision keeps the cancellation between the two large sums
    // well below the identity tolerance even for heavy draws
    auto z = [&](std::ptrdiff_t i) { return static_cast<long double>(window.at(i)); };
    auto sum_c = [&](std::ptrdiff_t lo, std::ptrdiff_t hi) {
        long double s = 0.0L;
        const std::ptrdiff_t a = std::max<std::ptrdiff_t>(lo, 0);
        const std::ptrdiff_t b = std::min<std::ptrdiff_t>(hi, static_cast<std::ptrdiff_t>(q));
        for (std::ptrdiff_t i = a; i <= b; ++i) s += coeffs[static_cast<std::size_t>(i)];
        return s;
    };
    const long double total = sum_c(0, static_cast<std::ptrdiff_t>(q));

    auto filtered = [&](std::ptrdiff_t t) {
        long double acc = 0.0L;
        for (std::size_t j = 0; j <= q; ++j) acc += coeffs[j] * z(t - static_cast<std::ptrdiff_t>(j));
        return acc;
    };

    const std::size_t x_upto = (which == LemmaCase::three) ? k + q : k;
    long double z_sum = 0.0L, x_sum = 0.0L;
    for (std::size_t i = 1; i <= k; ++i) z_sum += z(static_cast<std::ptrdiff_t>(i));
    for (std::size_t i = 1; i <= x_upto; ++i) x_sum += filtered(static_cast<std::ptrdiff_t>(i));

    LemmaDecomposition d;
    d.which = which;
    d.lhs = static_cast<double>((total * z_sum - x_sum) / a_n);

    const auto qq = static_cast<std::ptrdiff_t>(q);
    const auto kk = static_cast<std::ptrdiff_t>(k);
    long double h = 0.0L, g = 0.0L, t = 0.0L;
    switch (which) {
        case LemmaCase::one:
            for (std::ptrdiff_t u = 0; u < kk; ++u) h += z(kk - u) * sum_c(u + 1, qq);
            for (std::ptrdiff_t u = qq - kk; u < qq; ++u) g += z(-u) * sum_c(u + 1, qq);
            for (std::ptrdiff_t u = 0; u < qq - kk; ++u) t += z(-u) * sum_c(u + 1, u + kk);
            break;
        case LemmaCase::two:
            for (std::ptrdiff_t u = 0; u < qq; ++u) {
                h += z(kk - u) * sum_c(u + 1, qq);
                g += z(-u) * sum_c(u + 1, qq);
            }
            break;
        case LemmaCase::three:
            for (std::ptrdiff_t u = 0; u < qq; ++u) g += z(-u) * sum_c(u + 1, qq);
            for (std::ptrdiff_t u = 1; u <= qq; ++u) t += z(kk + u) * sum_c(0, qq - u);
            break;
    }
    d.h = static_cast<double>(h / a_n);
    d.g = static_cast<double>(g / a_n);
    d.t = static_cast<double>(t / a_n);
    return d;
}

}  // namespace skflt

#include "skflt/tail_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace skflt {

namespace {

constexpr double kProbTol = 1e-12;

[[noreturn]] void fail(const char* condition) {
    throw std::invalid_argument(std::string("TailParams: violated condition: ") + condition);
}

}  // namespace

TailParams TailParams::make(double alpha, double p, double scale) {
    if (!(alpha > 0.0 && alpha < 2.0)) fail("alpha in (0,2)");
    if (!(scale > 0.0)) fail("scale > 0");
    if (!(p >= 0.0 && p <= 1.0)) fail("p in [0,1]");
    const double r = 1.0 - p;
    double shift = 0.0;
    if (alpha == 1.0) {
        if (std::abs(p - 0.5) > kProbTol) fail("alpha = 1 requires symmetric tails (p = r = 1/2)");
    } else if (alpha > 1.0) {
        // mean of the unshifted law, so the centered law has mean zero
        shift = (p - r) * alpha * scale / (alpha - 1.0);
    }
    return TailParams{alpha, p, r, scale, shift};
}

double sample_two_sided_pareto(const TailParams& params, double u1, double u2) {
    const double magnitude = params.scale * std::pow(u1, -1.0 / params.alpha);
    const double signed_value = (u2 < params.p) ? magnitude : -magnitude;
    return signed_value - params.shift;
}

double norming_constant(const TailParams& params, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("norming_constant: n >= 1 required");
    return params.scale * std::pow(static_cast<double>(n), 1.0 / params.alpha);
}

double magnitude_tail_probability(const TailParams& params, double x) {
    if (x <= params.scale) return 1.0;
    return std::pow(params.scale / x, params.alpha);
}

namespace {

// CDF of the unshifted law Y.
double cdf_unshifted(const TailParams& params, double y) {
    if (y <= -params.scale) return params.r * std::pow(params.scale / -y, params.alpha);
    if (y < params.scale) return params.r;
    return 1.0 - params.p * std::pow(params.scale / y, params.alpha);
}

}  // namespace

double abs_tail_probability(const TailParams& params, double c) {
    if (c < 0.0) return 1.0;
    // |Z| > c  <=>  Y > shift + c or Y < shift - c
    const double upper = 1.0 - cdf_unshifted(params, params.shift + c);
    const double lower = cdf_unshifted(params, params.shift - c);
    return upper + lower;
}

double cdf(const TailParams& params, double z) { return cdf_unshifted(params, z + params.shift); }

double quantile(const TailParams& params, double prob) {
    if (!(prob > 0.0 && prob < 1.0)) throw std::invalid_argument("quantile: prob in (0,1) required");
    const double y = (prob < params.r)
                         ? -params.scale * std::pow(params.r / prob, 1.0 / params.alpha)
                         : params.scale * std::pow(params.p / (1.0 - prob), 1.0 / params.alpha);
    return y - params.shift;
}

double truncated_first_moment(const TailParams& params, double cutoff) {
    if (cutoff < params.scale) return 0.0;
    const double a = params.alpha;
    if (a == 1.0) return 0.0;  // symmetric law
    const double sa = std::pow(params.scale, a);
    return (params.p - params.r) * a * sa / (1.0 - a) *
           (std::pow(cutoff, 1.0 - a) - std::pow(params.scale, 1.0 - a));
}

double interval_first_moment(const TailParams& params, double a, double b) {
    if (b <= a) return 0.0;
    const double al = params.alpha;
    const double sa = std::pow(params.scale, al);
    // int t * dens(t) over [x0, x1] on the positive branch, scale <= x0 <= x1
    auto pos_piece = [&](double x0, double x1) {
        if (al == 1.0) return params.p * sa * std::log(x1 / x0);
        return params.p * al * sa / (1.0 - al) * (std::pow(x1, 1.0 - al) - std::pow(x0, 1.0 - al));
    };
    // negative branch, -x1 <= t <= -x0 with scale <= x0 <= x1 (contributes negatively)
    auto neg_piece = [&](double x0, double x1) {
        if (al == 1.0) return -params.r * sa * std::log(x1 / x0);
        return -params.r * al * sa / (1.0 - al) * (std::pow(x1, 1.0 - al) - std::pow(x0, 1.0 - al));
    };
    double total = 0.0;
    // positive support [scale, inf)
    if (b > params.scale) {
        const double lo = std::max(a, params.scale);
        if (std::isinf(b)) {
            if (al <= 1.0) throw std::invalid_argument("interval_first_moment: divergent upper tail");
            total += params.p * al * sa * std::pow(lo, 1.0 - al) / (al - 1.0);
        } else if (b > lo) {
            total += pos_piece(lo, b);
        }
    }
    // negative support (-inf, -scale]
    if (a < -params.scale) {
        const double hi = std::min(b, -params.scale);
        if (std::isinf(a)) {
            if (al <= 1.0) throw std::invalid_argument("interval_first_moment: divergent lower tail");
            total += -params.r * al * sa * std::pow(-hi, 1.0 - al) / (al - 1.0);
        } else if (hi > a) {
            total += neg_piece(-hi, -a);
        }
    }
    return total;
}

double truncated_first_moment_centered(const TailParams& params, double c) {
    if (c <= 0.0) return 0.0;
    if (params.shift == 0.0) return truncated_first_moment(params, c);
    const double lo = params.shift - c;
    const double hi = params.shift + c;
    const double mass = cdf_unshifted(params, hi) - cdf_unshifted(params, lo);
    return interval_first_moment(params, lo, hi) - params.shift * mass;
}

double karamata_limit(const TailParams& params) {
    if (params.alpha == 1.0)
        throw std::invalid_argument("karamata_limit: undefined for alpha = 1 (drift is 0 there)");
    return (params.p - params.r) * params.alpha / (1.0 - params.alpha);
}

double karamata_tail_limit(const TailParams& params) {
    if (params.alpha <= 1.0)
        throw std::invalid_argument("karamata_tail_limit: requires alpha > 1");
    return (params.p - params.r) * params.alpha / (params.alpha - 1.0);
}

double sample_stable_standard(double alpha, double beta, double u, double e) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw std::invalid_argument("stable: alpha in (0,2]");
    if (!(beta >= -1.0 && beta <= 1.0)) throw std::invalid_argument("stable: beta in [-1,1]");
    const double v = 3.141592653589793238 * (u - 0.5);  // uniform on (-pi/2, pi/2)
    if (alpha == 1.0) {
        if (beta != 0.0) throw std::invalid_argument("stable: alpha = 1 supported only with beta = 0");
        return std::tan(v);
    }
    if (alpha == 2.0) {
        // Gaussian boundary: S_2(1,0,0) = N(0,2)
        return 2.0 * std::sqrt(e) * std::sin(v);
    }
    const double ta = std::tan(1.570796326794896619 * alpha);
    const double bt = beta * ta;
    const double b0 = std::atan(bt) / alpha;
    const double s0 = std::pow(1.0 + bt * bt, 0.5 / alpha);
    const double cv = std::cos(v);
    return s0 * std::sin(alpha * (v + b0)) / std::pow(cv, 1.0 / alpha) *
           std::pow(std::cos(v - alpha * (v + b0)) / e, (1.0 - alpha) / alpha);
}

}  // namespace skflt

#include "skflt/levy_limit.hpp"

#include <cmath>
#include <stdexcept>

#include "skflt/quadrature.hpp"

namespace skflt {

namespace {

using cplx = std::complex<double>;

constexpr double kQuadTol = 1e-11;       // per-piece quadrature tolerance
constexpr double kSeriesCut = 1e-6;      // series region below this |x|
constexpr double kCalibrationTol = 1e-6; // CF agreement required at calibration

// e^{iw} - 1 - iw without cancellation for small |w|.
cplx expi_m1_mi(double w) {
    const double s = std::sin(w);
    const double re = -2.0 * std::pow(std::sin(0.5 * w), 2);  // cos w - 1
    double im;
    if (std::abs(w) < 1e-3) {
        // sin w - w = -w^3/6 (1 - w^2/20 (1 - w^2/42))
        const double w2 = w * w;
        im = -w * w2 / 6.0 * (1.0 - w2 / 20.0 * (1.0 - w2 / 42.0));
    } else {
        im = s - w;
    }
    return cplx(re, im);
}

// int_0^delta (e^{iux} - 1 - iux) alpha x^{-alpha-1} dx via the power series:
// alpha * sum_{k>=2} (iu)^k delta^{k-alpha} / (k! (k-alpha)).
cplx series_core(double u, double alpha, double delta) {
    cplx sum = 0.0;
    cplx iu_pow(1.0, 0.0);
    double factorial = 1.0;
    const cplx iu(0.0, u);
    for (int k = 1; k <= 18; ++k) {
        iu_pow *= iu;
        factorial *= k;
        if (k >= 2) {
            sum += iu_pow * (std::pow(delta, k - alpha) / (factorial * (k - alpha)));
        }
    }
    return alpha * sum;
}

// I(u) = int_0^inf (e^{iux} - 1 - iux 1{x<=1}) alpha x^{-alpha-1} dx for u > 0.
cplx one_sided_exponent(double u, double alpha) {
    // compensated core on (0,1]
    cplx core = series_core(u, alpha, kSeriesCut);
    core += integrate_adaptive<cplx>(
        [&](double x) { return expi_m1_mi(u * x) * alpha * std::pow(x, -alpha - 1.0); },
        kSeriesCut, 1.0, kQuadTol);

    // tail: int_1^inf (e^{iux} - 1) alpha x^{-alpha-1} dx
    //     = -1 + alpha * i e^{iu} int_0^inf e^{-uy} (1 + iy)^{-alpha-1} dy,
    // the contour rotated onto 1 + iy where the integrand decays like e^{-uy}
    // with an algebraic envelope; integrate dyadic panels until the remainder
    // bound e^{-uy}/u is negligible.
    cplx rotated = 0.0;
    double lo = 0.0, hi = 1.0;
    while (true) {
        rotated += integrate_adaptive<cplx>(
            [&](double y) {
                return std::exp(-u * y) * std::pow(cplx(1.0, y), -alpha - 1.0);
            },
            lo, hi, kQuadTol);
        // remainder beyond hi is below both e^{-u y}/u and the algebraic tail
        const double remainder =
            std::exp(-u * hi) * std::min(1.0 / u, std::pow(hi, -alpha) / alpha);
        if (remainder < 1e-13 * std::max(1.0, std::abs(rotated))) break;
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) break;
    }
    const cplx tail = -1.0 + alpha * cplx(0.0, 1.0) * std::exp(cplx(0.0, u)) * rotated;
    return core + tail;
}

}  // namespace

double drift_term(double alpha, double p, double r) {
    if (alpha == 1.0) return 0.0;
    return (p - r) * alpha / (1.0 - alpha);
}

CharTriple CharTriple::partial_sum_limit(double alpha, double p, double r) {
    return with_drift(alpha, p, r, drift_term(alpha, p, r));
}

CharTriple CharTriple::with_drift(double alpha, double p, double r, double b) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::invalid_argument("CharTriple: alpha in (0,2) required");
    if (!(p >= 0.0 && r >= 0.0 && std::abs(p + r - 1.0) <= 1e-12))
        throw std::invalid_argument("CharTriple: tail weights must satisfy p + r = 1");
    return CharTriple{alpha, p, r, b};
}

std::complex<double> levy_exponent(const CharTriple& triple, double u) {
    if (u == 0.0) return {0.0, 0.0};
    const cplx one_sided = one_sided_exponent(std::abs(u), triple.alpha);
    cplx psi = cplx(0.0, std::abs(u) * triple.b) + triple.p * one_sided +
               triple.r * std::conj(one_sided);
    return u < 0.0 ? std::conj(psi) : psi;
}

StableIncrementLaw StableIncrementLaw::calibrate(const CharTriple& triple) {
    const double alpha = triple.alpha;
    const double beta = triple.p - triple.r;
    if (alpha == 1.0 && beta != 0.0)
        throw std::invalid_argument(
            "StableIncrementLaw: alpha = 1 increments supported only for p = r");
    const cplx psi1 = levy_exponent(triple, 1.0);
    const double sigma_alpha = -psi1.real();
    if (!(sigma_alpha > 0.0))
        throw std::runtime_error("StableIncrementLaw: nonpositive scale from exponent");
    const double tan_term = (alpha == 1.0) ? 0.0 : std::tan(1.570796326794896619 * alpha);
    const double shift = psi1.imag() - sigma_alpha * beta * tan_term;
    StableIncrementLaw law{alpha, beta, sigma_alpha, shift};

    // the parametric form must reproduce the quadrature exponent; textbook
    // conversion constants are never trusted directly
    for (double u = -2.0; u <= 2.0001; u += 0.25) {
        if (u == 0.0) continue;
        const cplx diff = std::exp(levy_exponent(triple, u)) - std::exp(law.exponent(u));
        if (std::abs(diff) > kCalibrationTol)
            throw std::runtime_error(
                "StableIncrementLaw: calibrated characteristic function mismatch");
    }
    return law;
}

std::complex<double> StableIncrementLaw::exponent(double u) const {
    if (u == 0.0) return {0.0, 0.0};
    const double au = std::abs(u);
    const double tan_term = (alpha == 1.0) ? 0.0 : std::tan(1.570796326794896619 * alpha);
    const double pow_term = std::pow(au, alpha);
    return cplx(-sigma_alpha * pow_term,
                sigma_alpha * pow_term * beta * tan_term * (u > 0.0 ? 1.0 : -1.0) + shift * u);
}

double StableIncrementLaw::sample(double dt, Rng& rng) const {
    const double u = rng.uniform_open();
    const double e = rng.exponential();
    const double standard = sample_stable_standard(alpha, beta, u, e);
    const double scale = std::pow(dt * sigma_alpha, 1.0 / alpha);
    return scale * standard + dt * shift;
}

StepPath sample_levy_path(const CharTriple& triple, std::size_t steps, std::uint64_t seed) {
    return sample_levy_path(StableIncrementLaw::calibrate(triple), steps, seed);
}

StepPath sample_levy_path(const StableIncrementLaw& law, std::size_t steps, std::uint64_t seed) {
    if (steps == 0) throw std::invalid_argument("sample_levy_path: steps >= 1 required");
    Rng rng(seed);
    const double dt = 1.0 / static_cast<double>(steps);
    std::vector<double> times(steps), values(steps);
    double acc = 0.0;
    for (std::size_t i = 0; i < steps; ++i) {
        acc += law.sample(dt, rng);
        times[i] = static_cast<double>(i + 1) / static_cast<double>(steps);
        values[i] = acc;
    }
    return StepPath{0.0, std::move(times), std::move(values)};
}

StepPath sample_scaled_limit(const CharTriple& triple, const CoefficientModel& coefficients,
                             std::size_t steps, std::uint64_t seed) {
    Rng scale_rng(derive_stream(seed, "scaled-limit-coeff", 0));
    const double c_tilde = sample_total_sum(coefficients, scale_rng);
    StepPath path = sample_levy_path(triple, steps, derive_stream(seed, "scaled-limit-path", 0));
    path.initial_value *= c_tilde;
    for (double& v : path.values) v *= c_tilde;
    return path;
}

std::complex<double> empirical_char_function(std::span<const double> samples, double u) {
    if (samples.empty()) throw std::invalid_argument("empirical_char_function: empty sample");
    double re = 0.0, im = 0.0;
    for (double s : samples) {
        re += std::cos(u * s);
        im += std::sin(u * s);
    }
    const auto n = static_cast<double>(samples.size());
    return {re / n, im / n};
}

}  // namespace skflt

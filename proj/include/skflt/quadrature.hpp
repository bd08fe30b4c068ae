#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace skflt {

namespace detail {

// Gauss-Kronrod 7-15 nodes/weights on [-1,1] (symmetric half listed).
inline constexpr double kGk15Nodes[8] = {
    0.0,
    0.2077849550078984676006894037732449,
    0.4058451513773971669066064120769615,
    0.5860872354676911302941448382587296,
    0.7415311855993944398638647732807884,
    0.8648644233597690727897127886409262,
    0.9491079123427585245261896840478513,
    0.9914553711208126392068546975263285,
};
inline constexpr double kGk15Weights[8] = {
    0.2094821410847278280129991748917143,
    0.2044329400752988924141619992346491,
    0.1903505780647854099132564024210137,
    0.1690047266392679028265834265985503,
    0.1406532597155259187451895905102379,
    0.1047900103222501838398763225415180,
    0.0630920926299785532907006631892043,
    0.0229353220105292249637320080589695,
};
inline constexpr double kGauss7Weights[4] = {
    0.4179591836734693877551020408163265,
    0.3818300505051189449503697754889751,
    0.2797053914892766679014677714237796,
    0.1294849661688696932706114326790820,
};

template <class T, class F>
void gk15_panel(F&& f, double a, double b, T& kronrod, T& gauss) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const T fc = f(mid);
    kronrod = kGk15Weights[0] * fc;
    gauss = kGauss7Weights[0] * fc;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kGk15Nodes[i];
        const T fsum = f(mid - dx) + f(mid + dx);
        kronrod += kGk15Weights[i] * fsum;
        if (i % 2 == 0) gauss += kGauss7Weights[i / 2] * fsum;
    }
    kronrod *= half;
    gauss *= half;
}

template <class T, class F>
T integrate_rec(F&& f, double a, double b, double tol, int depth) {
    T k, g;
    gk15_panel<T>(f, a, b, k, g);
    if (std::abs(k - g) <= tol || depth <= 0) return k;
    const double mid = 0.5 * (a + b);
    return integrate_rec<T>(f, a, mid, 0.5 * tol, depth - 1) +
           integrate_rec<T>(f, mid, b, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (G7,K15) to absolute tolerance `abs_tol`.
/// Works for real or complex integrands.
template <class T = double, class F>
T integrate_adaptive(F&& f, double a, double b, double abs_tol, int max_depth = 48) {
    if (!(b >= a)) throw std::invalid_argument("integrate_adaptive: b >= a required");
    if (a == b) return T{};
    return detail::integrate_rec<T>(f, a, b, abs_tol, max_depth);
}

}  // namespace skflt

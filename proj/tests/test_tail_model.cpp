#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "skflt/random.hpp"
#include "skflt/tail_model.hpp"
#include "test_oracles.hpp"

using namespace skflt;

TEST_CASE("TailParams construction enforces the law's invariants") {
    CHECK_THROWS_AS(TailParams::make(2.0, 0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(TailParams::make(0.0, 0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(TailParams::make(0.5, 0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(TailParams::make(0.5, 1.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(TailParams::make(1.0, 0.7, 1.0), std::invalid_argument);

    const auto sym = TailParams::make(1.0, 0.5, 2.0);
    CHECK(sym.shift == 0.0);
    CHECK(sym.r == 0.5);

    const auto low = TailParams::make(0.7, 1.0, 1.0);
    CHECK(low.shift == 0.0);

    // centered so the law has mean zero
    const auto high = TailParams::make(1.5, 1.0, 2.0);
    CHECK(high.shift == doctest::Approx(1.5 * 2.0 / 0.5).epsilon(1e-15));
}

TEST_CASE("two-sided Pareto sampling follows the inverse-CDF algebra") {
    const auto tp = TailParams::make(1.0, 0.5, 1.0);
    CHECK(sample_two_sided_pareto(tp, 0.25, 0.1) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(sample_two_sided_pareto(tp, 0.25, 0.9) == doctest::Approx(-4.0).epsilon(1e-15));
}

TEST_CASE("empirical magnitude tail matches the exact law") {
    const auto tp = TailParams::make(1.0, 0.5, 1.0);
    Rng rng(20240601);
    const std::size_t n = 1'000'000;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double z = sample_two_sided_pareto(tp, rng.uniform_open(), rng.uniform_open());
        if (std::abs(z) > 10.0) ++hits;
    }
    const double phat = static_cast<double>(hits) / static_cast<double>(n);
    // exact tail is 0.1; binomial sigma at 1e6 draws is 3e-4
    CHECK(std::abs(phat - 0.1) < 3.0 * 3e-4);
}

TEST_CASE("sign frequency matches the positive-tail weight") {
    const auto tp = TailParams::make(0.7, 0.7, 1.0);
    Rng rng(99);
    const std::size_t n = 1'000'000;
    std::size_t positive = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (sample_two_sided_pareto(tp, rng.uniform_open(), rng.uniform_open()) > 0.0) ++positive;
    }
    const double phat = static_cast<double>(positive) / static_cast<double>(n);
    const double se = std::sqrt(0.7 * 0.3 / static_cast<double>(n));
    CHECK(std::abs(phat - 0.7) < 3.0 * se);
}

TEST_CASE("norming constants invert the exact tail") {
    CHECK(norming_constant(TailParams::make(0.5, 1.0, 1.0), 100) ==
          doctest::Approx(10000.0).epsilon(1e-15));
    CHECK(norming_constant(TailParams::make(1.0, 0.5, 1.0), 1000) ==
          doctest::Approx(1000.0).epsilon(1e-15));

    const auto tp = TailParams::make(0.7, 1.0, 2.0);
    const double a_n = norming_constant(tp, 10000);
    CHECK(std::abs(1e4 * magnitude_tail_probability(tp, a_n) - 1.0) < 1e-12);

    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        const double alpha = 0.2 + 1.6 * rng.uniform_open();
        const auto params = TailParams::make(alpha, rng.uniform_open(),
                                             0.5 + 2.0 * rng.uniform_open());
        const auto n = static_cast<std::uint64_t>(1 + rng.raw() % 1000000);
        const double an = norming_constant(params, n);
        CHECK(std::abs(static_cast<double>(n) * magnitude_tail_probability(params, an) - 1.0) <
              1e-12);
    }
}

TEST_CASE("truncated first moment agrees with quadrature") {
    const auto one_sided = TailParams::make(0.5, 1.0, 1.0);
    CHECK(truncated_first_moment(one_sided, 4.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(oracle::truncated_first_moment_quad(one_sided, 4.0) ==
          doctest::Approx(1.0).epsilon(1e-8));

    CHECK(truncated_first_moment(one_sided, 1.0) == 0.0);
    CHECK(truncated_first_moment(one_sided, 0.5) == 0.0);
    CHECK(truncated_first_moment(TailParams::make(0.5, 0.5, 1.0), 100.0) == 0.0);

    Rng rng(31337);
    for (int i = 0; i < 100; ++i) {
        const double alpha = 0.2 + 1.6 * rng.uniform_open();
        const auto tp = TailParams::make(alpha, rng.uniform_open(), 0.5 + rng.uniform_open());
        const double cutoff = tp.scale * (1.0 + 20.0 * rng.uniform_open());
        const double exact = truncated_first_moment(tp, cutoff);
        const double quad = oracle::truncated_first_moment_quad(tp, cutoff);
        CHECK(std::abs(exact - quad) <= 1e-8 * (1.0 + std::abs(exact)));
    }
}

TEST_CASE("centered truncated moment handles the shifted laws") {
    const auto sym = TailParams::make(1.0, 0.5, 1.0);
    CHECK(truncated_first_moment_centered(sym, 10.0) == truncated_first_moment(sym, 10.0));

    const auto tp = TailParams::make(1.5, 0.8, 1.0);
    const double c = 7.0;
    // integrate each smooth branch separately (the density jumps at the
    // support edges y = +-scale)
    auto f = [&](double z) { return z * oracle::pareto_density(tp, z + tp.shift); };
    const double pos_lo = std::max(-c, tp.scale - tp.shift);
    const double neg_hi = std::min(c, -tp.scale - tp.shift);
    double direct = 0.0;
    if (c > pos_lo) direct += oracle::simpson(f, pos_lo, c, 100000);
    if (neg_hi > -c) direct += oracle::simpson(f, -c, neg_hi, 100000);
    CHECK(truncated_first_moment_centered(tp, c) == doctest::Approx(direct).epsilon(1e-7));
}

TEST_CASE("Karamata constants") {
    CHECK(karamata_limit(TailParams::make(0.5, 1.0, 1.0)) == doctest::Approx(1.0));
    CHECK(karamata_limit(TailParams::make(0.5, 0.5, 1.0)) == 0.0);
    CHECK(karamata_limit(TailParams::make(1.5, 1.0, 1.0)) == doctest::Approx(-3.0));
    CHECK_THROWS_AS(karamata_limit(TailParams::make(1.0, 0.5, 1.0)), std::invalid_argument);

    CHECK(karamata_tail_limit(TailParams::make(1.5, 1.0, 1.0)) == doctest::Approx(3.0));
    CHECK_THROWS_AS(karamata_tail_limit(TailParams::make(0.5, 1.0, 1.0)), std::invalid_argument);
}

TEST_CASE("Monte Carlo truncated mean converges to the Karamata constant") {
    // alpha = 0.5, p = 1: n E[(Z/a_n) 1{|Z| <= a_n}] = 1 - 1/n exactly
    const auto tp = TailParams::make(0.5, 1.0, 1.0);
    const std::size_t n = 1'000'000;
    const double a_n = norming_constant(tp, n);
    const double analytic = static_cast<double>(n) * truncated_first_moment(tp, a_n) / a_n;
    CHECK(analytic == doctest::Approx(1.0 - 1.0 / static_cast<double>(n)).epsilon(1e-12));

    Rng rng(4242);
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double z = sample_two_sided_pareto(tp, rng.uniform_open(), rng.uniform_open());
        const double v = (std::abs(z) <= a_n) ? z / a_n : 0.0;
        sum += v;
        sum_sq += v * v;
    }
    const double mc = sum;  // estimates n * E[...]
    const double se = std::sqrt(sum_sq - sum * sum / static_cast<double>(n));
    CHECK(std::abs(mc - analytic) < 3.0 * se);
    CHECK(karamata_limit(tp) == doctest::Approx(1.0));
}

TEST_CASE("cdf and quantile invert each other") {
    Rng rng(5150);
    for (int i = 0; i < 40; ++i) {
        const double alpha = std::min(0.3 + 1.6 * rng.uniform_open(), 1.9);
        const auto tp = TailParams::make(alpha, rng.uniform_open(), 0.5 + rng.uniform_open());
        for (int k = 0; k < 20; ++k) {
            const double u = rng.uniform_open();
            if (std::abs(u - tp.r) < 1e-6) continue;  // flat piece of the CDF
            CHECK(cdf(tp, quantile(tp, u)) == doctest::Approx(u).epsilon(1e-12));
        }
    }
}

TEST_CASE("standard stable sampler: Cauchy quartiles and one-sided support") {
    Rng rng(86420);
    const std::size_t n = 100'000;
    std::vector<double> cauchy(n);
    for (auto& v : cauchy)
        v = sample_stable_standard(1.0, 0.0, rng.uniform_open(), rng.exponential());
    std::sort(cauchy.begin(), cauchy.end());
    CHECK(std::abs(cauchy[3 * n / 4] - 1.0) < 0.05);  // tan(pi/4)
    CHECK(std::abs(cauchy[n / 2]) < 0.02);

    bool all_positive = true;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = sample_stable_standard(0.5, 1.0, rng.uniform_open(), rng.exponential());
        if (s <= 0.0) {
            all_positive = false;
            break;
        }
    }
    CHECK(all_positive);
    CHECK_THROWS_AS(sample_stable_standard(1.0, 0.5, 0.5, 1.0), std::invalid_argument);
}

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "skflt/moving_average.hpp"
#include "skflt/random.hpp"

using namespace skflt;

namespace {

const TailParams kSym1 = TailParams::make(1.0, 0.5, 1.0);

InnovationWindow constant_window(std::size_t n, std::size_t h, double value) {
    InnovationWindow w;
    w.length = n;
    w.prehistory = h;
    w.data.assign(n + h, value);
    return w;
}

}  // namespace

TEST_CASE("coefficient sampling per kind") {
    const auto det = CoefficientModel::deterministic({1.0, 0.5, 0.25});
    CHECK(sample_coefficients(det, 3, 1) == std::vector<double>{1.0, 0.5, 0.25});
    CHECK(sample_coefficients(det, 3, 999) == std::vector<double>{1.0, 0.5, 0.25});

    const auto geo = CoefficientModel::geometric_random(0.5, ScalarLaw::constant(1.0));
    const auto g = sample_coefficients(geo, 4, 7);
    CHECK(g == std::vector<double>{1.0, 0.5, 0.25, 0.125});

    const auto sp = CoefficientModel::scaled_pattern({1.0, 1.0}, ScalarLaw::uniform(0.0, 1.0));
    const auto s = sample_coefficients(sp, 2, 11);
    CHECK(s[0] == s[1]);
    CHECK(s[0] > 0.0);
    CHECK(s[0] < 1.0);
    CHECK(sample_coefficients(sp, 2, 11) == s);  // deterministic in the seed
}

TEST_CASE("sandwich validation") {
    CHECK(validate_sandwich(std::vector<double>{1.0, 0.5, 0.25}));
    CHECK_FALSE(validate_sandwich(std::vector<double>{1.0, -2.0, 3.0}));
    CHECK(validate_sandwich(std::vector<double>{0.0, 0.0}));
    CHECK(validate_sandwich(std::vector<double>{-1.0, -0.5}));  // all nonpositive
    CHECK_FALSE(validate_sandwich(std::vector<double>{1.0, -0.5, -0.6}));

    // every built-in realization passes, with and without the attached tail
    Rng seeds(2024);
    const auto geo = CoefficientModel::geometric_random(0.7, ScalarLaw::uniform(0.0, 2.0));
    const auto sp = CoefficientModel::scaled_pattern({0.2, 1.0, 0.4}, ScalarLaw::uniform(0.5, 2.0));
    for (int i = 0; i < 200; ++i) {
        for (const auto& model : {geo, sp}) {
            auto c = sample_coefficients(model, 12, seeds.raw());
            CHECK(validate_sandwich(c));
            const std::size_t q = 1 + i % 10;
            std::vector<double> truncated(c.begin(), c.begin() + q);
            truncated.push_back(tail_sum(model, c, q));
            CHECK(validate_sandwich(truncated));
        }
    }

    CHECK_THROWS_AS(CoefficientModel::deterministic({1.0, -2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("tail sums telescope and use the analytic geometric remainder") {
    const auto geo = CoefficientModel::geometric_random(0.5, ScalarLaw::constant(1.0));
    const auto c = sample_coefficients(geo, 30, 1);
    CHECK(tail_sum(geo, c, 2) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(tail_sum(geo, c, 0) == doctest::Approx(2.0).epsilon(1e-12));

    const auto det = CoefficientModel::deterministic({1.0, 2.0, 3.0});
    const auto dc = sample_coefficients(det, 3, 1);
    CHECK(tail_sum(det, dc, 1) == 5.0);
    CHECK(tail_sum(det, dc, 7) == 0.0);  // beyond the materialized list

    Rng seeds(99);
    for (const auto& model :
         {geo, CoefficientModel::scaled_pattern({1.0, 0.3}, ScalarLaw::uniform(0.0, 1.0))}) {
        const auto cc = sample_coefficients(model, 16, seeds.raw());
        CHECK(tail_sum(model, cc, 0) - (tail_sum(model, cc, 1) + cc[0]) ==
              doctest::Approx(0.0).epsilon(1e-15));
    }
}

TEST_CASE("finite moving averages") {
    const auto w = generate(InnovationModel::iid(kSym1), 32, 4, 2718);

    const auto identity = build_finite_ma(std::vector<double>{1.0}, w);
    for (std::size_t t = 1; t <= 32; ++t)
        CHECK(identity[t - 1] == w.at(static_cast<std::ptrdiff_t>(t)));

    const auto lag = build_finite_ma(std::vector<double>{0.0, 1.0}, w);
    for (std::size_t t = 1; t <= 32; ++t)
        CHECK(lag[t - 1] == w.at(static_cast<std::ptrdiff_t>(t) - 1));

    const auto ones = constant_window(8, 1, 1.0);
    const auto doubled = build_finite_ma(std::vector<double>{1.0, 1.0}, ones);
    for (double x : doubled) CHECK(x == 2.0);

    CHECK_THROWS_AS(build_finite_ma(std::vector<double>{1.0, 1.0, 1.0, 1.0, 1.0, 1.0}, w),
                    std::invalid_argument);
}

TEST_CASE("filter linearity") {
    const auto w = generate(InnovationModel::iid(TailParams::make(0.8, 0.6, 1.0)), 64, 3, 321);
    const std::vector<double> c1{0.2, 0.7, 0.1}, c2{1.0, 0.0, 0.5};
    const double a = 1.7, b = -0.4;
    std::vector<double> mix(3);
    for (int i = 0; i < 3; ++i) mix[i] = a * c1[i] + b * c2[i];
    const auto lhs = build_finite_ma(mix, w);
    const auto x1 = build_finite_ma(c1, w);
    const auto x2 = build_finite_ma(c2, w);
    for (std::size_t t = 0; t < lhs.size(); ++t) {
        CHECK(lhs[t] ==
              doctest::Approx(a * x1[t] + b * x2[t]).epsilon(1e-12));
    }
}

TEST_CASE("truncated moving averages attach the tail mass at lag q") {
    const auto geo = CoefficientModel::geometric_random(0.5, ScalarLaw::constant(1.0));
    const auto c = sample_coefficients(geo, 40, 5);
    const auto w = generate(InnovationModel::iid(kSym1), 64, 40, 5555);

    // q = 1: C'_1 = 1, so X^1_t = Z_t + Z_{t-1}
    const auto x1 = build_truncated_ma(geo, c, 1, w);
    for (std::size_t t = 1; t <= 64; ++t) {
        const auto tt = static_cast<std::ptrdiff_t>(t);
        CHECK(x1[t - 1] == doctest::Approx(w.at(tt) + w.at(tt - 1)).epsilon(1e-12));
    }

    // large q: the truncated process converges to the materialized filter
    const auto x_full = build_finite_ma(c, w);
    double max_abs_z = 0.0;
    for (double z : w.data) max_abs_z = std::max(max_abs_z, std::abs(z));
    for (std::size_t q : {8u, 16u, 32u}) {
        const auto xq = build_truncated_ma(geo, c, q, w);
        const double tail = std::abs(tail_sum(geo, c, q));
        for (std::size_t t = 0; t < xq.size(); ++t) {
            CHECK(std::abs(xq[t] - x_full[t]) <= 2.0 * tail * max_abs_z + 1e-12);
        }
    }

    const auto zero = CoefficientModel::deterministic({0.0, 0.0, 0.0});
    const auto zc = sample_coefficients(zero, 3, 1);
    for (double x : build_truncated_ma(zero, zc, 2, w)) CHECK(x == 0.0);
}

TEST_CASE("partial sum paths") {
    const std::vector<double> zero(6, 0.0);
    const auto flat = partial_sum_path(zero, 2.0, 6);
    for (double v : flat.values) CHECK(v == 0.0);

    std::vector<double> spike{3.0, 0.0, 0.0};
    const auto step = partial_sum_path(spike, 3.0, 3);
    CHECK(step.value_at(0.0) == 0.0);
    CHECK(step.value_at(1.0 / 3.0) == 1.0);
    CHECK(step.value_at(1.0) == 1.0);

    const std::vector<double> ones{1.0, 1.0, 1.0, 1.0};
    const auto ramp = partial_sum_path(ones, 2.0, 4);
    CHECK(ramp.times == std::vector<double>{0.25, 0.5, 0.75, 1.0});
    CHECK(ramp.values == std::vector<double>{0.5, 1.0, 1.5, 2.0});
    CHECK(ramp.value_at_one() == 2.0);  // (1/a) sum X_i exactly

    CHECK_THROWS_AS(partial_sum_path(ones, 0.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(partial_sum_path(ones, 1.0, 5), std::invalid_argument);
}

TEST_CASE("total-sum law per kind") {
    Rng rng(1);
    const auto det = CoefficientModel::deterministic({1.0, 0.5, 0.25});
    CHECK(sample_total_sum(det, rng) == 1.75);
    const auto geo = CoefficientModel::geometric_random(0.5, ScalarLaw::constant(1.0));
    CHECK(sample_total_sum(geo, rng) == doctest::Approx(2.0).epsilon(1e-12));
    const auto sp = CoefficientModel::scaled_pattern({1.0, 1.0}, ScalarLaw::uniform(0.0, 1.0));
    for (int i = 0; i < 20; ++i) {
        const double s = sample_total_sum(sp, rng);
        CHECK(s > 0.0);
        CHECK(s < 2.0);
    }
}

TEST_CASE("moment certification") {
    const auto geo = CoefficientModel::geometric_random(0.9, ScalarLaw::uniform(0.0, 3.0), 0.4);
    CHECK(std::isfinite(geo.delta_moment_sum()));
    CHECK(geo.certifies_r_moment(2.0));
    CHECK_FALSE(geo.certifies_r_moment(0.5));
    CHECK(geo.mean_tail_beyond(4) == doctest::Approx(1.5 * std::pow(0.9, 4) / 0.1));
    CHECK_THROWS_AS(CoefficientModel::geometric_random(1.0, ScalarLaw::constant(1.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(CoefficientModel::deterministic({1.0}, 1.5), std::invalid_argument);
}

TEST_CASE("telescoping decomposition identities") {
    // q = 1, case 2: H = c1 Z_k / a_n, G = c1 Z_0 / a_n
    {
        const std::vector<double> c{0.8, 0.3};
        const auto w = generate(InnovationModel::iid(kSym1), 16, 1, 909);
        const double a_n = 4.0;
        const auto d = lemma_decomposition(c, w, 16, 5, a_n, LemmaCase::two);
        CHECK(d.h == doctest::Approx(0.3 * w.at(5) / a_n).epsilon(1e-12));
        CHECK(d.g == doctest::Approx(0.3 * w.at(0) / a_n).epsilon(1e-12));
        CHECK(std::abs(d.lhs - d.rhs()) <= 1e-12);
    }

    // zero coefficients: everything vanishes
    {
        const std::vector<double> c{0.0, 0.0, 0.0};
        const auto w = generate(InnovationModel::iid(kSym1), 12, 2, 910);
        const auto d = lemma_decomposition(c, w, 12, 4, 1.0, LemmaCase::three);
        CHECK(d.lhs == 0.0);
        CHECK(d.h == 0.0);
        CHECK(d.g == 0.0);
        CHECK(d.t == 0.0);
    }

    // randomized instances across all three cases
    Rng rng(123456);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t q = 2 + rng.raw() % 9;
        const std::size_t n = 2 * q + 1 + rng.raw() % 80;
        std::vector<double> c(q + 1);
        for (auto& v : c) v = rng.uniform_open();
        const auto tail = TailParams::make(0.8, 0.4, 1.0);
        const auto w = generate(InnovationModel::iid(tail), n, q, rng.raw());
        const double a_n = norming_constant(tail, n);

        const std::size_t k1 = 1 + rng.raw() % (q - 1);
        const std::size_t k2 = q + rng.raw() % (n - q + 1);
        const std::size_t k3 = q + rng.raw() % (n - 2 * q + 1);
        for (auto [kase, k] : {std::pair{LemmaCase::one, k1}, std::pair{LemmaCase::two, k2},
                               std::pair{LemmaCase::three, k3}}) {
            const auto d = lemma_decomposition(c, w, n, k, a_n, kase);
            CHECK(std::abs(d.lhs - d.rhs()) <= 1e-9 * (1.0 + std::abs(d.lhs)));
        }
    }
}

TEST_CASE("decomposition rejects out-of-range indices naming the case") {
    const std::vector<double> c{0.5, 0.25, 0.125};
    const auto w = generate(InnovationModel::iid(kSym1), 10, 2, 31);
    auto message_of = [&](std::size_t k, LemmaCase kase) -> std::string {
        try {
            lemma_decomposition(c, w, 10, k, 1.0, kase);
        } catch (const std::invalid_argument& e) {
            return e.what();
        }
        return {};
    };
    CHECK(message_of(4, LemmaCase::one).find("case 1") != std::string::npos);
    CHECK(message_of(1, LemmaCase::two).find("case 2") != std::string::npos);
    CHECK(message_of(9, LemmaCase::three).find("case 3") != std::string::npos);
}

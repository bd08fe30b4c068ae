#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "skflt/cadlag_geometry.hpp"
#include "skflt/path_csv.hpp"
#include "skflt/step_path.hpp"
#include "test_oracles.hpp"

using namespace skflt;

TEST_CASE("step path validation and evaluation") {
    CHECK_THROWS_AS(StepPath::make(0.0, {0.5, 0.5}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(StepPath::make(0.0, {0.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(StepPath::make(0.0, {1.5}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(StepPath::make(0.0, {0.5}, {1.0, 2.0}), std::invalid_argument);

    const auto p = StepPath::make(-1.0, {0.25, 0.5}, {2.0, 3.0});
    CHECK(p.value_at(0.0) == -1.0);
    CHECK(p.value_at(0.2499) == -1.0);
    CHECK(p.value_at(0.25) == 2.0);  // right continuity
    CHECK(p.value_at(0.7) == 3.0);
    CHECK(p.value_at_one() == 3.0);
}

TEST_CASE("completed graphs") {
    const auto constant = StepPath::make(1.5, {}, {});
    const auto g0 = completed_graph(constant);
    REQUIRE(g0.segments.size() == 1);
    CHECK(g0.segments[0].ay == 1.5);

    const auto step = StepPath::make(0.0, {0.5}, {1.0});
    const auto g1 = completed_graph(step);
    REQUIRE(g1.segments.size() == 3);
    CHECK(g1.segments[0].ax == 0.0);
    CHECK(g1.segments[0].bx == 0.5);
    CHECK(g1.segments[1].vertical());
    CHECK(g1.segments[1].ay == 0.0);
    CHECK(g1.segments[1].by == 1.0);
    CHECK(g1.segments[2].ax == 0.5);
    CHECK(g1.segments[2].bx == 1.0);
    CHECK(g1.connected());

    // n interior jumps -> 2n + 1 segments
    const std::size_t n = 7;
    std::vector<double> times, values;
    for (std::size_t i = 1; i <= n; ++i) {
        times.push_back(static_cast<double>(i) / static_cast<double>(n + 1));
        values.push_back(static_cast<double>(i));
    }
    const auto stair = StepPath::make(0.0, times, values);
    CHECK(completed_graph(stair).segments.size() == 2 * n + 1);

    // zero-size jumps produce no connector
    const auto flatjump = StepPath::make(2.0, {0.3, 0.6}, {2.0, 2.0});
    CHECK(completed_graph(flatjump).segments.size() == 1);
}

TEST_CASE("M2 distance on reference configurations") {
    const auto a = StepPath::make(0.0, {0.5}, {1.0});
    CHECK(m2_distance(a, a) == 0.0);

    const auto zero = StepPath::make(0.0, {}, {});
    const auto c = StepPath::make(-2.5, {}, {});
    CHECK(m2_distance(zero, c) == doctest::Approx(2.5).epsilon(1e-15));

    const auto b = StepPath::make(0.0, {0.6}, {1.0});
    CHECK(m2_distance(a, b) == doctest::Approx(0.1).epsilon(1e-12));

    // small shifts are cheaper than the jump size would suggest
    const auto big = StepPath::make(0.0, {0.5}, {10.0});
    const auto big_shifted = StepPath::make(0.0, {0.52}, {10.0});
    CHECK(m2_distance(big, big_shifted) == doctest::Approx(0.02).epsilon(1e-9));
}

TEST_CASE("uniform distance and domination") {
    const auto a = StepPath::make(0.0, {0.5}, {1.0});
    const auto b = StepPath::make(0.0, {0.6}, {1.0});
    CHECK(uniform_distance(a, a) == 0.0);
    CHECK(uniform_distance(StepPath::make(0.0, {}, {}), StepPath::make(-3.0, {}, {})) == 3.0);
    CHECK(uniform_distance(a, b) == doctest::Approx(1.0));  // gap on [0.5, 0.6)

    oracle::PathGen gen(515151);
    for (int i = 0; i < 400; ++i) {
        const auto x = gen();
        const auto y = gen();
        CHECK(m2_distance(x, y) <= uniform_distance(x, y) + 1e-12);
    }
}

TEST_CASE("metric axioms on random step paths") {
    oracle::PathGen gen(777);
    for (int i = 0; i < 1000; ++i) {
        const auto x = gen();
        const auto y = gen();
        const auto z = gen();
        const double dxy = m2_distance(x, y);
        const double dyx = m2_distance(y, x);
        CHECK(dxy == dyx);  // symmetry is exact
        CHECK(m2_distance(x, x) == 0.0);
        const double dxz = m2_distance(x, z);
        const double dzy = m2_distance(z, y);
        CHECK(dxy <= dxz + dzy + 1e-10);
    }
}

TEST_CASE("translation invariance") {
    oracle::PathGen gen(31415);
    for (int i = 0; i < 200; ++i) {
        auto x = gen();
        auto y = gen();
        const double base = m2_distance(x, y);
        const double shift = 7.25;
        auto xs = x;
        auto ys = y;
        xs.initial_value += shift;
        ys.initial_value += shift;
        for (auto& v : xs.values) v += shift;
        for (auto& v : ys.values) v += shift;
        CHECK(std::abs(m2_distance(xs, ys) - base) <= 1e-12);
    }
}

TEST_CASE("grid oracle encloses the exact distance") {
    oracle::PathGen gen(2468);
    const double grid_step = 1e-3;
    for (int i = 0; i < 120; ++i) {
        const auto x = gen();
        const auto y = gen();
        const double exact = m2_distance(x, y);
        const auto box = m2_distance_oracle(x, y, grid_step);
        CHECK(exact >= box.lower - 1e-12);
        CHECK(exact <= box.upper + 1e-12);
    }

    const auto p = gen();
    const auto same = m2_distance_oracle(p, p, 0.05);
    CHECK(same.lower == 0.0);
    CHECK(same.upper == 0.05);

    const auto q = gen();
    const auto w1 = m2_distance_oracle(p, q, 0.02);
    const auto w2 = m2_distance_oracle(p, q, 0.01);
    CHECK(w1.upper - w1.lower == doctest::Approx(0.02));
    CHECK(w2.upper - w2.lower == doctest::Approx(0.01));

    CHECK_THROWS_AS(m2_distance_oracle(p, q, 0.0), std::invalid_argument);
}

TEST_CASE("path csv round trip") {
    oracle::PathGen gen(13579);
    for (int i = 0; i < 50; ++i) {
        const auto p = gen();
        std::ostringstream out;
        write_path_csv(out, p);
        std::istringstream in(out.str());
        const auto back = read_path_csv(in);
        CHECK(back.initial_value == p.initial_value);
        CHECK(back.times == p.times);
        CHECK(back.values == p.values);
    }

    std::istringstream junk("t,value\n0.5,1.0\n");
    CHECK_THROWS(read_path_csv(junk));  // first data row must be t = 0
}

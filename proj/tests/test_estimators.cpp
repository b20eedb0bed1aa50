#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "byzsim/estimators.hpp"
#include "byzsim/objectives.hpp"

using namespace byzsim;

TEST_CASE("floor_log2") {
    CHECK(floor_log2(1) == 0);
    CHECK(floor_log2(2) == 1);
    CHECK(floor_log2(3) == 1);
    CHECK(floor_log2(1024) == 10);
    CHECK(floor_log2(3000) == 11);
}

TEST_CASE("level distribution is geometric with rate 1/2") {
    Rng rng = make_rng(0xfeed);
    const int draws = 1000000;
    std::array<int, 6> counts{};
    for (int i = 0; i < draws; ++i) {
        int j = sample_level(rng);
        CHECK(j >= 1);
        CHECK(j <= 64);
        if (j <= 5) counts[j]++;
    }
    for (int j = 1; j <= 5; ++j) {
        double freq = counts[j] / (double)draws;
        double p = std::pow(0.5, j);
        CHECK(std::abs(freq - p) <= 4.0 * std::sqrt(p * (1.0 - p) / draws) + 1e-4);
    }
}

TEST_CASE("level cost") {
    CHECK(level_cost(1, 11) == 1 + 1 + 2);
    CHECK(level_cost(4, 11) == 1 + 8 + 16);
    CHECK(level_cost(11, 11) == 1 + 1024 + 2048);
    CHECK(level_cost(12, 11) == 1);  // truncated levels only pay the base draw
}

TEST_CASE("expected cost equals 1 + 1.5 jmax by enumeration") {
    MlmcParams params = MlmcParams::plain(3000);
    CHECK(params.jmax == 11);
    long double expected = 0.0L;
    long double tail = 1.0L;
    for (int j = 1; j <= params.jmax; ++j) {
        long double p = std::pow(0.5L, j);
        expected += p * level_cost(j, params.jmax);
        tail -= p;
    }
    expected += tail * 1.0L;
    CHECK(std::abs((double)expected - (1.0 + 1.5 * params.jmax)) <= 1e-12);
}

TEST_CASE("constant oracle returns the constant at any level") {
    MlmcParams params = MlmcParams::plain(1024);
    Rng rng = make_rng(3);
    LevelOracle oracle = [](int) { return Vector{2.0, -1.0}; };
    for (int rep = 0; rep < 200; ++rep) {
        MlmcOutput out = mlmc_from_oracle(oracle, params, rng);
        CHECK(vecmath::l2_dist(out.gradient, {2.0, -1.0}) <= 1e-12);
    }
}

TEST_CASE("truncated level falls back to the base draw") {
    MlmcParams params = MlmcParams::plain(1024);
    Rng rng = make_rng(4);
    int calls_above_zero = 0;
    LevelOracle oracle = [&](int level) {
        if (level > 0) ++calls_above_zero;
        return Vector{(double)level};
    };
    MlmcOutput out = mlmc_from_oracle(oracle, params, rng, params.jmax + 1);
    CHECK(out.gradient == Vector{0.0});
    CHECK(out.level == params.jmax + 1);
    CHECK(!out.used_correction);
    CHECK(out.per_worker_cost == 1);
    CHECK(calls_above_zero == 0);
}

TEST_CASE("drift oracle at a forced level matches the closed form") {
    Objective q = Objective::quadratic({2.0, 1.0, 1.0, 2.0});
    GradOracle oracle(q, NoiseModel::drift(1.0, {1.0, 0.0}));
    MlmcParams params = MlmcParams::plain(1024);
    Rng rng = make_rng(5);
    Vector x = {0.0, 0.0};
    LevelOracle level_oracle = [&](int level) {
        return oracle.lmgo_value(x, 1ULL << level);
    };
    MlmcOutput out = mlmc_from_oracle(level_oracle, params, rng, 2);
    CHECK(out.level == 2);
    CHECK(out.used_correction);
    CHECK(out.per_worker_cost == 1 + 2 + 4);
    CHECK(std::abs(out.gradient[0] - 0.17157287525381015) <= 1e-12);
    CHECK(out.gradient[1] == 0.0);
}

TEST_CASE("telescoping mean over the level law recovers the top level") {
    MlmcParams params = MlmcParams::plain(256);  // jmax = 8
    Rng rng = make_rng(6);
    LevelOracle oracle = [](int level) {
        return Vector{1.0 - std::pow(0.5, level)};  // converges to 1
    };
    long double mean = 0.0L;
    long double tail = 1.0L;
    for (int j = 1; j <= params.jmax; ++j) {
        long double p = std::pow(0.5L, j);
        mean += p * mlmc_from_oracle(oracle, params, rng, j).gradient[0];
        tail -= p;
    }
    mean += tail * mlmc_from_oracle(oracle, params, rng, params.jmax + 1).gradient[0];
    CHECK(std::abs((double)mean - (1.0 - std::pow(0.5, params.jmax))) <= 1e-12);
}

TEST_CASE("fail-safe threshold frozen example and inclusive boundary") {
    MlmcParams params = MlmcParams::failsafe_opt1(1000, 0.1, 10, 1.0);
    CHECK(params.event_coefficient() == doctest::Approx(std::sqrt(0.3)));
    CHECK(params.universal_c() == doctest::Approx(10.690374806230139));
    const double threshold = 3.5340220368515256;
    Vector zero = {0.0, 0.0};
    CHECK(failsafe_event({threshold - 1e-9, 0.0}, zero, 4, params));
    CHECK(failsafe_event({threshold, 0.0}, zero, 4, params));  // boundary counts as safe
    CHECK(!failsafe_event({3.6, 0.0}, zero, 4, params));
    // option 2 coefficient is 6 sqrt 2
    MlmcParams p2 = MlmcParams::failsafe_opt2(1000, 10, 1.0);
    CHECK(p2.event_coefficient() == doctest::Approx(6.0 * std::sqrt(2.0)));
}

TEST_CASE("fail-safe gate drops only the correction term") {
    MlmcParams params = MlmcParams::failsafe_opt1(1000, 0.1, 10, 1.0);
    Rng rng = make_rng(7);
    LevelOracle oracle = [](int level) {
        return level == 0 ? Vector{5.0, 5.0} : Vector{100.0 * level, 0.0};
    };
    MlmcOutput out = mlmc_from_oracle(oracle, params, rng, 3);
    CHECK(out.failsafe_triggered);
    CHECK(!out.used_correction);
    CHECK(out.gradient == Vector{5.0, 5.0});
    CHECK(out.per_worker_cost == 1 + 4 + 8);  // levels were still computed
}

TEST_CASE("gamma variants") {
    MlmcParams params = MlmcParams::failsafe_opt1(1000, 0.1, 10, 1.0);
    CHECK(params.gamma_dynamic() == doctest::Approx(0.3));
    CHECK(params.gamma_static() == doctest::Approx(0.2));
}

TEST_CASE("momentum update") {
    MomentumState state(0.9, 2, 1);
    momentum_update(state, {{1.0}, {-2.0}});
    CHECK(state.momenta[0][0] == doctest::Approx(0.1));
    CHECK(state.momenta[1][0] == doctest::Approx(-0.2));
    momentum_update(state, {{1.0}, {-2.0}});
    CHECK(state.momenta[0][0] == doctest::Approx(0.19));
    CHECK(state.momenta[1][0] == doctest::Approx(-0.38));
}

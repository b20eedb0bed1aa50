#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "byzsim/adversary.hpp"

using namespace byzsim;

namespace {

std::size_t mask_count(const std::vector<bool>& mask) {
    std::size_t n = 0;
    for (bool b : mask) n += b ? 1 : 0;
    return n;
}

}  // namespace

TEST_CASE("static switching is constant over rounds and computations") {
    ByzantineSchedule sched(SwitchingSpec::static_set({1, 3}), 5, 50, 99);
    std::vector<bool> expect = {false, true, false, true, false};
    for (std::uint64_t t = 1; t <= 50; ++t) {
        CHECK(sched.base_mask(t) == expect);
        CHECK(sched.mask_at(t, 1) == expect);
        CHECK(sched.mask_at(t, 7) == expect);
        CHECK(!sched.flipped_at(t, 3));
    }
    CHECK_THROWS_AS((void)ByzantineSchedule(SwitchingSpec::static_set({5}), 5, 10, 0),
                    std::invalid_argument);
}

TEST_CASE("periodic switching resamples on period boundaries with exact size") {
    const std::size_t m = 10;
    const double delta = 0.3;
    ByzantineSchedule sched(SwitchingSpec::periodic(5, delta), m, 60, 7);
    for (std::uint64_t t = 1; t <= 60; ++t) {
        CHECK(mask_count(sched.base_mask(t)) == 3);  // floor(0.3 * 10)
        // constant inside each block of 5
        std::uint64_t block_start = ((t - 1) / 5) * 5 + 1;
        CHECK(sched.base_mask(t) == sched.base_mask(block_start));
    }
    // over 12 blocks, at least two distinct subsets should appear
    std::set<std::vector<bool>> distinct;
    for (std::uint64_t t = 1; t <= 60; t += 5) distinct.insert(sched.base_mask(t));
    CHECK(distinct.size() >= 2);
}

TEST_CASE("bernoulli switching: p = 0 never corrupts, cap always holds") {
    ByzantineSchedule none(SwitchingSpec::bernoulli(0.0, 10, 0.4), 10, 100, 3);
    for (std::uint64_t t = 1; t <= 100; ++t) CHECK(mask_count(none.base_mask(t)) == 0);

    ByzantineSchedule busy(SwitchingSpec::bernoulli(0.5, 7, 0.4), 10, 500, 11);
    std::size_t max_seen = 0;
    for (std::uint64_t t = 1; t <= 500; ++t)
        max_seen = std::max(max_seen, mask_count(busy.base_mask(t)));
    CHECK(max_seen <= 4);  // floor(0.4 * 10)
    CHECK(max_seen >= 1);
}

TEST_CASE("within-round flips replay deterministically") {
    SwitchingSpec spec = SwitchingSpec::within_round(SwitchingSpec::static_set({0}), 0.5);
    ByzantineSchedule a(spec, 6, 40, 12345);
    ByzantineSchedule b(spec, 6, 40, 12345);
    bool any_flip = false;
    for (std::uint64_t t = 1; t <= 40; ++t) {
        for (std::uint64_t k = 1; k <= 8; ++k) {
            CHECK(a.mask_at(t, k) == b.mask_at(t, k));
            any_flip = any_flip || a.flipped_at(t, k);
        }
    }
    CHECK(any_flip);
    CHECK(a.within_round());
    ByzantineSchedule c(spec, 6, 40, 54321);
    bool differs = false;
    for (std::uint64_t t = 1; t <= 40 && !differs; ++t)
        for (std::uint64_t k = 1; k <= 8; ++k)
            if (a.mask_at(t, k) != c.mask_at(t, k)) differs = true;
    CHECK(differs);
}

TEST_CASE("byzantine_set wrapper agrees with the schedule") {
    SwitchingSpec spec = SwitchingSpec::static_set({2, 4});
    std::vector<std::size_t> set = byzantine_set(spec, 3, 1, 6, 10, 0);
    CHECK(set == std::vector<std::size_t>{2, 4});
}

TEST_CASE("sign flip") {
    std::vector<Vector> msgs = {{1.0, -2.0}, {3.0, 4.0}};
    std::vector<Vector> out =
        apply_attack(AttackSpec::sign_flip(), msgs, {true, false}, {1});
    CHECK(out[0] == Vector{-1.0, 2.0});
    CHECK(out[1] == msgs[1]);  // honest passes through bitwise
}

TEST_CASE("inner product manipulation targets the honest mean") {
    std::vector<Vector> msgs = {{0.0, 0.0}, {8.0, 0.0}, {12.0, 0.0}};
    std::vector<Vector> out =
        apply_attack(AttackSpec::ipm(0.1), msgs, {true, false, false}, {1});
    // honest mean (10, 0); byz message = -0.1 * (10, 0)
    CHECK(vecmath::l2_dist(out[0], {-1.0, 0.0}) <= 1e-12);
    CHECK(out[1] == msgs[1]);
    CHECK(out[2] == msgs[2]);
    CHECK_THROWS((void)apply_attack(AttackSpec::ipm(0.1), msgs, {true, true, true}, {1}));
}

TEST_CASE("alie auto z anchor") {
    CHECK(std::abs(alie_z_auto(17, 8) - 1.2206403488473496) <= 1e-9);
    CHECK(std::abs(normal_quantile(0.5)) <= 1e-12);
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963985).epsilon(1e-7));
}

TEST_CASE("alie pushes byz messages to mean minus z std") {
    std::vector<Vector> msgs = {{0.0}, {1.0}, {3.0}};
    AttackSpec spec = AttackSpec::alie(2.0);
    std::vector<Vector> out = apply_attack(spec, msgs, {true, false, false}, {1});
    // honest coords {1, 3}: mean 2, std 1 -> 2 - 2*1 = 0
    CHECK(std::abs(out[0][0] - 0.0) <= 1e-12);
    CHECK(out[1] == msgs[1]);
}

TEST_CASE("fixed shift") {
    std::vector<Vector> msgs = {{1.0, 1.0}, {2.0, 2.0}};
    std::vector<Vector> out =
        apply_attack(AttackSpec::fixed_shift({5.0, -5.0}), msgs, {false, true}, {1});
    CHECK(out[0] == msgs[0]);
    CHECK(out[1] == Vector{7.0, -3.0});  // honest gradient + v
}

TEST_CASE("momentum attack coefficients and assignment") {
    const double alpha = 1.0 / 30.0;  // epoch 30, thirds of 10
    CHECK(momentum_attack_coeff(1, alpha) == doctest::Approx(1.0));
    CHECK(momentum_attack_coeff(2, alpha) == doctest::Approx(1.0));  // maintains b = v
    CHECK(momentum_attack_coeff(11, alpha) == doctest::Approx(30.0));  // v / alpha boost
    CHECK(momentum_attack_coeff(21, alpha) == doctest::Approx(30.0));
    CHECK(momentum_attack_coeff(12, alpha) == doctest::Approx(1.0));
    // rotating thirds, exactly one Byzantine worker each round
    CHECK(momentum_attack_assignment(5, alpha, 1));
    CHECK(!momentum_attack_assignment(5, alpha, 2));
    CHECK(momentum_attack_assignment(15, alpha, 2));
    CHECK(momentum_attack_assignment(25, alpha, 3));
    CHECK(momentum_attack_assignment(35, alpha, 1));  // wraps into the next epoch
    for (std::uint64_t t = 1; t <= 300; ++t) {
        int byz = 0;
        for (std::size_t w = 1; w <= 3; ++w)
            byz += momentum_attack_assignment(t, alpha, w) ? 1 : 0;
        CHECK(byz == 1);
    }
    Vector v2 = momentum_attack_vector(11, alpha, {2.0, 0.0});
    CHECK(vecmath::l2_dist(v2, {60.0, 0.0}) <= 1e-9);
}

TEST_CASE("theta report") {
    ThetaReport rep = verify_theta_bounds(1.0 / 30.0, 1.0, 3000);
    CHECK(rep.pass);
    CHECK(rep.max_bias_error <= 1e-12);
    CHECK(rep.theta_min_observed >= rep.theta_floor - 1e-12);
    CHECK(rep.theta_min_observed <= 1.0 + 1e-12);
    CHECK(rep.switch_rounds >= 290);
    CHECK(rep.switch_rounds <= 310);
}

TEST_CASE("factory validation") {
    CHECK_THROWS((void)SwitchingSpec::periodic(0, 0.2));
    CHECK_THROWS((void)SwitchingSpec::bernoulli(-0.1, 5, 0.2));
    CHECK_THROWS((void)SwitchingSpec::bernoulli(0.5, 5, 1.2));
    CHECK_THROWS((void)AttackSpec::momentum_dynamic(0.5, {1.0}));  // alpha > 1/6
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "byzsim/objectives.hpp"

using namespace byzsim;

namespace {

Objective make_ls() {
    std::vector<Vector> rows = {{1.0, 0.5, 0.0}, {0.0, 1.0, -0.5}, {0.5, 0.0, 1.0},
                                {1.0, 1.0, 1.0}, {-0.5, 0.5, 0.5}};
    Vector targets = {1.0, -1.0, 0.5, 2.0, 0.0};
    return Objective::least_squares(rows, targets);
}

void check_gradient_fd(const Objective& obj, Rng& rng) {
    const double h = 1e-5;
    for (int pt = 0; pt < 100; ++pt) {
        Vector x(obj.dim());
        for (auto& c : x) c = 2.0 * normal01(rng);
        Vector g = obj.gradient(x);
        for (std::size_t c = 0; c < x.size(); ++c) {
            Vector xp = x, xm = x;
            xp[c] += h;
            xm[c] -= h;
            double fd = (obj.value(xp) - obj.value(xm)) / (2.0 * h);
            CHECK(std::abs(fd - g[c]) <= 1e-5 * (1.0 + std::abs(g[c])));
        }
    }
}

}  // namespace

TEST_CASE("quadratic gradient and constants") {
    Objective q = Objective::quadratic({2.0, 1.0, 1.0, 2.0});
    CHECK(q.gradient({1.0, 0.0}) == Vector{2.0, 1.0});
    CHECK(q.gradient({1.0, 1.0}) == Vector{3.0, 3.0});
    CHECK(q.smoothness() == doctest::Approx(3.0));          // max eigenvalue
    CHECK(q.strong_convexity() == doctest::Approx(1.0));    // min eigenvalue
    CHECK(vecmath::l2_norm(q.gradient(q.minimizer())) <= 1e-10);
    CHECK(q.value({1.0, 1.0}) == doctest::Approx(3.0));
    CHECK(q.optimal_value() == doctest::Approx(0.0));
}

TEST_CASE("stationarity at the minimizer for all objectives") {
    CHECK(vecmath::l2_norm(make_ls().gradient(make_ls().minimizer())) <= 1e-10);
    Objective lg = Objective::logistic_synthetic();
    CHECK(vecmath::l2_norm(lg.gradient(lg.minimizer())) <= 1e-10);
}

TEST_CASE("finite differences agree with analytic gradients") {
    Rng rng = make_rng(777);
    check_gradient_fd(Objective::quadratic({2.0, 1.0, 1.0, 2.0}), rng);
    check_gradient_fd(make_ls(), rng);
    check_gradient_fd(Objective::logistic_synthetic(), rng);
}

TEST_CASE("objective meta") {
    Objective q = Objective::quadratic({2.0, 1.0, 1.0, 2.0});
    ObjectiveMeta meta = make_meta(q, {1.0, 1.0});
    CHECK(std::abs(meta.delta1 - (q.value({1.0, 1.0}) - q.optimal_value())) <= 1e-10);
}

TEST_CASE("gaussian noise variance calibration") {
    Objective q = Objective::quadratic({2.0, 1.0, 1.0, 2.0});
    GradOracle oracle(q, NoiseModel::gaussian(0.5));
    Rng rng = make_rng(991);
    Vector x = {0.3, -0.2};
    Vector g = q.gradient(x);
    long double acc = 0.0L;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        double dd = vecmath::l2_dist(oracle.stochastic_gradient_uncharged(x, rng), g);
        acc += (long double)dd * dd;
    }
    double mse = (double)(acc / draws);
    CHECK(mse >= 0.24);
    CHECK(mse <= 0.26);
}

TEST_CASE("sigma zero gives the exact gradient") {
    Objective q = Objective::quadratic({2.0, 1.0, 1.0, 2.0});
    GradOracle oracle(q, NoiseModel::gaussian(0.0));
    Rng rng = make_rng(5);
    CHECK(oracle.stochastic_gradient({1.0, 0.0}, rng) == Vector{2.0, 1.0});
    CHECK(oracle.minibatch_gradient({1.0, 0.0}, 7, rng) == Vector{2.0, 1.0});
}

TEST_CASE("bounded ball noise respects the hard bound") {
    Objective q = Objective::quadratic({2.0, 1.0, 1.0, 2.0});
    GradOracle oracle(q, NoiseModel::bounded_ball(1.5));
    Rng rng = make_rng(6);
    Vector x = {0.1, 0.9};
    Vector g = q.gradient(x);
    for (int i = 0; i < 10000; ++i)
        CHECK(vecmath::l2_dist(oracle.stochastic_gradient_uncharged(x, rng), g) <= 1.5);
}

TEST_CASE("minibatch MSE scales as 1/N") {
    Objective q = Objective::quadratic({2.0, 1.0, 1.0, 2.0});
    GradOracle oracle(q, NoiseModel::gaussian(1.0));
    Rng rng = make_rng(7);
    Vector x = {1.0, -1.0};
    Vector g = q.gradient(x);
    auto mse = [&](std::uint64_t n) {
        long double acc = 0.0L;
        const int batches = 10000;
        for (int i = 0; i < batches; ++i) {
            double dd = vecmath::l2_dist(oracle.minibatch_gradient(x, n, rng), g);
            acc += (long double)dd * dd;
        }
        return (double)(acc / batches);
    };
    double m100 = mse(100);
    CHECK(m100 >= 0.0095);
    CHECK(m100 <= 0.0105);
    double ratio = mse(16) / mse(1);
    CHECK(ratio >= 0.8 / 16.0);
    CHECK(ratio <= 1.2 / 16.0);
}

TEST_CASE("drift oracle is the deterministic LMGO") {
    Objective q = Objective::quadratic({2.0, 1.0, 1.0, 2.0});
    GradOracle oracle(q, NoiseModel::drift(1.0, {1.0, 0.0}));
    Rng rng = make_rng(8);
    Vector x = {0.0, 0.0};  // gradient zero
    CHECK(oracle.lmgo_query(x, 4, rng) == Vector{0.5, 0.0});
    CHECK(oracle.lmgo_query(x, 4, rng) == oracle.lmgo_value(x, 4));
    GradOracle zero(q, NoiseModel::drift(0.0, {1.0, 0.0}));
    CHECK(zero.lmgo_query({1.0, 0.0}, 9, rng) == Vector{2.0, 1.0});
    CHECK_THROWS(oracle.stochastic_gradient(x, rng));
}

TEST_CASE("gaussian lmgo fallback has c^2/N MSE") {
    Objective q = Objective::quadratic({2.0, 1.0, 1.0, 2.0});
    GradOracle oracle(q, NoiseModel::gaussian(1.0));
    Rng rng = make_rng(9);
    Vector x = {0.5, 0.5};
    Vector g = q.gradient(x);
    for (std::uint64_t n : {1ULL, 4ULL, 16ULL}) {
        long double acc = 0.0L;
        for (int i = 0; i < 10000; ++i) {
            double dd = vecmath::l2_dist(oracle.lmgo_query(x, n, rng), g);
            acc += (long double)dd * dd;
        }
        double mse = (double)(acc / 10000);
        CHECK(mse >= 0.9 / (double)n);
        CHECK(mse <= 1.1 / (double)n);
    }
}

TEST_CASE("call counter charges per evaluation") {
    Objective q = Objective::quadratic({2.0, 1.0, 1.0, 2.0});
    GradOracle oracle(q, NoiseModel::gaussian(1.0));
    Rng rng = make_rng(10);
    Vector x = {0.0, 1.0};
    (void)oracle.stochastic_gradient(x, rng);
    (void)oracle.minibatch_gradient(x, 8, rng);
    (void)oracle.lmgo_query(x, 4, rng);
    CHECK(oracle.calls() == 13);
    (void)oracle.stochastic_gradient_uncharged(x, rng);
    CHECK(oracle.calls() == 13);
    oracle.charge(3);
    CHECK(oracle.calls() == 16);
    oracle.reset_calls();
    CHECK(oracle.calls() == 0);
}

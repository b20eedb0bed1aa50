#include "byzsim/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "byzsim/adversary.hpp"
#include "byzsim/aggregators.hpp"
#include "byzsim/config.hpp"
#include "byzsim/estimators.hpp"
#include "byzsim/objectives.hpp"
#include "byzsim/optimize.hpp"
#include "byzsim/run.hpp"

namespace byzsim {

namespace {

void add(VerifyReport& rep, const std::string& name, bool pass, double measured,
         double bound) {
    rep.checks.push_back({name, pass, measured, bound});
}

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / (double)v.size();
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
    auto ranks = [](const std::vector<double>& v) {
        std::vector<std::size_t> idx(v.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
            return v[x] < v[y];
        });
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < idx.size(); ++i) r[idx[i]] = (double)i;
        return r;
    };
    std::vector<double> ra = ranks(a), rb = ranks(b);
    double ma = mean_of(ra), mb = mean_of(rb);
    double num = 0.0, da = 0.0, db = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        num += (ra[i] - ma) * (rb[i] - mb);
        da += (ra[i] - ma) * (ra[i] - ma);
        db += (rb[i] - mb) * (rb[i] - mb);
    }
    return num / std::sqrt(da * db);
}

// ---------------------------------------------------------------- mlmc

VerifyReport suite_mlmc() {
    VerifyReport rep{"mlmc", {}};
    const double c = 1.0;
    const std::uint64_t horizon = 1024;
    const int jmax = floor_log2(horizon);  // 10
    const std::size_t d = 2;
    auto level_value = [&](int j) {
        Vector v(d, 0.0);
        v[0] = c / std::sqrt(std::pow(2.0, j));  // drift oracle at budget 2^j
        return v;
    };
    // enumerate the level distribution: P(J=j)=2^-j, truncation mass 2^-jmax
    std::vector<Vector> outcomes;
    std::vector<double> probs;
    for (int j = 1; j <= jmax; ++j) {
        Vector g = level_value(0);
        Vector corr = vecmath::sub(level_value(j), level_value(j - 1));
        for (std::size_t k = 0; k < d; ++k) g[k] += std::pow(2.0, j) * corr[k];
        outcomes.push_back(g);
        probs.push_back(std::pow(2.0, -j));
    }
    outcomes.push_back(level_value(0));
    probs.push_back(std::pow(2.0, -jmax));

    Vector expect(d, 0.0);
    for (std::size_t i = 0; i < outcomes.size(); ++i)
        for (std::size_t k = 0; k < d; ++k) expect[k] += probs[i] * outcomes[i][k];
    double bias = vecmath::l2_norm(expect);  // true gradient is zero
    double bias_exact = c / std::sqrt(std::pow(2.0, jmax));
    add(rep, "bias equals c/sqrt(2^Jmax)", std::abs(bias - bias_exact) <= 1e-15, bias,
        bias_exact);
    double bias_bound = std::sqrt(2.0 * c * c / (double)horizon);
    add(rep, "bias <= sqrt(2 c^2 / T)", bias <= bias_bound, bias, bias_bound);

    double var = 0.0;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        double dist = vecmath::l2_dist(outcomes[i], expect);
        var += probs[i] * dist * dist;
    }
    double var_bound = 14.0 * c * c * std::log2((double)horizon);
    add(rep, "variance <= 14 c^2 log2 T", var <= var_bound, var, var_bound);

    double cost = 0.0;
    for (int j = 1; j <= jmax; ++j)
        cost += std::pow(2.0, -j) * (double)level_cost(j, jmax);
    cost += std::pow(2.0, -jmax) * 1.0;
    double cost_exact = 1.0 + 1.5 * (double)jmax;
    add(rep, "expected cost equals 1 + 1.5 Jmax", std::abs(cost - cost_exact) <= 1e-12,
        cost, cost_exact);

    Rng rng = make_rng(0x11aaULL);
    const std::uint64_t samples = 100000;
    long double mc = 0.0L;
    for (std::uint64_t s = 0; s < samples; ++s)
        mc += (long double)level_cost(sample_level(rng), jmax);
    double mc_cost = (double)(mc / (long double)samples);
    add(rep, "Monte Carlo cost within 0.5", std::abs(mc_cost - cost_exact) <= 0.5, mc_cost,
        cost_exact);
    return rep;
}

// ---------------------------------------------------------- aggregation

VerifyReport suite_aggregation() {
    VerifyReport rep{"aggregation", {}};
    const std::size_t m = 10, d = 4;
    const double sigma = 1.0;
    const std::uint64_t batch = 16, trials = 10000;
    // mean aggregator, all honest: MSE ~ sigma^2 / (N m)
    Rng rng = make_rng(0x22bbULL);
    const double sd = sigma / std::sqrt((double)d) / std::sqrt((double)batch);
    long double acc = 0.0L;
    for (std::uint64_t s = 0; s < trials; ++s) {
        Vector agg(d, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < d; ++k) agg[k] += sd * normal01(rng);
        for (std::size_t k = 0; k < d; ++k) agg[k] /= (double)m;
        acc += (long double)vecmath::dot(agg, agg);
    }
    double mse = (double)(acc / (long double)trials);
    double base = sigma * sigma / ((double)batch * (double)m);
    add(rep, "mean MSE lower band", mse >= 0.9 * base, mse, 0.9 * base);
    add(rep, "mean MSE upper band", mse <= 1.1 * base, mse, 1.1 * base);

    // CWMed under sign-flip with delta = 0.2
    Rng krng = make_rng(0x33ccULL);
    RobustnessReport kappa = estimate_kappa(AggregatorSpec::cwmed(), m, 0.2, 200, krng);
    Vector grad(d, 0.5);
    std::vector<bool> mask(m, false);
    mask[0] = mask[1] = true;
    AttackSpec sf = AttackSpec::sign_flip();
    long double acc2 = 0.0L;
    for (std::uint64_t s = 0; s < trials; ++s) {
        std::vector<Vector> msgs(m, grad);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < d; ++k) msgs[i][k] += sd * normal01(krng);
        msgs = apply_attack(sf, msgs, mask, {1});
        Vector agg = aggregate(AggregatorSpec::cwmed(), msgs);
        double dist = vecmath::l2_dist(agg, grad);
        acc2 += (long double)dist * dist;
    }
    double mse2 = (double)(acc2 / (long double)trials);
    double bound2 =
        2.0 * sigma * sigma / (double)batch * (kappa.max_ratio + 1.0 / (double)m);
    add(rep, "cwmed MSE <= 2 sigma^2/N (kappa + 1/m)", mse2 <= bound2, mse2, bound2);
    return rep;
}

// ------------------------------------------------------------- failsafe

VerifyReport suite_failsafe() {
    VerifyReport rep{"failsafe", {}};
    const std::size_t m = 10, d = 2;
    const std::uint64_t horizon = 1000;
    const double v_bound = 1.0;
    MlmcParams params = MlmcParams::failsafe_opt1(horizon, 1.0, m, v_bound);
    Objective obj = Objective::quadratic({2.0, 1.0, 1.0, 2.0});
    GradOracle oracle(obj, NoiseModel::bounded_ball(v_bound));
    Vector x = {0.7, -0.4};
    AttackSpec sf = AttackSpec::sign_flip();
    std::vector<bool> mask(m, false);
    mask[0] = mask[1] = true;  // delta = 0.2, sign flip
    Rng rng = make_rng(0x44ddULL);
    const std::uint64_t evals = 100000;
    std::uint64_t failures = 0;
    for (std::uint64_t s = 0; s < evals; ++s) {
        int j = std::min(sample_level(rng), params.jmax);
        std::uint64_t half = 1ULL << (j - 1), full = 1ULL << j;
        std::vector<Vector> lvl_j(m), lvl_jm1(m);
        for (std::size_t i = 0; i < m; ++i) {
            Vector sum(d, 0.0);
            for (std::uint64_t k = 1; k <= full; ++k) {
                Vector g = oracle.stochastic_gradient_uncharged(x, rng);
                for (std::size_t c = 0; c < d; ++c) sum[c] += g[c];
                if (k == half) lvl_jm1[i] = vecmath::scale(sum, 1.0 / (double)half);
            }
            lvl_j[i] = vecmath::scale(sum, 1.0 / (double)full);
        }
        lvl_j = apply_attack(sf, lvl_j, mask, {1});
        lvl_jm1 = apply_attack(sf, lvl_jm1, mask, {1});
        Vector agg_j = aggregate(AggregatorSpec::cwmed(), lvl_j);
        Vector agg_jm1 = aggregate(AggregatorSpec::cwmed(), lvl_jm1);
        if (!failsafe_event(agg_j, agg_jm1, j, params)) ++failures;
    }
    double freq = (double)failures / (double)evals;
    double bound = 10.0 / (2.0 * (double)m * (double)horizon);
    add(rep, "event failure frequency <= 10/(2mT)", freq <= bound, freq, bound);
    return rep;
}

// ------------------------------------------------------------------ mfm

VerifyReport suite_mfm() {
    VerifyReport rep{"mfm", {}};
    const std::size_t m = 10, d = 3, byz = 4;
    const double threshold = 4.0;
    Rng rng = make_rng(0x55eeULL);
    std::uint64_t violations = 0;
    for (std::uint64_t s = 0; s < 10000; ++s) {
        Vector grad(d);
        for (std::size_t c = 0; c < d; ++c) grad[c] = 3.0 * normal01(rng);
        std::vector<Vector> msgs(m, grad);
        for (std::size_t i = byz; i < m; ++i) {
            // honest deviation of norm <= threshold/4
            Vector dir(d);
            double n = 0.0;
            do {
                for (std::size_t c = 0; c < d; ++c) dir[c] = normal01(rng);
                n = vecmath::l2_norm(dir);
            } while (n == 0.0);
            double r = threshold / 4.0 * uniform01(rng);
            for (std::size_t c = 0; c < d; ++c) msgs[i][c] += dir[c] * r / n;
        }
        for (std::size_t i = 0; i < byz; ++i)
            for (std::size_t c = 0; c < d; ++c) msgs[i][c] = grad[c] + 10.0 * normal01(rng);
        MfmDetail det = mfm_detail(msgs, threshold);
        bool ok = det.representative.has_value();
        if (ok) {
            for (std::size_t i = byz; i < m && ok; ++i)
                ok = std::find(det.kept.begin(), det.kept.end(), i) != det.kept.end();
            for (std::size_t i : det.kept)
                if (vecmath::l2_dist(msgs[i], grad) > 2.0 * threshold) ok = false;
        }
        if (!ok) ++violations;
    }
    add(rep, "filter guarantees hold on all trials", violations == 0, (double)violations,
        0.0);
    Vector counter = mfm_aggregate({{0.0}, {0.0}, {0.0}, {3.0}}, 4.0);
    add(rep, "non-robustness example returns 3/4", counter.size() == 1 && counter[0] == 0.75,
        counter.empty() ? -1.0 : counter[0], 0.75);
    return rep;
}

// -------------------------------------------------------- momentum_attack

VerifyReport suite_momentum_attack() {
    VerifyReport rep{"momentum_attack", {}};
    const double alpha = 1.0 / 30.0;
    const std::uint64_t horizon = 3000;
    ThetaReport th = verify_theta_bounds(alpha, 1.0, horizon);
    add(rep, "bias equals v during Byzantine thirds", th.max_bias_error <= 1e-12,
        th.max_bias_error, 1e-12);
    double floor_expected = std::pow(29.0 / 30.0, 20.0);
    add(rep, "theta floor equals (29/30)^20",
        std::abs(th.theta_min_observed - floor_expected) <= 1e-12, th.theta_min_observed,
        floor_expected);
    add(rep, "theta within [ (5/6)^4, 1 ]", th.pass, th.theta_min_observed, th.theta_floor);
    double expected_switches = 3.0 * alpha * (double)horizon;
    add(rep, "switching rounds = 3 alpha T +- 3",
        std::abs((double)th.switch_rounds - expected_switches) <= 3.0,
        (double)th.switch_rounds, expected_switches);
    return rep;
}

// -------------------------------------------------------- appf_quadratic

RunConfig appf_base(double lambda, std::uint64_t seed, bool mlmc) {
    RunConfig cfg;
    cfg.objective = Objective::quadratic({2.0, 1.0, 1.0, 2.0});
    cfg.noise = NoiseModel::gaussian(0.5 * std::sqrt(2.0));  // N(0, 0.25 I) in d = 2
    cfg.start = {1.0, 1.0};
    cfg.m = 3;
    if (mlmc) {
        cfg.method.kind = MethodSpec::Kind::Alg1Mlmc;
    } else {
        cfg.method.kind = MethodSpec::Kind::Momentum;
        cfg.method.beta = 0.99;
    }
    cfg.aggregator = AggregatorSpec::cwmed();
    if (lambda > 0.0) {
        cfg.attack = AttackSpec::momentum_dynamic(0.01, {lambda, lambda});
    }
    cfg.switching = SwitchingSpec::static_set({});
    cfg.lr.kind = LrSpec::Kind::Fixed;
    cfg.lr.eta = 5e-3;
    cfg.horizon = 3000;
    cfg.seed = seed;
    return cfg;
}

VerifyReport suite_appf_quadratic() {
    VerifyReport rep{"appf_quadratic", {}};
    const std::vector<double> lambdas = {0.0, 0.5, 1.0, 2.0, 5.0};
    const std::uint64_t seeds = 20;
    std::vector<double> momentum_gap, mlmc_gap;
    for (double lambda : lambdas) {
        std::vector<double> gm, gx;
        for (std::uint64_t s = 0; s < seeds; ++s) {
            gm.push_back(run(appf_base(lambda, derive_seed(7, s), false)).final_gap);
            gx.push_back(run(appf_base(lambda, derive_seed(7, s), true)).final_gap);
        }
        momentum_gap.push_back(mean_of(gm));
        mlmc_gap.push_back(mean_of(gx));
    }
    double rho = spearman(lambdas, momentum_gap);
    add(rep, "momentum gap increases with lambda (Spearman)", rho >= 0.9, rho, 0.9);
    add(rep, "momentum gap at lambda=5 >= 5x lambda=0",
        momentum_gap.back() >= 5.0 * momentum_gap.front(),
        momentum_gap.back() / std::max(momentum_gap.front(), 1e-300),
        5.0);
    double mlmc_worst = *std::max_element(mlmc_gap.begin(), mlmc_gap.end());
    add(rep, "mlmc gap stays within 3x its attack-free gap",
        mlmc_worst <= 3.0 * mlmc_gap.front(),
        mlmc_worst / std::max(mlmc_gap.front(), 1e-300), 3.0);
    return rep;
}

// -------------------------------------------------------- static_scaling

VerifyReport suite_static_scaling() {
    VerifyReport rep{"static_scaling", {}};
    const std::vector<std::uint64_t> horizons = {500, 2000, 8000};
    const std::uint64_t seeds = 10;
    std::vector<double> log_t, log_metric;
    for (std::uint64_t horizon : horizons) {
        std::vector<double> vals;
        for (std::uint64_t s = 0; s < seeds; ++s) {
            RunConfig cfg;
            cfg.objective = Objective::quadratic({2.0, 1.0, 1.0, 2.0});
            cfg.noise = NoiseModel::gaussian(0.5);
            cfg.start = {1.0, 1.0};
            cfg.m = 10;
            cfg.method.kind = MethodSpec::Kind::Alg1Mlmc;
            cfg.aggregator = AggregatorSpec::cwtm(2);
            cfg.attack = AttackSpec::sign_flip();
            cfg.switching = SwitchingSpec::static_set({0, 1});
            cfg.lr.kind = LrSpec::Kind::Theoretical;
            cfg.lr.formula = LrKind::StaticNonconvex;
            cfg.lr.sigma = 0.5;
            cfg.lr.gamma = 0.2;
            cfg.horizon = horizon;
            cfg.seed = derive_seed(13, horizon, s);
            vals.push_back(run(cfg).avg_grad_norm_sq);
        }
        log_t.push_back(std::log((double)horizon));
        log_metric.push_back(std::log(mean_of(vals)));
    }
    double mt = mean_of(log_t), mm = mean_of(log_metric);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < log_t.size(); ++i) {
        num += (log_t[i] - mt) * (log_metric[i] - mm);
        den += (log_t[i] - mt) * (log_t[i] - mt);
    }
    double slope = num / den;
    add(rep, "log-log slope of avg grad norm <= -0.35", slope <= -0.35, slope, -0.35);
    return rep;
}

// -------------------------------------------------------------- adagrad

VerifyReport suite_adagrad() {
    VerifyReport rep{"adagrad", {}};
    Rng rng = make_rng(0x66ffULL);
    std::uint64_t failures = 0;
    const std::uint64_t runs = 1000, horizon = 200;
    for (std::uint64_t r = 0; r < runs; ++r) {
        Objective obj = (r % 2 == 0) ? Objective::quadratic({2.0, 1.0, 1.0, 2.0})
                                     : Objective::logistic_synthetic();
        const std::size_t d = obj.dim();
        double radius = 0.5 + 2.5 * uniform01(rng);
        Domain domain = Domain::l2_ball(obj.minimizer(), radius);
        double sigma = uniform01(rng);
        GradOracle oracle(obj, NoiseModel::gaussian(std::max(sigma, 1e-3)));
        const std::size_t m = (r % 3 == 0) ? 5 : 10;
        AttackSpec attack;
        switch (r % 4) {
            case 0: attack = AttackSpec::none(); break;
            case 1: attack = AttackSpec::sign_flip(); break;
            case 2: attack = AttackSpec::ipm(); break;
            default: attack = AttackSpec::alie(); break;
        }
        AggregatorSpec agg;
        switch (r % 5) {
            case 0: agg = AggregatorSpec::mean(); break;
            case 1: agg = AggregatorSpec::cwmed(); break;
            case 2: agg = AggregatorSpec::cwtm(1); break;
            case 3: agg = AggregatorSpec::geomed(); break;
            default: agg = AggregatorSpec::mfm(8.0 * radius); break;
        }
        std::vector<bool> mask(m, false);
        mask[0] = true;
        if (m == 10) mask[1] = true;
        Vector x = obj.minimizer();
        for (std::size_t c = 0; c < d; ++c) x[c] += 0.5 * radius * normal01(rng);
        x = project(domain, x);
        AdaGradState state{0.1 + 1.9 * uniform01(rng), 0.0};
        AdagradTrace trace;
        trace.eta0 = state.eta0;
        for (std::uint64_t t = 1; t <= horizon; ++t) {
            std::vector<Vector> msgs(m);
            for (std::size_t i = 0; i < m; ++i)
                msgs[i] = oracle.stochastic_gradient_uncharged(x, rng);
            msgs = apply_attack(attack, msgs, mask, {t});
            Vector g = aggregate(agg, msgs);
            trace.iterates.push_back(x);
            trace.gradients.push_back(g);
            x = adagrad_step(state, x, g, domain);
        }
        if (!check_adagrad_regret(trace, obj.minimizer(), domain.diameter())) ++failures;
    }
    add(rep, "regret inequality holds on every trace", failures == 0, (double)failures, 0.0);
    return rep;
}

// ------------------------------------------------------------ sgd_bounds

VerifyReport suite_sgd_bounds() {
    VerifyReport rep{"sgd_bounds", {}};
    Objective obj = Objective::quadratic({2.0, 1.0, 1.0, 2.0});
    const double eta = 0.1, big_l = obj.smoothness();
    const std::uint64_t horizon = 500, seeds = 20;
    const Vector start = {1.0, 1.0};
    const double delta1 = obj.value(start) - obj.optimal_value();
    const Vector bias = {0.3, 0.0};
    const double v_noise = 0.5;
    std::uint64_t failures = 0;
    double worst_ratio = 0.0;
    for (std::uint64_t s = 0; s < seeds; ++s) {
        Rng rng = make_rng(derive_seed(17, s));
        Vector x = start;
        long double acc = 0.0L;
        for (std::uint64_t t = 1; t <= horizon; ++t) {
            Vector grad = obj.gradient(x);
            acc += (long double)vecmath::dot(grad, grad);
            Vector g = vecmath::add(grad, bias);
            for (std::size_t c = 0; c < g.size(); ++c)
                g[c] += v_noise / std::sqrt(2.0) * normal01(rng);
            x = sgd_step(x, g, eta, Domain::unconstrained());
        }
        double avg = (double)(acc / (long double)horizon);
        double bound = 2.0 * delta1 / ((double)horizon * eta) + eta * big_l * v_noise * v_noise +
                       vecmath::dot(bias, bias);
        worst_ratio = std::max(worst_ratio, avg / bound);
        if (avg > 2.0 * bound) ++failures;
    }
    add(rep, "biased-SGD bound with 2x slack on all seeds", failures == 0, worst_ratio, 2.0);
    return rep;
}

// ---------------------------------------------------------- determinism

std::string matrix_config(std::size_t variant) {
    std::string method, attack, switching, extra;
    switch (variant % 5) {
        case 0: method = R"({"kind":"sgd"})"; break;
        case 1: method = R"({"kind":"momentum","beta":0.9})"; break;
        case 2: method = R"({"kind":"alg1_mlmc"})"; break;
        case 3: method = R"({"kind":"alg2_opt1"})"; break;
        default: method = R"({"kind":"alg2_opt2"})"; break;
    }
    // mean-based attacks reject all-Byzantine rounds, which within-round
    // flips can produce; pair that switching with sign_flip only
    if (variant % 4 == 3) {
        attack = R"({"kind":"sign_flip"})";
    } else {
        switch (variant % 3) {
            case 0: attack = R"({"kind":"sign_flip"})"; break;
            case 1: attack = R"({"kind":"ipm","epsilon":0.1})"; break;
            default: attack = R"({"kind":"alie"})"; break;
        }
    }
    switch (variant % 4) {
        case 0: switching = R"({"kind":"static","byz_indices":[0]})"; break;
        case 1: switching = R"({"kind":"periodic","k":7,"delta":0.2})"; break;
        case 2: switching = R"({"kind":"bernoulli","p":0.1,"duration":5,"delta_max":0.3})"; break;
        default:
            switching =
                R"({"kind":"within_round","base":{"kind":"static","byz_indices":[0]},"flip_probability":0.5})";
            break;
    }
    bool coupled = variant % 2 == 0;
    return std::string(R"({"objective":{"kind":"quadratic","a":[2,1,1,2]},)") +
           R"("noise":{"kind":"bounded_ball","v":1.0},"start":[1,1],"m":5,)" +
           R"("method":)" + method + R"(,"aggregator":{"kind":"cwmed"},)" +
           R"("attack":)" + attack + R"(,"switching":)" + switching + "," +
           R"("lr":{"kind":"fixed","eta":0.01},"T":100,"seed":42,"kappa_delta":0.5,)" +
           R"("coupled_batches":)" + (coupled ? "true" : "false") + "}";
}

VerifyReport suite_determinism() {
    VerifyReport rep{"determinism", {}};
    bool identical = true, accounted = true, bernoulli_ok = true, static_ok = true;
    double worst = 0.0;
    for (std::size_t variant = 0; variant < 12; ++variant) {
        RunConfig cfg = parse_config(matrix_config(variant));
        RunTrace a = run(cfg);
        RunTrace b = run(cfg);
        if (trace_csv({a}) != trace_csv({b})) identical = false;
        if (a.oracle_calls != (std::uint64_t)cfg.m * a.total_cost) accounted = false;
        for (const RoundRecord& r : a.rounds) {
            if (cfg.switching.kind == SwitchingSpec::Kind::Bernoulli &&
                r.byz_fraction > cfg.switching.delta_max + 1e-15)
                bernoulli_ok = false;
            if (cfg.switching.kind == SwitchingSpec::Kind::Static && r.dynamic_round)
                static_ok = false;
            worst = std::max(worst, r.byz_fraction);
        }
    }
    add(rep, "identical seed gives identical CSV", identical, identical ? 1.0 : 0.0, 1.0);
    add(rep, "oracle calls equal m x total cost", accounted, accounted ? 1.0 : 0.0, 1.0);
    add(rep, "bernoulli fraction never exceeds delta_max", bernoulli_ok, worst, 0.5);
    add(rep, "static switching yields no dynamic rounds", static_ok, static_ok ? 1.0 : 0.0,
        1.0);
    return rep;
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names = {
        "mlmc",          "aggregation",    "failsafe",       "mfm",
        "momentum_attack", "appf_quadratic", "static_scaling", "adagrad",
        "sgd_bounds",    "determinism"};
    return names;
}

VerifyReport verify_suite(const std::string& name) {
    if (name == "mlmc") return suite_mlmc();
    if (name == "aggregation") return suite_aggregation();
    if (name == "failsafe") return suite_failsafe();
    if (name == "mfm") return suite_mfm();
    if (name == "momentum_attack") return suite_momentum_attack();
    if (name == "appf_quadratic") return suite_appf_quadratic();
    if (name == "static_scaling") return suite_static_scaling();
    if (name == "adagrad") return suite_adagrad();
    if (name == "sgd_bounds") return suite_sgd_bounds();
    if (name == "determinism") return suite_determinism();
    throw std::invalid_argument("unknown verify suite: " + name);
}

}  // namespace byzsim

#include "byzsim/run.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

namespace byzsim {

namespace {

// seed namespaces for the per-round streams
constexpr std::uint64_t kNsSchedule = 1;
constexpr std::uint64_t kNsLevel = 2;
constexpr std::uint64_t kNsWorker = 3;

bool uses_mlmc(MethodSpec::Kind k) {
    return k == MethodSpec::Kind::Alg1Mlmc || k == MethodSpec::Kind::Alg2Opt1 ||
           k == MethodSpec::Kind::Alg2Opt2;
}

struct RoundMasks {
    std::vector<bool> level0, level_jm1, level_j;
    double byz_fraction = 0.0;
    bool dynamic_round = false;
};

double fraction(const std::vector<bool>& mask) {
    std::size_t c = 0;
    for (bool b : mask)
        if (b) ++c;
    return (double)c / (double)mask.size();
}

std::vector<bool> momentum_mask(std::uint64_t t, double alpha, std::size_t m) {
    std::vector<bool> mask(m, false);
    for (std::size_t i = 1; i <= std::min<std::size_t>(3, m); ++i)
        mask[i - 1] = momentum_attack_assignment(t, alpha, i);
    return mask;
}

// Union masks per MLMC level over the computation indices of each batch, plus
// the round's dynamic classification.
RoundMasks round_masks(const ByzantineSchedule& sched, const AttackSpec& attack,
                       std::uint64_t t, int level, bool truncated, bool coupled,
                       std::size_t m) {
    RoundMasks rm;
    if (attack.kind == AttackSpec::Kind::MomentumDynamic) {
        // the attack carries its own rotating single-Byzantine schedule
        std::vector<bool> mask = momentum_mask(t, attack.alpha, m);
        rm.level0 = rm.level_jm1 = rm.level_j = mask;
        rm.byz_fraction = fraction(mask);
        return rm;
    }
    std::uint64_t k_total = 1;
    if (!truncated) {
        std::uint64_t half = 1ULL << (level - 1), full = 1ULL << level;
        k_total = coupled ? full : 1 + half + full;
    }
    if (!sched.within_round()) {
        rm.level0 = rm.level_jm1 = rm.level_j = sched.base_mask(t);
        rm.byz_fraction = fraction(rm.level0);
        return rm;
    }
    std::vector<std::vector<bool>> masks;
    masks.reserve(k_total);
    bool varies = false;
    for (std::uint64_t k = 1; k <= k_total; ++k) {
        masks.push_back(sched.mask_at(t, k));
        if (masks.back() != masks[0]) varies = true;
    }
    if (!varies) {
        rm.level0 = rm.level_jm1 = rm.level_j = masks[0];
        rm.byz_fraction = fraction(rm.level0);
        return rm;
    }
    rm.dynamic_round = true;
    auto unite = [&](std::uint64_t lo, std::uint64_t hi) {
        std::vector<bool> u(m, false);
        for (std::uint64_t k = lo; k <= hi; ++k)
            for (std::size_t i = 0; i < m; ++i)
                if (masks[k - 1][i]) u[i] = true;
        return u;
    };
    for (const auto& mk : masks) rm.byz_fraction = std::max(rm.byz_fraction, fraction(mk));
    if (truncated) {
        rm.level0 = rm.level_jm1 = rm.level_j = masks[0];
        return rm;
    }
    std::uint64_t half = 1ULL << (level - 1), full = 1ULL << level;
    if (coupled) {
        rm.level0 = masks[0];
        rm.level_jm1 = unite(1, half);
        rm.level_j = unite(1, full);
    } else {
        rm.level0 = masks[0];
        rm.level_jm1 = unite(2, half + 1);
        rm.level_j = unite(half + 2, half + 1 + full);
    }
    return rm;
}

}  // namespace

RunTrace run(const RunConfig& cfg) {
    const std::size_t m = cfg.m;
    const std::uint64_t t_end = cfg.horizon;
    const Objective& obj = cfg.objective;
    GradOracle oracle(obj, cfg.noise);
    ByzantineSchedule sched(cfg.switching, m, t_end, derive_seed(cfg.seed, kNsSchedule));

    const int jmax = cfg.jmax_override.value_or(floor_log2(std::max<std::uint64_t>(2, t_end)));
    MlmcParams params = MlmcParams::plain(std::max<std::uint64_t>(2, t_end), jmax);
    params.m = m;
    params.kappa_delta = cfg.kappa_delta;
    params.noise_bound = cfg.noise_bound_v;
    if (cfg.method.kind == MethodSpec::Kind::Alg2Opt1)
        params.option = MlmcParams::Option::FailsafeOpt1;
    if (cfg.method.kind == MethodSpec::Kind::Alg2Opt2)
        params.option = MlmcParams::Option::FailsafeOpt2;
    const double universal_c = params.universal_c();

    double eta_fixed = cfg.lr.eta;
    if (cfg.lr.kind == LrSpec::Kind::Theoretical) {
        ObjectiveMeta meta = make_meta(obj, cfg.start);
        LrConstants k;
        k.delta1 = meta.delta1;
        k.diameter = cfg.domain.diameter();
        k.sigma = cfg.lr.sigma;
        k.smoothness = obj.smoothness();
        k.gamma = cfg.lr.gamma;
        k.cv = cfg.lr.cv > 0.0 ? cfg.lr.cv : universal_c * cfg.noise_bound_v;
        k.horizon = std::max<std::uint64_t>(2, t_end);
        eta_fixed = theoretical_lr(cfg.lr.formula, k);
    }
    AdaGradState adagrad{cfg.lr.eta0, 0.0};

    MomentumState momentum(cfg.method.kind == MethodSpec::Kind::Momentum ? cfg.method.beta : 0.0,
                           m, obj.dim());

    RunTrace trace;
    trace.seed = cfg.seed;
    Vector x = project(cfg.domain, cfg.start);
    long double grad_acc = 0.0L;
    trace.min_gap = std::numeric_limits<double>::infinity();

    for (std::uint64_t t = 1; t <= t_end; ++t) {
        RoundRecord rec;
        rec.t = t;
        rec.gap = obj.value(x) - obj.optimal_value();
        Vector grad = obj.gradient(x);
        rec.grad_norm_sq = vecmath::dot(grad, grad);
        grad_acc += rec.grad_norm_sq;
        trace.min_gap = std::min(trace.min_gap, rec.gap);
        AttackContext ctx{t};

        Vector g_round;
        if (!uses_mlmc(cfg.method.kind)) {
            RoundMasks rm = round_masks(sched, cfg.attack, t, 1, true, cfg.coupled_batches, m);
            std::vector<Vector> msgs(m);
            for (std::size_t i = 0; i < m; ++i) {
                Rng rng = make_rng(derive_seed(cfg.seed, kNsWorker, t, i));
                msgs[i] = oracle.stochastic_gradient_uncharged(x, rng);
                oracle.charge(1);
            }
            msgs = apply_attack(cfg.attack, msgs, rm.level0, ctx);
            if (cfg.method.kind == MethodSpec::Kind::Momentum) {
                momentum_update(momentum, msgs);
                g_round = aggregate(cfg.aggregator, momentum.momenta);
            } else {
                g_round = aggregate(cfg.aggregator, msgs);
            }
            rec.cost = 1;
            rec.level = 0;
            rec.byz_fraction = rm.byz_fraction;
            rec.dynamic_round = rm.dynamic_round;
        } else {
            Rng level_rng = make_rng(derive_seed(cfg.seed, kNsLevel, t));
            int level = sample_level(level_rng);
            bool truncated = level > params.jmax;
            RoundMasks rm =
                round_masks(sched, cfg.attack, t, level, truncated, cfg.coupled_batches, m);
            rec.level = level;
            rec.cost = level_cost(level, params.jmax);
            rec.byz_fraction = rm.byz_fraction;
            rec.dynamic_round = rm.dynamic_round;

            const std::uint64_t half = truncated ? 0 : (1ULL << (level - 1));
            const std::uint64_t full = truncated ? 0 : (1ULL << level);
            // honest per-level batch messages
            std::vector<Vector> lvl0(m), lvl_jm1(m), lvl_j(m);
            for (std::size_t i = 0; i < m; ++i) {
                Rng rng = make_rng(derive_seed(cfg.seed, kNsWorker, t, i));
                if (cfg.noise.kind == NoiseModel::Kind::Drift) {
                    lvl0[i] = oracle.lmgo_value(x, 1);
                    if (!truncated) {
                        lvl_jm1[i] = oracle.lmgo_value(x, half);
                        lvl_j[i] = oracle.lmgo_value(x, full);
                    }
                } else if (truncated) {
                    lvl0[i] = oracle.stochastic_gradient_uncharged(x, rng);
                } else if (cfg.coupled_batches) {
                    Vector sum(obj.dim(), 0.0);
                    for (std::uint64_t k = 1; k <= full; ++k) {
                        Vector s = oracle.stochastic_gradient_uncharged(x, rng);
                        if (k == 1) lvl0[i] = s;
                        for (std::size_t c = 0; c < sum.size(); ++c) sum[c] += s[c];
                        if (k == half) lvl_jm1[i] = vecmath::scale(sum, 1.0 / (double)half);
                    }
                    lvl_j[i] = vecmath::scale(sum, 1.0 / (double)full);
                } else {
                    lvl0[i] = oracle.stochastic_gradient_uncharged(x, rng);
                    Vector sum(obj.dim(), 0.0);
                    for (std::uint64_t k = 0; k < half; ++k) {
                        Vector s = oracle.stochastic_gradient_uncharged(x, rng);
                        for (std::size_t c = 0; c < sum.size(); ++c) sum[c] += s[c];
                    }
                    lvl_jm1[i] = vecmath::scale(sum, 1.0 / (double)half);
                    std::fill(sum.begin(), sum.end(), 0.0);
                    for (std::uint64_t k = 0; k < full; ++k) {
                        Vector s = oracle.stochastic_gradient_uncharged(x, rng);
                        for (std::size_t c = 0; c < sum.size(); ++c) sum[c] += s[c];
                    }
                    lvl_j[i] = vecmath::scale(sum, 1.0 / (double)full);
                }
                oracle.charge(rec.cost);
            }
            lvl0 = apply_attack(cfg.attack, lvl0, rm.level0, ctx);
            if (!truncated) {
                lvl_jm1 = apply_attack(cfg.attack, lvl_jm1, rm.level_jm1, ctx);
                lvl_j = apply_attack(cfg.attack, lvl_j, rm.level_j, ctx);
            }
            auto agg_for_level = [&](int j) {
                if (cfg.method.kind == MethodSpec::Kind::Alg2Opt2) {
                    double thr = 2.0 * universal_c * cfg.noise_bound_v /
                                 std::sqrt(std::pow(2.0, j));
                    return AggregatorSpec::mfm(thr);
                }
                return cfg.aggregator;
            };
            Vector agg0 = aggregate(agg_for_level(0), lvl0);
            Vector agg_jm1, agg_j;
            if (!truncated) {
                agg_jm1 = aggregate(agg_for_level(level - 1), lvl_jm1);
                agg_j = aggregate(agg_for_level(level), lvl_j);
            }
            LevelOracle lo = [&](int j) -> Vector {
                if (j == 0) return agg0;
                if (j == level) return agg_j;
                return agg_jm1;
            };
            MlmcOutput out = mlmc_from_oracle(lo, params, level_rng, level);
            rec.failsafe = out.failsafe_triggered;
            g_round = out.gradient;
        }

        if (cfg.lr.kind == LrSpec::Kind::AdagradNorm) {
            x = adagrad_step(adagrad, x, g_round, cfg.domain);
        } else {
            x = sgd_step(x, g_round, eta_fixed, cfg.domain);
        }
        trace.total_cost += rec.cost;
        trace.rounds.push_back(std::move(rec));
    }

    trace.final_iterate = x;
    trace.final_gap = obj.value(x) - obj.optimal_value();
    trace.min_gap = std::min(trace.min_gap, trace.final_gap);
    trace.avg_grad_norm_sq = (double)(grad_acc / (long double)t_end);
    trace.oracle_calls = oracle.calls();
    return trace;
}

SweepResult sweep(const std::string& base_config_json, const std::string& axis_path,
                  const std::vector<std::string>& axis_values, std::uint64_t seeds) {
    if (seeds < 1) throw std::invalid_argument("sweep: seeds must be >= 1");
    std::vector<std::string> values = axis_values;
    if (values.empty()) values.push_back("");  // no axis: base config only

    const RunConfig base = parse_config(base_config_json);  // validate early
    SweepResult result;
    std::vector<RunConfig> configs;
    std::uint64_t run_id = 0;
    for (const std::string& v : values) {
        std::string doc = base_config_json;
        if (!axis_path.empty()) doc = set_json_path(base_config_json, axis_path, v);
        for (std::uint64_t s = 0; s < seeds; ++s) {
            RunConfig cfg = parse_config(doc);
            cfg.seed = splitmix64(base.seed ^ splitmix64(run_id));
            configs.push_back(std::move(cfg));
            result.points.push_back({axis_path, v});
            ++run_id;
        }
    }
    result.traces.resize(configs.size());

    std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("BYZSIM_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) threads = (std::size_t)v;
    }
    threads = std::min(threads, configs.size());
    if (threads <= 1) {
        for (std::size_t i = 0; i < configs.size(); ++i) {
            result.traces[i] = run(configs[i]);
            result.traces[i].run_id = i;
        }
        return result;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= configs.size()) return;
            result.traces[i] = run(configs[i]);
            result.traces[i].run_id = i;
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return result;
}

}  // namespace byzsim

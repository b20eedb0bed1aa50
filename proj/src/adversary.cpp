#include "byzsim/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace byzsim {

SwitchingSpec SwitchingSpec::static_set(std::vector<std::size_t> byz_indices) {
    SwitchingSpec s;
    s.kind = Kind::Static;
    std::sort(byz_indices.begin(), byz_indices.end());
    s.byz_indices = std::move(byz_indices);
    return s;
}

SwitchingSpec SwitchingSpec::periodic(std::uint64_t k, double delta) {
    if (k < 1) throw std::invalid_argument("periodic: K must be >= 1");
    if (delta < 0.0 || delta >= 0.5) throw std::invalid_argument("periodic: delta in [0, 1/2)");
    SwitchingSpec s;
    s.kind = Kind::Periodic;
    s.period = k;
    s.delta = delta;
    return s;
}

SwitchingSpec SwitchingSpec::bernoulli(double p, std::uint64_t duration, double delta_max) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("bernoulli: p in [0,1]");
    if (duration < 1) throw std::invalid_argument("bernoulli: duration must be >= 1");
    if (delta_max < 0.0 || delta_max >= 1.0)
        throw std::invalid_argument("bernoulli: delta_max in [0,1)");
    SwitchingSpec s;
    s.kind = Kind::Bernoulli;
    s.p = p;
    s.duration = duration;
    s.delta_max = delta_max;
    return s;
}

SwitchingSpec SwitchingSpec::within_round(SwitchingSpec base, double flip_probability) {
    if (base.kind == Kind::WithinRound)
        throw std::invalid_argument("within_round: base must not itself be within_round");
    if (flip_probability < 0.0 || flip_probability > 1.0)
        throw std::invalid_argument("within_round: flip_probability in [0,1]");
    SwitchingSpec s;
    s.kind = Kind::WithinRound;
    s.base = std::make_shared<SwitchingSpec>(std::move(base));
    s.flip_probability = flip_probability;
    return s;
}

namespace {

// seed namespaces so different strategies never share a stream
constexpr std::uint64_t kNsPeriodic = 1;
constexpr std::uint64_t kNsBernoulli = 2;
constexpr std::uint64_t kNsFlip = 3;

std::vector<std::vector<bool>> build_base(const SwitchingSpec& spec, std::size_t m,
                                          std::uint64_t horizon, std::uint64_t seed) {
    std::vector<std::vector<bool>> base(horizon, std::vector<bool>(m, false));
    switch (spec.kind) {
        case SwitchingSpec::Kind::Static: {
            std::vector<bool> mask(m, false);
            for (std::size_t i : spec.byz_indices) {
                if (i >= m) throw std::invalid_argument("static: index out of range");
                mask[i] = true;
            }
            for (auto& row : base) row = mask;
            break;
        }
        case SwitchingSpec::Kind::Periodic: {
            const std::size_t count = (std::size_t)(spec.delta * (double)m);
            std::vector<std::size_t> idx(m);
            std::vector<bool> mask(m, false);
            for (std::uint64_t t = 1; t <= horizon; ++t) {
                if ((t - 1) % spec.period == 0) {
                    std::iota(idx.begin(), idx.end(), 0);
                    Rng rng = make_rng(derive_seed(seed, kNsPeriodic, t));
                    std::shuffle(idx.begin(), idx.end(), rng);
                    std::fill(mask.begin(), mask.end(), false);
                    for (std::size_t j = 0; j < count; ++j) mask[idx[j]] = true;
                }
                base[t - 1] = mask;
            }
            break;
        }
        case SwitchingSpec::Kind::Bernoulli: {
            const std::size_t cap = (std::size_t)(spec.delta_max * (double)m);
            std::vector<std::uint64_t> remaining(m, 0);
            for (std::uint64_t t = 1; t <= horizon; ++t) {
                Rng rng = make_rng(derive_seed(seed, kNsBernoulli, t));
                std::size_t active = 0;
                for (std::size_t i = 0; i < m; ++i)
                    if (remaining[i] > 0) ++active;
                for (std::size_t i = 0; i < m; ++i) {
                    bool trigger = uniform01(rng) < spec.p;
                    if (!trigger) continue;
                    if (remaining[i] > 0) {
                        remaining[i] = spec.duration;  // re-trigger restarts the window
                    } else if (active < cap) {
                        remaining[i] = spec.duration;
                        ++active;
                    }  // else: truncated, would exceed the cap
                }
                for (std::size_t i = 0; i < m; ++i) {
                    if (remaining[i] > 0) {
                        base[t - 1][i] = true;
                        --remaining[i];
                    }
                }
            }
            break;
        }
        case SwitchingSpec::Kind::WithinRound:
            return build_base(*spec.base, m, horizon, seed);
    }
    return base;
}

}  // namespace

ByzantineSchedule::ByzantineSchedule(SwitchingSpec spec, std::size_t m, std::uint64_t horizon,
                                     std::uint64_t seed)
    : spec_(std::move(spec)), m_(m), horizon_(horizon), seed_(seed) {
    if (m < 1 || horizon < 1) throw std::invalid_argument("ByzantineSchedule: m, T must be >= 1");
    base_ = build_base(spec_, m_, horizon_, seed_);
}

const std::vector<bool>& ByzantineSchedule::base_mask(std::uint64_t t) const {
    if (t < 1 || t > horizon_) throw std::invalid_argument("base_mask: round out of range");
    return base_[t - 1];
}

std::vector<bool> ByzantineSchedule::mask_at(std::uint64_t t, std::uint64_t k) const {
    std::vector<bool> mask = base_mask(t);
    if (spec_.kind != SwitchingSpec::Kind::WithinRound || spec_.flip_probability <= 0.0)
        return mask;
    if (k < 1) throw std::invalid_argument("mask_at: k must be >= 1");
    Rng rng = make_rng(derive_seed(seed_, kNsFlip, t, k));
    for (std::size_t i = 0; i < m_; ++i) {
        if (uniform01(rng) < spec_.flip_probability) mask[i] = !mask[i];
    }
    return mask;
}

bool ByzantineSchedule::flipped_at(std::uint64_t t, std::uint64_t k) const {
    if (spec_.kind != SwitchingSpec::Kind::WithinRound || spec_.flip_probability <= 0.0)
        return false;
    return mask_at(t, k) != base_mask(t);
}

std::vector<std::size_t> byzantine_set(const SwitchingSpec& spec, std::uint64_t t,
                                       std::uint64_t k, std::size_t m, std::uint64_t horizon,
                                       std::uint64_t seed) {
    ByzantineSchedule sched(spec, m, horizon, seed);
    std::vector<bool> mask = sched.mask_at(t, k);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < m; ++i)
        if (mask[i]) out.push_back(i);
    return out;
}

AttackSpec AttackSpec::sign_flip() {
    AttackSpec s;
    s.kind = Kind::SignFlip;
    return s;
}

AttackSpec AttackSpec::ipm(double epsilon) {
    AttackSpec s;
    s.kind = Kind::Ipm;
    s.epsilon = epsilon;
    return s;
}

AttackSpec AttackSpec::alie(std::optional<double> z) {
    AttackSpec s;
    s.kind = Kind::Alie;
    s.alie_z = z;
    return s;
}

AttackSpec AttackSpec::fixed_shift(Vector v) {
    AttackSpec s;
    s.kind = Kind::FixedShift;
    s.shift = std::move(v);
    return s;
}

AttackSpec AttackSpec::momentum_dynamic(double alpha, Vector v) {
    if (alpha <= 0.0 || alpha > 1.0 / 6.0)
        throw std::invalid_argument("momentum_dynamic: alpha in (0, 1/6]");
    AttackSpec s;
    s.kind = Kind::MomentumDynamic;
    s.alpha = alpha;
    s.shift = std::move(v);
    return s;
}

double normal_quantile(double p) {
    if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("normal_quantile: p in (0,1)");
    // Acklam's rational approximation, polished with one Halley step.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        double q = p - 0.5;
        double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    return x - u / (1.0 + x * u / 2.0);
}

double alie_z_auto(std::size_t m, std::size_t byz_count) {
    if (byz_count >= m) throw std::invalid_argument("alie_z_auto: byz_count must be < m");
    double s = std::floor((double)m / 2.0 + 1.0);
    double q = ((double)m - s) / (double)(m - byz_count);
    if (q <= 0.0 || q >= 1.0) throw std::invalid_argument("alie_z_auto: degenerate quantile");
    return normal_quantile(q);
}

std::vector<Vector> apply_attack(const AttackSpec& spec, const std::vector<Vector>& honest_msgs,
                                 const std::vector<bool>& byz_mask, const AttackContext& ctx) {
    const std::size_t m = honest_msgs.size();
    if (byz_mask.size() != m) throw std::invalid_argument("apply_attack: mask size mismatch");
    std::vector<Vector> out = honest_msgs;
    std::vector<std::size_t> byz, honest;
    for (std::size_t i = 0; i < m; ++i) (byz_mask[i] ? byz : honest).push_back(i);
    if (byz.empty() || spec.kind == AttackSpec::Kind::None) return out;
    const std::size_t d = honest_msgs[0].size();

    switch (spec.kind) {
        case AttackSpec::Kind::SignFlip:
            for (std::size_t i : byz) out[i] = vecmath::scale(honest_msgs[i], -1.0);
            break;
        case AttackSpec::Kind::Ipm:
        case AttackSpec::Kind::Alie: {
            if (honest.empty())
                throw std::invalid_argument("apply_attack: no honest workers for mean-based attack");
            std::vector<Vector> hm;
            hm.reserve(honest.size());
            for (std::size_t i : honest) hm.push_back(honest_msgs[i]);
            Vector mean = vecmath::mean(hm);
            Vector msg;
            if (spec.kind == AttackSpec::Kind::Ipm) {
                msg = vecmath::scale(mean, -spec.epsilon);
            } else {
                double z = spec.alie_z ? *spec.alie_z : alie_z_auto(m, byz.size());
                Vector sd(d, 0.0);
                for (std::size_t c = 0; c < d; ++c) {
                    long double acc = 0.0L;
                    for (const Vector& g : hm) {
                        long double dlt = g[c] - mean[c];
                        acc += dlt * dlt;
                    }
                    sd[c] = std::sqrt((double)(acc / (long double)hm.size()));
                }
                msg = mean;
                for (std::size_t c = 0; c < d; ++c) msg[c] -= z * sd[c];
            }
            for (std::size_t i : byz) out[i] = msg;
            break;
        }
        case AttackSpec::Kind::FixedShift:
            if (spec.shift.size() != d) throw std::invalid_argument("apply_attack: shift dim");
            for (std::size_t i : byz) out[i] = vecmath::add(honest_msgs[i], spec.shift);
            break;
        case AttackSpec::Kind::MomentumDynamic: {
            Vector vt = momentum_attack_vector(ctx.round, spec.alpha, spec.shift);
            for (std::size_t i : byz) out[i] = vecmath::add(honest_msgs[i], vt);
            break;
        }
        case AttackSpec::Kind::None:
            break;
    }
    return out;
}

double momentum_attack_coeff(std::uint64_t t, double alpha) {
    if (t < 1) throw std::invalid_argument("momentum_attack_coeff: t >= 1");
    const std::uint64_t epoch_len = (std::uint64_t)std::llround(1.0 / alpha);
    const std::uint64_t third = std::max<std::uint64_t>(
        1, (std::uint64_t)std::llround(1.0 / (3.0 * alpha)));
    if (epoch_len <= 2 * third)
        throw std::invalid_argument("momentum_attack_coeff: degenerate epoch split");
    if (t <= epoch_len) {
        if (t == third + 1 || t == 2 * third + 1) return 1.0 / alpha;
        return 1.0;
    }
    // Start of each Byzantine third: restore the bias, fully decayed while the
    // worker was honest, back to exactly v. The decay span is epoch - (own
    // third length); all spans coincide with 2/(3a) when 1/(3a) is integral.
    std::uint64_t r = (t - 1) % epoch_len + 1;
    std::uint64_t decay = 0;
    if (r == 1 || r == third + 1) {
        decay = epoch_len - third;
    } else if (r == 2 * third + 1) {
        decay = 2 * third;
    } else {
        return 1.0;
    }
    return (1.0 - std::pow(1.0 - alpha, (double)(decay + 1))) / alpha;
}

Vector momentum_attack_vector(std::uint64_t t, double alpha, const Vector& v) {
    return vecmath::scale(v, momentum_attack_coeff(t, alpha));
}

bool momentum_attack_assignment(std::uint64_t t, double alpha, std::size_t worker) {
    if (worker < 1 || worker > 3)
        throw std::invalid_argument("momentum_attack_assignment: worker in {1,2,3}");
    const std::uint64_t epoch_len = (std::uint64_t)std::llround(1.0 / alpha);
    const std::uint64_t third = std::max<std::uint64_t>(
        1, (std::uint64_t)std::llround(1.0 / (3.0 * alpha)));
    std::uint64_t r = t % epoch_len;
    if (r == 0) r = epoch_len;
    if (worker == 3) return r >= 2 * third + 1;  // covers any epoch remainder
    return r >= (worker - 1) * third + 1 && r <= worker * third;
}

ThetaReport verify_theta_bounds(double alpha, double v, std::uint64_t horizon) {
    const std::uint64_t epoch_len = (std::uint64_t)std::llround(1.0 / alpha);
    ThetaReport rep;
    rep.theta_floor = std::pow(5.0 / 6.0, 4.0);
    rep.theta_min_observed = 1.0;
    rep.pass = true;

    double b[3] = {0.0, 0.0, 0.0};
    std::size_t prev_byz = 0;  // 0 = none yet
    for (std::uint64_t t = 1; t <= horizon; ++t) {
        double coeff = momentum_attack_coeff(t, alpha);
        std::size_t byz = 0;
        for (std::size_t i = 1; i <= 3; ++i)
            if (momentum_attack_assignment(t, alpha, i)) byz = i;
        if (byz != prev_byz) ++rep.switch_rounds;
        prev_byz = byz;
        for (std::size_t i = 1; i <= 3; ++i) {
            double ind = (i == byz) ? 1.0 : 0.0;
            if (t == 1) {
                b[i - 1] = coeff * v * ind;  // m_1 = g_1 initialization
            } else {
                b[i - 1] = (1.0 - alpha) * b[i - 1] + alpha * coeff * v * ind;
            }
            if (t > epoch_len) {
                if (i == byz) {
                    double err = std::abs(b[i - 1] - v);
                    rep.max_bias_error = std::max(rep.max_bias_error, err);
                    if (err > 1e-12) rep.pass = false;
                }
                double theta = v == 0.0 ? 1.0 : b[i - 1] / v;
                rep.theta_min_observed = std::min(rep.theta_min_observed, theta);
                if (theta < rep.theta_floor - 1e-12 || theta > 1.0 + 1e-12) rep.pass = false;
            }
        }
    }
    return rep;
}

}  // namespace byzsim

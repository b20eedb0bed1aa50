#include "byzsim/estimators.hpp"

#include <cmath>
#include <stdexcept>

namespace byzsim {

int floor_log2(std::uint64_t t) {
    if (t < 1) throw std::invalid_argument("floor_log2: t must be >= 1");
    int j = 0;
    while (t >>= 1) ++j;
    return j;
}

double universal_coefficient(std::size_t m, std::uint64_t t) {
    if (m < 1 || t < 1) throw std::invalid_argument("universal_coefficient: m, T must be >= 1");
    return std::sqrt(8.0 * std::log(16.0 * (double)m * (double)m * (double)t));
}

MlmcParams MlmcParams::plain(std::uint64_t horizon, std::optional<int> jmax_override) {
    MlmcParams p;
    p.horizon = horizon;
    p.jmax = jmax_override.value_or(floor_log2(horizon));
    p.option = Option::Plain;
    return p;
}

MlmcParams MlmcParams::failsafe_opt1(std::uint64_t horizon, double kappa_delta, std::size_t m,
                                     double noise_bound, std::optional<int> jmax_override) {
    MlmcParams p = plain(horizon, jmax_override);
    p.option = Option::FailsafeOpt1;
    p.kappa_delta = kappa_delta;
    p.m = m;
    p.noise_bound = noise_bound;
    return p;
}

MlmcParams MlmcParams::failsafe_opt2(std::uint64_t horizon, std::size_t m, double noise_bound,
                                     std::optional<int> jmax_override) {
    MlmcParams p = plain(horizon, jmax_override);
    p.option = Option::FailsafeOpt2;
    p.m = m;
    p.noise_bound = noise_bound;
    return p;
}

double MlmcParams::event_coefficient() const {
    switch (option) {
        case Option::FailsafeOpt1:
            return std::sqrt(gamma_dynamic());
        case Option::FailsafeOpt2:
            return 6.0 * std::sqrt(2.0);
        case Option::Plain:
            break;
    }
    throw std::logic_error("event_coefficient: no fail-safe configured");
}

int sample_level(Rng& rng) {
    int j = 1;
    while (j < 64 && (rng() & 1ULL)) ++j;
    return j;
}

bool failsafe_event(const Vector& ghat_j, const Vector& ghat_jm1, int level,
                    const MlmcParams& params) {
    double dist = vecmath::l2_dist(ghat_j, ghat_jm1);
    double rhs = (1.0 + std::sqrt(2.0)) * params.event_coefficient() * params.universal_c() *
                 params.noise_bound / std::sqrt(std::pow(2.0, level));
    return dist <= rhs;
}

std::uint64_t level_cost(int level, int jmax) {
    if (level > jmax) return 1;
    return 1ULL + (1ULL << (level - 1)) + (1ULL << level);
}

MlmcOutput mlmc_from_oracle(const LevelOracle& oracle, const MlmcParams& params, Rng& rng,
                            std::optional<int> forced_level) {
    MlmcOutput out;
    out.level = forced_level ? *forced_level : sample_level(rng);
    if (out.level < 1) throw std::invalid_argument("mlmc_from_oracle: level must be >= 1");
    out.gradient = oracle(0);
    out.per_worker_cost = level_cost(out.level, params.jmax);
    if (out.level > params.jmax) return out;

    Vector gj = oracle(out.level);
    Vector gjm1 = oracle(out.level - 1);
    if (params.option != MlmcParams::Option::Plain &&
        !failsafe_event(gj, gjm1, out.level, params)) {
        out.failsafe_triggered = true;
        return out;
    }
    out.used_correction = true;
    double w = std::pow(2.0, out.level);
    Vector corr = vecmath::sub(gj, gjm1);
    for (std::size_t c = 0; c < out.gradient.size(); ++c) out.gradient[c] += w * corr[c];
    return out;
}

MomentumState::MomentumState(double beta, std::size_t workers, std::size_t dim)
    : beta(beta), momenta(workers, Vector(dim, 0.0)) {
    if (beta < 0.0 || beta >= 1.0) throw std::invalid_argument("MomentumState: beta in [0,1)");
}

void momentum_update(MomentumState& state, const std::vector<Vector>& messages) {
    if (messages.size() != state.momenta.size())
        throw std::invalid_argument("momentum_update: worker count mismatch");
    for (std::size_t i = 0; i < messages.size(); ++i) {
        Vector& mi = state.momenta[i];
        for (std::size_t c = 0; c < mi.size(); ++c)
            mi[c] = state.beta * mi[c] + (1.0 - state.beta) * messages[i][c];
    }
}

}  // namespace byzsim

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "byzsim/aggregators.hpp"
#include "byzsim/rng.hpp"
#include "byzsim/vec.hpp"

namespace byzsim {

/// floor(log2 t) for t >= 1.
int floor_log2(std::uint64_t t);

/// Universal coefficient C = sqrt(8 ln(16 m^2 T)).
double universal_coefficient(std::size_t m, std::uint64_t t);

struct MlmcParams {
    enum class Option { Plain, FailsafeOpt1, FailsafeOpt2 };

    std::uint64_t horizon = 2;  // T
    int jmax = 1;               // floor(log2 T) unless overridden
    Option option = Option::Plain;
    double kappa_delta = 0.0;  // option 1
    std::size_t m = 1;
    double noise_bound = 0.0;  // V, options 1-2

    static MlmcParams plain(std::uint64_t horizon, std::optional<int> jmax_override = {});
    static MlmcParams failsafe_opt1(std::uint64_t horizon, double kappa_delta, std::size_t m,
                                    double noise_bound, std::optional<int> jmax_override = {});
    static MlmcParams failsafe_opt2(std::uint64_t horizon, std::size_t m, double noise_bound,
                                    std::optional<int> jmax_override = {});

    double gamma_dynamic() const { return 2.0 * kappa_delta + 1.0 / (double)m; }
    double gamma_static() const { return kappa_delta + 1.0 / (double)m; }
    /// c_E: sqrt(gamma) for option 1, 6*sqrt(2) for option 2.
    double event_coefficient() const;
    double universal_c() const { return universal_coefficient(m, horizon); }
};

struct MlmcOutput {
    Vector gradient;
    int level = 1;  // sampled J
    bool used_correction = false;
    bool failsafe_triggered = false;
    std::uint64_t per_worker_cost = 1;
};

/// J ~ Geom(1/2) on {1, 2, ...}: fair-coin flips until first success, capped at 64.
int sample_level(Rng& rng);

/// Fail-safe event of the level-distance filter: true iff
/// ||ghat_J - ghat_Jm1|| <= (1+sqrt2) c_E C V / sqrt(2^J).
bool failsafe_event(const Vector& ghat_j, const Vector& ghat_jm1, int level,
                    const MlmcParams& params);

/// Per-worker cost charged for a construction at level j (1 when only the
/// single-sample gradient is computed).
std::uint64_t level_cost(int level, int jmax);

using LevelOracle = std::function<Vector(int level)>;

/// MLMC combination g^0 + 2^J (g^J - g^{J-1}) with the geometric level, the
/// Jmax truncation, and (when enabled) the fail-safe gate.
MlmcOutput mlmc_from_oracle(const LevelOracle& oracle, const MlmcParams& params, Rng& rng,
                            std::optional<int> forced_level = {});

struct MomentumState {
    double beta = 0.0;
    std::vector<Vector> momenta;  // one per worker

    MomentumState(double beta, std::size_t workers, std::size_t dim);
};

/// Per-worker update m_i <- beta m_i + (1-beta) g_i.
void momentum_update(MomentumState& state, const std::vector<Vector>& messages);

}  // namespace byzsim

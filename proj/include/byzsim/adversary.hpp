#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "byzsim/rng.hpp"
#include "byzsim/vec.hpp"

namespace byzsim {

struct SwitchingSpec {
    enum class Kind { Static, Periodic, Bernoulli, WithinRound };
    Kind kind = Kind::Static;
    std::vector<std::size_t> byz_indices;  // static
    std::uint64_t period = 1;              // periodic K
    double delta = 0.0;                    // periodic fraction
    double p = 0.0;                        // bernoulli trigger probability
    std::uint64_t duration = 1;            // bernoulli window length
    double delta_max = 0.0;                // bernoulli cap
    std::shared_ptr<SwitchingSpec> base;   // within_round
    double flip_probability = 0.0;         // within_round, per computation

    static SwitchingSpec static_set(std::vector<std::size_t> byz_indices);
    static SwitchingSpec periodic(std::uint64_t k, double delta);
    static SwitchingSpec bernoulli(double p, std::uint64_t duration, double delta_max);
    static SwitchingSpec within_round(SwitchingSpec base, double flip_probability);
};

/// Per-round Byzantine membership, precomputed over the horizon so that the
/// sequential strategies (bernoulli windows, periodic resampling) are replay
/// identical regardless of query order. Masks are indexed by worker.
class ByzantineSchedule {
  public:
    ByzantineSchedule(SwitchingSpec spec, std::size_t m, std::uint64_t horizon,
                      std::uint64_t seed);

    std::size_t workers() const { return m_; }
    std::uint64_t horizon() const { return horizon_; }

    /// Round-level mask before any within-round flips.
    const std::vector<bool>& base_mask(std::uint64_t t) const;
    /// Mask at computation index k >= 1 (applies within-round flips).
    std::vector<bool> mask_at(std::uint64_t t, std::uint64_t k) const;
    /// True when some within-round flip changes membership at (t, k).
    bool flipped_at(std::uint64_t t, std::uint64_t k) const;
    /// True when the spec can vary membership across computation indices.
    bool within_round() const {
        return spec_.kind == SwitchingSpec::Kind::WithinRound && spec_.flip_probability > 0.0;
    }

  private:
    SwitchingSpec spec_;
    std::size_t m_ = 0;
    std::uint64_t horizon_ = 0;
    std::uint64_t seed_ = 0;
    std::vector<std::vector<bool>> base_;  // base_[t-1]
};

/// Convenience wrapper matching the one-shot query shape.
std::vector<std::size_t> byzantine_set(const SwitchingSpec& spec, std::uint64_t t,
                                       std::uint64_t k, std::size_t m, std::uint64_t horizon,
                                       std::uint64_t seed);

struct AttackSpec {
    enum class Kind { None, SignFlip, Ipm, Alie, FixedShift, MomentumDynamic };
    Kind kind = Kind::None;
    double epsilon = 0.1;             // ipm
    std::optional<double> alie_z;     // alie; nullopt = auto from (m, byz count)
    Vector shift;                     // fixed_shift v / momentum_dynamic v
    double alpha = 0.0;               // momentum_dynamic

    static AttackSpec none() { return {}; }
    static AttackSpec sign_flip();
    static AttackSpec ipm(double epsilon = 0.1);
    static AttackSpec alie(std::optional<double> z = {});
    static AttackSpec fixed_shift(Vector v);
    static AttackSpec momentum_dynamic(double alpha, Vector v);
};

/// Standard normal quantile function.
double normal_quantile(double p);

/// Auto z for the ALIE attack, anchored at z ~ 1.22 for m = 17, byz = 8.
double alie_z_auto(std::size_t m, std::size_t byz_count);

struct AttackContext {
    std::uint64_t round = 1;
};

/// Replaces the messages of masked workers per the attack rule; honest
/// entries pass through untouched.
std::vector<Vector> apply_attack(const AttackSpec& spec, const std::vector<Vector>& honest_msgs,
                                 const std::vector<bool>& byz_mask, const AttackContext& ctx);

/// v_t of the momentum-tailored schedule.
Vector momentum_attack_vector(std::uint64_t t, double alpha, const Vector& v);
/// Scalar coefficient v_t / v of the schedule.
double momentum_attack_coeff(std::uint64_t t, double alpha);
/// Worker i in {1,2,3} Byzantine at round t (rotating thirds of each epoch).
bool momentum_attack_assignment(std::uint64_t t, double alpha, std::size_t worker);

struct ThetaReport {
    bool pass = false;
    double theta_min_observed = 0.0;  // over t > 1/alpha
    double theta_floor = 0.0;         // (5/6)^4
    double max_bias_error = 0.0;      // max |b_{t,i} - v| during Byzantine thirds, epochs >= 2
    std::uint64_t switch_rounds = 0;  // rounds where the Byzantine set changed
};

/// Simulates the bias recursion b_t = (1-a) b_{t-1} + a v_t 1{byz} exactly and
/// checks the theta bounds of the three-worker schedule.
ThetaReport verify_theta_bounds(double alpha, double v, std::uint64_t horizon);

}  // namespace byzsim

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "byzsim/rng.hpp"
#include "byzsim/vec.hpp"

namespace byzsim {

/// Synthetic objective with exact-gradient access. Immutable after construction.
class Objective {
  public:
    enum class Kind { Quadratic, LeastSquares, Logistic };

    /// f(x) = 1/2 x^T A x, A symmetric positive definite, d = 2.
    static Objective quadratic(const std::array<double, 4>& a);
    /// f(x) = 1/(2n) ||X x - y||^2.
    static Objective least_squares(std::vector<Vector> rows, Vector targets);
    /// Regularized logistic loss over a fixed synthetic dataset (50 points, d = 4).
    static Objective logistic_synthetic();

    Kind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }
    double value(const Vector& x) const;
    Vector gradient(const Vector& x) const;
    const Vector& minimizer() const { return xstar_; }
    double optimal_value() const { return fstar_; }
    double smoothness() const { return smoothness_; }
    /// Smallest Hessian eigenvalue (strong convexity modulus).
    double strong_convexity() const { return mu_; }

  private:
    Objective() = default;

    Kind kind_ = Kind::Quadratic;
    std::size_t dim_ = 0;
    std::array<double, 4> quad_a_{};               // quadratic
    std::vector<Vector> rows_;                     // least squares / logistic features
    Vector targets_;                               // least squares targets / labels
    double ridge_ = 0.0;                           // logistic regularizer
    Vector xstar_;
    double fstar_ = 0.0;
    double smoothness_ = 0.0;
    double mu_ = 0.0;
};

/// Run metadata derived from an objective and a start iterate.
struct ObjectiveMeta {
    double delta1 = 0.0;    // f(x1) - f*
    double diameter = 0.0;  // 0 when unconstrained
    double bound_m = 0.0;   // 0 when unused
};

ObjectiveMeta make_meta(const Objective& obj, const Vector& start);

struct NoiseModel {
    enum class Kind { Gaussian, BoundedBall, Drift };
    Kind kind = Kind::Gaussian;
    double sigma = 0.0;  // gaussian: total variance sigma^2
    double bound = 0.0;  // bounded_ball: hard norm bound V
    double drift_c = 0.0;
    Vector drift_direction;  // unit vector

    static NoiseModel gaussian(double sigma);
    static NoiseModel bounded_ball(double v);
    static NoiseModel drift(double c, Vector direction);
};

/// Stochastic gradient oracle with an evaluation counter. The counter tracks
/// charged gradient evaluations: each single-sample draw charges 1, and the
/// harness charges batch sizes explicitly when samples are shared across
/// MLMC levels.
class GradOracle {
  public:
    GradOracle(Objective obj, NoiseModel noise) : obj_(std::move(obj)), noise_(noise) {}

    const Objective& objective() const { return obj_; }
    const NoiseModel& noise() const { return noise_; }

    Vector exact_gradient(const Vector& x) const { return obj_.gradient(x); }

    /// One stochastic gradient draw; charges 1 evaluation.
    Vector stochastic_gradient(const Vector& x, Rng& rng);
    /// Same draw without charging; caller accounts for it via charge().
    Vector stochastic_gradient_uncharged(const Vector& x, Rng& rng) const;
    /// Average of n i.i.d. draws; charges n.
    Vector minibatch_gradient(const Vector& x, std::uint64_t n, Rng& rng);
    /// LMGO query with budget n: MSE <= c^2/n. Drift noise is deterministic;
    /// gaussian/bounded noise falls back to a minibatch. Charges n.
    Vector lmgo_query(const Vector& x, std::uint64_t n, Rng& rng);
    /// Deterministic drift oracle value at budget n, without charging.
    Vector lmgo_value(const Vector& x, std::uint64_t n) const;

    std::uint64_t calls() const { return calls_; }
    void charge(std::uint64_t n) { calls_ += n; }
    void reset_calls() { calls_ = 0; }

  private:
    Vector noise_draw(const Vector& x, Rng& rng) const;

    Objective obj_;
    NoiseModel noise_;
    std::uint64_t calls_ = 0;
};

}  // namespace byzsim

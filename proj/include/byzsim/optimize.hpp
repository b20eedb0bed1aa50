#pragma once

#include <cstdint>
#include <vector>

#include "byzsim/vec.hpp"

namespace byzsim {

struct Domain {
    enum class Kind { Unconstrained, L2Ball, Box };
    Kind kind = Kind::Unconstrained;
    Vector center;  // ball
    double radius = 0.0;
    Vector lo, hi;  // box

    static Domain unconstrained() { return {}; }
    static Domain l2_ball(Vector center, double radius);
    static Domain box(Vector lo, Vector hi);

    /// 0 when unconstrained.
    double diameter() const;
};

Vector project(const Domain& domain, const Vector& x);

Vector sgd_step(const Vector& x, const Vector& g, double eta, const Domain& domain);

struct AdaGradState {
    double eta0 = 1.0;
    double accumulated = 0.0;  // sum of ||g_s||^2

    /// Current learning rate; 0 by the zero-accumulator convention.
    double eta() const;
};

/// Accumulates ||g||^2 then takes the projected step with eta_t = eta0/sqrt(acc).
Vector adagrad_step(AdaGradState& state, const Vector& x, const Vector& g,
                    const Domain& domain);

enum class LrKind { StaticNonconvex, StaticConvex, DynamicNonconvexOpt1, DynamicConvexOpt1 };

struct LrConstants {
    double delta1 = 0.0;    // f(x1) - f*
    double diameter = 0.0;  // D
    double sigma = 0.0;
    double smoothness = 0.0;  // L
    double gamma = 0.0;
    double cv = 0.0;  // C*V product, dynamic formulas
    std::uint64_t horizon = 2;
};

double theoretical_lr(LrKind kind, const LrConstants& k);

struct AdagradTrace {
    std::vector<Vector> iterates;   // x_1..x_T
    std::vector<Vector> gradients;  // g_1..g_T
    double eta0 = 1.0;
};

/// Deterministic regret inequality:
/// sum_t g_t^T (x_t - u) <= (D^2/(2 eta0) + eta0) sqrt(sum_t ||g_t||^2) + 1e-9.
bool check_adagrad_regret(const AdagradTrace& trace, const Vector& u, double diameter);

}  // namespace byzsim

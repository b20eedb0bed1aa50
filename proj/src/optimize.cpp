#include "byzsim/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace byzsim {

Domain Domain::l2_ball(Vector center, double radius) {
    if (radius <= 0.0) throw std::invalid_argument("l2_ball: radius must be > 0");
    Domain d;
    d.kind = Kind::L2Ball;
    d.center = std::move(center);
    d.radius = radius;
    return d;
}

Domain Domain::box(Vector lo, Vector hi) {
    if (lo.size() != hi.size()) throw std::invalid_argument("box: bound dims differ");
    for (std::size_t c = 0; c < lo.size(); ++c)
        if (lo[c] > hi[c]) throw std::invalid_argument("box: lo > hi");
    Domain d;
    d.kind = Kind::Box;
    d.lo = std::move(lo);
    d.hi = std::move(hi);
    return d;
}

double Domain::diameter() const {
    switch (kind) {
        case Kind::Unconstrained:
            return 0.0;
        case Kind::L2Ball:
            return 2.0 * radius;
        case Kind::Box: {
            long double acc = 0.0L;
            for (std::size_t c = 0; c < lo.size(); ++c) {
                long double s = hi[c] - lo[c];
                acc += s * s;
            }
            return std::sqrt((double)acc);
        }
    }
    return 0.0;
}

Vector project(const Domain& domain, const Vector& x) {
    switch (domain.kind) {
        case Domain::Kind::Unconstrained:
            return x;
        case Domain::Kind::L2Ball: {
            Vector diff = vecmath::sub(x, domain.center);
            double n = vecmath::l2_norm(diff);
            if (n <= domain.radius) return x;
            return vecmath::add(domain.center, vecmath::scale(diff, domain.radius / n));
        }
        case Domain::Kind::Box: {
            if (x.size() != domain.lo.size())
                throw std::invalid_argument("project: dimension mismatch");
            Vector out = x;
            for (std::size_t c = 0; c < out.size(); ++c)
                out[c] = std::clamp(out[c], domain.lo[c], domain.hi[c]);
            return out;
        }
    }
    throw std::invalid_argument("project: malformed domain");
}

Vector sgd_step(const Vector& x, const Vector& g, double eta, const Domain& domain) {
    if (eta <= 0.0) throw std::invalid_argument("sgd_step: eta must be > 0");
    Vector y = x;
    for (std::size_t c = 0; c < y.size(); ++c) y[c] -= eta * g[c];
    return project(domain, y);
}

double AdaGradState::eta() const {
    if (accumulated <= 0.0) return 0.0;
    return eta0 / std::sqrt(accumulated);
}

Vector adagrad_step(AdaGradState& state, const Vector& x, const Vector& g,
                    const Domain& domain) {
    if (state.eta0 <= 0.0) throw std::invalid_argument("adagrad_step: eta0 must be > 0");
    double n = vecmath::l2_norm(g);
    state.accumulated += n * n;
    double eta = state.eta();
    if (eta == 0.0) return project(domain, x);
    return sgd_step(x, g, eta, domain);
}

double theoretical_lr(LrKind kind, const LrConstants& k) {
    if (k.horizon < 2) throw std::invalid_argument("theoretical_lr: T must be >= 2");
    double log_t = std::log2((double)k.horizon);
    double t = (double)k.horizon;
    switch (kind) {
        case LrKind::StaticNonconvex:
            return std::min(std::sqrt(k.delta1) /
                                (4.0 * k.sigma *
                                 std::sqrt(k.smoothness * k.gamma * t * log_t)),
                            1.0 / k.smoothness);
        case LrKind::StaticConvex:
            return std::min(k.diameter / (8.0 * k.sigma * std::sqrt(k.gamma * t * log_t)),
                            1.0 / (2.0 * k.smoothness));
        case LrKind::DynamicNonconvexOpt1:
            return std::min(std::sqrt(k.delta1) /
                                (3.0 * k.cv *
                                 std::sqrt(k.smoothness * k.gamma * t * log_t)),
                            1.0 / k.smoothness);
        case LrKind::DynamicConvexOpt1:
            return std::min(k.diameter / (6.0 * k.cv * std::sqrt(k.gamma * t * log_t)),
                            1.0 / (2.0 * k.smoothness));
    }
    throw std::invalid_argument("theoretical_lr: unknown kind");
}

bool check_adagrad_regret(const AdagradTrace& trace, const Vector& u, double diameter) {
    if (trace.iterates.empty() || trace.iterates.size() != trace.gradients.size())
        throw std::invalid_argument("check_adagrad_regret: malformed trace");
    long double lhs = 0.0L;
    long double acc = 0.0L;
    for (std::size_t t = 0; t < trace.iterates.size(); ++t) {
        lhs += vecmath::dot(trace.gradients[t], vecmath::sub(trace.iterates[t], u));
        double n = vecmath::l2_norm(trace.gradients[t]);
        acc += (long double)n * n;
    }
    double rhs = (diameter * diameter / (2.0 * trace.eta0) + trace.eta0) *
                 std::sqrt((double)acc);
    return (double)lhs <= rhs + 1e-9;
}

}  // namespace byzsim

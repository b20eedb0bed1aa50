#include "byzsim/objectives.hpp"

#include <cmath>
#include <stdexcept>

namespace byzsim {

namespace {

// Solve the SPD system H x = b in place (tiny d, Gaussian elimination with
// partial pivoting).
Vector solve_spd(std::vector<Vector> h, Vector b) {
    const std::size_t d = b.size();
    for (std::size_t c = 0; c < d; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < d; ++r) {
            if (std::abs(h[r][c]) > std::abs(h[piv][c])) piv = r;
        }
        std::swap(h[c], h[piv]);
        std::swap(b[c], b[piv]);
        if (h[c][c] == 0.0) throw std::runtime_error("solve_spd: singular system");
        for (std::size_t r = c + 1; r < d; ++r) {
            double f = h[r][c] / h[c][c];
            for (std::size_t k = c; k < d; ++k) h[r][k] -= f * h[c][k];
            b[r] -= f * b[c];
        }
    }
    Vector x(d);
    for (std::size_t c = d; c-- > 0;) {
        double s = b[c];
        for (std::size_t k = c + 1; k < d; ++k) s -= h[c][k] * x[k];
        x[c] = s / h[c][c];
    }
    return x;
}

double power_iteration_max_eig(const std::vector<Vector>& h) {
    const std::size_t d = h.size();
    Vector v(d, 1.0);
    double lambda = 0.0;
    for (int it = 0; it < 500; ++it) {
        Vector w(d, 0.0);
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) w[r] += h[r][c] * v[c];
        }
        double n = vecmath::l2_norm(w);
        if (n == 0.0) return 0.0;
        lambda = n;
        v = vecmath::scale(w, 1.0 / n);
    }
    return lambda;
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

Objective Objective::quadratic(const std::array<double, 4>& a) {
    if (a[1] != a[2]) throw std::invalid_argument("quadratic: matrix must be symmetric");
    Objective obj;
    obj.kind_ = Kind::Quadratic;
    obj.dim_ = 2;
    obj.quad_a_ = a;
    // 2x2 symmetric eigenvalues in closed form
    double tr = a[0] + a[3];
    double det = a[0] * a[3] - a[1] * a[2];
    double disc = std::sqrt(tr * tr / 4.0 - det);
    obj.smoothness_ = tr / 2.0 + disc;
    obj.mu_ = tr / 2.0 - disc;
    if (obj.mu_ <= 0.0) throw std::invalid_argument("quadratic: matrix must be positive definite");
    obj.xstar_ = Vector{0.0, 0.0};
    obj.fstar_ = 0.0;
    return obj;
}

Objective Objective::least_squares(std::vector<Vector> rows, Vector targets) {
    if (rows.empty() || rows.size() != targets.size()) {
        throw std::invalid_argument("least_squares: rows/targets size mismatch");
    }
    Objective obj;
    obj.kind_ = Kind::LeastSquares;
    obj.dim_ = rows[0].size();
    const std::size_t n = rows.size();
    const std::size_t d = obj.dim_;
    std::vector<Vector> hess(d, Vector(d, 0.0));  // X^T X / n
    Vector rhs(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t r = 0; r < d; ++r) {
            rhs[r] += rows[i][r] * targets[i] / (double)n;
            for (std::size_t c = 0; c < d; ++c) hess[r][c] += rows[i][r] * rows[i][c] / (double)n;
        }
    }
    obj.xstar_ = solve_spd(hess, rhs);
    obj.smoothness_ = power_iteration_max_eig(hess);
    // smallest eigenvalue via power iteration on (L I - H)
    std::vector<Vector> shifted = hess;
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) shifted[r][c] = -hess[r][c];
        shifted[r][r] += obj.smoothness_;
    }
    obj.mu_ = obj.smoothness_ - power_iteration_max_eig(shifted);
    obj.rows_ = std::move(rows);
    obj.targets_ = std::move(targets);
    obj.fstar_ = obj.value(obj.xstar_);
    return obj;
}

Objective Objective::logistic_synthetic() {
    // Fixed synthetic dataset: 50 points in d=4, derived deterministically
    // from a constant seed so every build sees identical data.
    constexpr std::size_t n = 50, d = 4;
    Objective obj;
    obj.kind_ = Kind::Logistic;
    obj.dim_ = d;
    obj.ridge_ = 0.1;
    Rng rng = make_rng(0x5eed0b1ec7ed50ULL);
    Vector truth{1.0, -2.0, 0.5, 1.5};
    obj.rows_.reserve(n);
    obj.targets_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vector x(d);
        for (std::size_t c = 0; c < d; ++c) x[c] = normal01(rng);
        double p = sigmoid(vecmath::dot(x, truth));
        obj.targets_.push_back(uniform01(rng) < p ? 1.0 : 0.0);
        obj.rows_.push_back(std::move(x));
    }
    // L = lambda_max(X^T X)/(4n) + ridge
    std::vector<Vector> gram(d, Vector(d, 0.0));
    for (const Vector& row : obj.rows_) {
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) gram[r][c] += row[r] * row[c] / (4.0 * n);
        }
    }
    obj.smoothness_ = power_iteration_max_eig(gram) + obj.ridge_;
    obj.mu_ = obj.ridge_;
    // Newton to the regularized minimizer
    Vector x(d, 0.0);
    for (int it = 0; it < 100; ++it) {
        Vector g = obj.gradient(x);
        if (vecmath::l2_norm(g) < 1e-14) break;
        std::vector<Vector> hess(d, Vector(d, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            double p = sigmoid(vecmath::dot(obj.rows_[i], x));
            double w = p * (1.0 - p) / (double)n;
            for (std::size_t r = 0; r < d; ++r) {
                for (std::size_t c = 0; c < d; ++c) {
                    hess[r][c] += w * obj.rows_[i][r] * obj.rows_[i][c];
                }
            }
        }
        for (std::size_t r = 0; r < d; ++r) hess[r][r] += obj.ridge_;
        Vector step = solve_spd(hess, g);
        for (std::size_t c = 0; c < d; ++c) x[c] -= step[c];
    }
    obj.xstar_ = x;
    obj.fstar_ = obj.value(x);
    return obj;
}

double Objective::value(const Vector& x) const {
    if (x.size() != dim_) throw std::invalid_argument("Objective::value: dimension mismatch");
    switch (kind_) {
        case Kind::Quadratic: {
            double ax0 = quad_a_[0] * x[0] + quad_a_[1] * x[1];
            double ax1 = quad_a_[2] * x[0] + quad_a_[3] * x[1];
            return 0.5 * (x[0] * ax0 + x[1] * ax1);
        }
        case Kind::LeastSquares: {
            long double acc = 0.0L;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                double r = vecmath::dot(rows_[i], x) - targets_[i];
                acc += (long double)r * r;
            }
            return (double)(acc / (2.0L * rows_.size()));
        }
        case Kind::Logistic: {
            long double acc = 0.0L;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                double z = vecmath::dot(rows_[i], x);
                // -y z + log(1+e^z), stable form
                acc += -targets_[i] * z + (z > 0 ? z + std::log1p(std::exp(-z))
                                                 : std::log1p(std::exp(z)));
            }
            double reg = 0.5 * ridge_ * vecmath::dot(x, x);
            return (double)(acc / (long double)rows_.size()) + reg;
        }
    }
    throw std::logic_error("Objective::value: unknown kind");
}

Vector Objective::gradient(const Vector& x) const {
    if (x.size() != dim_) throw std::invalid_argument("Objective::gradient: dimension mismatch");
    switch (kind_) {
        case Kind::Quadratic:
            return Vector{quad_a_[0] * x[0] + quad_a_[1] * x[1],
                          quad_a_[2] * x[0] + quad_a_[3] * x[1]};
        case Kind::LeastSquares: {
            Vector g(dim_, 0.0);
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                double r = vecmath::dot(rows_[i], x) - targets_[i];
                for (std::size_t c = 0; c < dim_; ++c) g[c] += rows_[i][c] * r / (double)rows_.size();
            }
            return g;
        }
        case Kind::Logistic: {
            Vector g = vecmath::scale(x, ridge_);
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                double r = sigmoid(vecmath::dot(rows_[i], x)) - targets_[i];
                for (std::size_t c = 0; c < dim_; ++c) g[c] += rows_[i][c] * r / (double)rows_.size();
            }
            return g;
        }
    }
    throw std::logic_error("Objective::gradient: unknown kind");
}

ObjectiveMeta make_meta(const Objective& obj, const Vector& start) {
    ObjectiveMeta meta;
    meta.delta1 = obj.value(start) - obj.optimal_value();
    return meta;
}

NoiseModel NoiseModel::gaussian(double sigma) {
    if (sigma < 0.0) throw std::invalid_argument("gaussian noise: sigma must be >= 0");
    NoiseModel n;
    n.kind = Kind::Gaussian;
    n.sigma = sigma;
    return n;
}

NoiseModel NoiseModel::bounded_ball(double v) {
    if (v < 0.0) throw std::invalid_argument("bounded_ball noise: bound must be >= 0");
    NoiseModel n;
    n.kind = Kind::BoundedBall;
    n.bound = v;
    return n;
}

NoiseModel NoiseModel::drift(double c, Vector direction) {
    double norm = vecmath::l2_norm(direction);
    if (norm == 0.0) throw std::invalid_argument("drift noise: direction must be nonzero");
    NoiseModel n;
    n.kind = Kind::Drift;
    n.drift_c = c;
    n.drift_direction = vecmath::scale(direction, 1.0 / norm);
    return n;
}

Vector GradOracle::noise_draw(const Vector& x, Rng& rng) const {
    const std::size_t d = x.size();
    switch (noise_.kind) {
        case NoiseModel::Kind::Gaussian: {
            // per-coordinate sd sigma/sqrt(d) keeps total variance at sigma^2
            double sd = noise_.sigma / std::sqrt((double)d);
            Vector n(d);
            for (std::size_t c = 0; c < d; ++c) n[c] = sd * normal01(rng);
            return n;
        }
        case NoiseModel::Kind::BoundedBall: {
            Vector dir(d);
            double norm = 0.0;
            do {
                for (std::size_t c = 0; c < d; ++c) dir[c] = normal01(rng);
                norm = vecmath::l2_norm(dir);
            } while (norm == 0.0);
            double r = noise_.bound * uniform01(rng);
            return vecmath::scale(dir, r / norm);
        }
        case NoiseModel::Kind::Drift:
            throw std::invalid_argument("drift noise has no per-sample draw; use lmgo_query");
    }
    throw std::logic_error("noise_draw: unknown kind");
}

Vector GradOracle::stochastic_gradient_uncharged(const Vector& x, Rng& rng) const {
    return vecmath::add(obj_.gradient(x), noise_draw(x, rng));
}

Vector GradOracle::stochastic_gradient(const Vector& x, Rng& rng) {
    charge(1);
    return stochastic_gradient_uncharged(x, rng);
}

Vector GradOracle::minibatch_gradient(const Vector& x, std::uint64_t n, Rng& rng) {
    if (n == 0) throw std::invalid_argument("minibatch_gradient: batch size must be >= 1");
    const std::size_t d = x.size();
    Vector exact = obj_.gradient(x);
    std::vector<long double> acc(d, 0.0L);
    for (std::uint64_t i = 0; i < n; ++i) {
        Vector noise = noise_draw(x, rng);
        for (std::size_t c = 0; c < d; ++c) acc[c] += noise[c];
    }
    charge(n);
    Vector out(d);
    for (std::size_t c = 0; c < d; ++c) out[c] = exact[c] + (double)(acc[c] / (long double)n);
    return out;
}

Vector GradOracle::lmgo_value(const Vector& x, std::uint64_t n) const {
    if (n == 0) throw std::invalid_argument("lmgo_value: budget must be >= 1");
    if (noise_.kind != NoiseModel::Kind::Drift)
        throw std::invalid_argument("lmgo_value: defined for drift noise only");
    double shift = noise_.drift_c / std::sqrt((double)n);
    return vecmath::add(obj_.gradient(x), vecmath::scale(noise_.drift_direction, shift));
}

Vector GradOracle::lmgo_query(const Vector& x, std::uint64_t n, Rng& rng) {
    if (n == 0) throw std::invalid_argument("lmgo_query: budget must be >= 1");
    if (noise_.kind == NoiseModel::Kind::Drift) {
        charge(n);
        return lmgo_value(x, n);
    }
    return minibatch_gradient(x, n, rng);
}

}  // namespace byzsim

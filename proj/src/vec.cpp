#include "byzsim/vec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace byzsim::vecmath {

namespace {

void require_same_dim(const Vector& a, const Vector& b, const char* where) {
    if (a.size() != b.size()) {
        throw std::invalid_argument(std::string(where) + ": dimension mismatch (" +
                                    std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()) + ")");
    }
}

void require_nonempty(std::span<const Vector> vs, const char* where) {
    if (vs.empty()) throw std::invalid_argument(std::string(where) + ": empty input list");
    for (std::size_t i = 1; i < vs.size(); ++i) require_same_dim(vs[0], vs[i], where);
}

}  // namespace

bool all_finite(const Vector& a) {
    return std::all_of(a.begin(), a.end(), [](double x) { return std::isfinite(x); });
}

void require_finite(const Vector& a, const char* where) {
    if (!all_finite(a)) {
        throw std::invalid_argument(std::string(where) + ": non-finite component");
    }
}

Vector add(const Vector& a, const Vector& b) {
    require_same_dim(a, b, "add");
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Vector sub(const Vector& a, const Vector& b) {
    require_same_dim(a, b, "sub");
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Vector scale(const Vector& a, double s) {
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
    return out;
}

double dot(const Vector& a, const Vector& b) {
    require_same_dim(a, b, "dot");
    long double acc = 0.0L;
    for (std::size_t i = 0; i < a.size(); ++i) acc += (long double)a[i] * (long double)b[i];
    return (double)acc;
}

double l2_norm(const Vector& a) {
    long double acc = 0.0L;
    for (double x : a) acc += (long double)x * (long double)x;
    return (double)std::sqrt(acc);
}

double l2_dist(const Vector& a, const Vector& b) {
    require_same_dim(a, b, "l2_dist");
    long double acc = 0.0L;
    for (std::size_t i = 0; i < a.size(); ++i) {
        long double d = (long double)a[i] - (long double)b[i];
        acc += d * d;
    }
    return (double)std::sqrt(acc);
}

Vector mean(std::span<const Vector> vs) {
    require_nonempty(vs, "mean");
    const std::size_t d = vs[0].size();
    Vector out(d);
    for (std::size_t c = 0; c < d; ++c) {
        long double acc = 0.0L;
        for (const Vector& v : vs) acc += v[c];
        out[c] = (double)(acc / (long double)vs.size());
    }
    return out;
}

Vector coordinate_median(std::span<const Vector> vs) {
    require_nonempty(vs, "coordinate_median");
    const std::size_t d = vs[0].size();
    const std::size_t n = vs.size();
    Vector out(d);
    std::vector<double> col(n);
    for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t i = 0; i < n; ++i) col[i] = vs[i][c];
        std::sort(col.begin(), col.end());
        // even count: average of the two central order statistics
        out[c] = (n % 2 == 1) ? col[n / 2] : 0.5 * (col[n / 2 - 1] + col[n / 2]);
    }
    return out;
}

Vector coordinate_trimmed_mean(std::span<const Vector> vs, std::size_t trim_k) {
    require_nonempty(vs, "coordinate_trimmed_mean");
    const std::size_t n = vs.size();
    if (2 * trim_k >= n) {
        throw std::invalid_argument("coordinate_trimmed_mean: 2*trim_k must be < list size");
    }
    const std::size_t d = vs[0].size();
    Vector out(d);
    std::vector<double> col(n);
    for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t i = 0; i < n; ++i) col[i] = vs[i][c];
        std::sort(col.begin(), col.end());
        long double acc = 0.0L;
        for (std::size_t i = trim_k; i < n - trim_k; ++i) acc += col[i];
        out[c] = (double)(acc / (long double)(n - 2 * trim_k));
    }
    return out;
}

}  // namespace byzsim::vecmath

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace byzsim {

// Dense d-dimensional real vector. All public boundaries expect finite
// components; reductions accumulate in long double in fixed input order.
using Vector = std::vector<double>;

namespace vecmath {

bool all_finite(const Vector& a);
void require_finite(const Vector& a, const char* where);

Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(const Vector& a, double s);
double dot(const Vector& a, const Vector& b);
double l2_norm(const Vector& a);
double l2_dist(const Vector& a, const Vector& b);

Vector mean(std::span<const Vector> vs);
Vector coordinate_median(std::span<const Vector> vs);
Vector coordinate_trimmed_mean(std::span<const Vector> vs, std::size_t trim_k);

inline Vector mean(const std::vector<Vector>& vs) { return mean(std::span(vs)); }
inline Vector coordinate_median(const std::vector<Vector>& vs) {
    return coordinate_median(std::span(vs));
}
inline Vector coordinate_trimmed_mean(const std::vector<Vector>& vs, std::size_t trim_k) {
    return coordinate_trimmed_mean(std::span(vs), trim_k);
}

}  // namespace vecmath
}  // namespace byzsim

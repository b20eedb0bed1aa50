#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "byzsim/rng.hpp"
#include "byzsim/vec.hpp"

namespace byzsim {

struct AggregatorSpec {
    enum class Kind { Mean, CWMed, CWTM, GeoMed, MFM };
    Kind kind = Kind::Mean;
    std::size_t trim_k = 0;      // cwtm
    double tol = 1e-9;           // geomed
    int max_iter = 10000;        // geomed
    double threshold = 0.0;      // mfm

    static AggregatorSpec mean() { return {Kind::Mean}; }
    static AggregatorSpec cwmed() { return {Kind::CWMed}; }
    static AggregatorSpec cwtm(std::size_t trim_k) {
        AggregatorSpec s{Kind::CWTM};
        s.trim_k = trim_k;
        return s;
    }
    static AggregatorSpec geomed(double tol = 1e-9, int max_iter = 10000) {
        AggregatorSpec s{Kind::GeoMed};
        s.tol = tol;
        s.max_iter = max_iter;
        return s;
    }
    static AggregatorSpec mfm(double threshold) {
        AggregatorSpec s{Kind::MFM};
        s.threshold = threshold;
        return s;
    }
};

Vector aggregate(const AggregatorSpec& spec, const std::vector<Vector>& msgs);

/// Weiszfeld iteration for the minimizer of sum_i ||y - g_i||.
Vector geometric_median(const std::vector<Vector>& msgs, double tol = 1e-9,
                        int max_iter = 10000);

/// Median-filtered mean: average of all messages within `threshold` of a
/// majority-ball representative (smallest index); zero vector when no
/// majority ball exists.
Vector mfm_aggregate(const std::vector<Vector>& msgs, double threshold);

struct MfmDetail {
    std::optional<std::size_t> representative;  // nullopt when no majority ball
    std::vector<std::size_t> kept;              // indices averaged
    Vector output;
};

MfmDetail mfm_detail(const std::vector<Vector>& msgs, double threshold);

/// ||A(msgs) - mean_S||^2 / ((1/|S|) sum_{i in S} ||g_i - mean_S||^2.
/// nullopt when the honest variance is degenerate (< 1e-24).
std::optional<double> robustness_ratio(const AggregatorSpec& spec,
                                       const std::vector<Vector>& msgs,
                                       const std::vector<std::size_t>& honest_set);

struct RobustnessReport {
    double max_ratio = 0.0;  // max over non-degenerate trials
    std::uint64_t trials = 0;
    std::uint64_t degenerate_count = 0;
};

/// Monte Carlo upper envelope for the robustness coefficient: random honest
/// configurations against a menu of adversarial placements.
RobustnessReport estimate_kappa(const AggregatorSpec& spec, std::size_t m, double delta,
                                std::uint64_t trials, Rng& rng);

}  // namespace byzsim

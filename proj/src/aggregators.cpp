#include "byzsim/aggregators.hpp"

#include <cmath>
#include <stdexcept>

namespace byzsim {

Vector aggregate(const AggregatorSpec& spec, const std::vector<Vector>& msgs) {
    if (msgs.empty()) throw std::invalid_argument("aggregate: empty message list");
    switch (spec.kind) {
        case AggregatorSpec::Kind::Mean:
            return vecmath::mean(msgs);
        case AggregatorSpec::Kind::CWMed:
            return vecmath::coordinate_median(msgs);
        case AggregatorSpec::Kind::CWTM:
            return vecmath::coordinate_trimmed_mean(msgs, spec.trim_k);
        case AggregatorSpec::Kind::GeoMed:
            return geometric_median(msgs, spec.tol, spec.max_iter);
        case AggregatorSpec::Kind::MFM:
            return mfm_aggregate(msgs, spec.threshold);
    }
    throw std::invalid_argument("aggregate: malformed spec");
}

Vector geometric_median(const std::vector<Vector>& msgs, double tol, int max_iter) {
    if (msgs.empty()) throw std::invalid_argument("geometric_median: empty message list");
    if (tol <= 0.0 || max_iter < 1) throw std::invalid_argument("geometric_median: bad parameters");
    if (msgs.size() == 1) return msgs[0];
    constexpr double kDenomFloor = 1e-12;
    const std::size_t d = msgs[0].size();
    Vector y = vecmath::mean(msgs);
    for (int it = 0; it < max_iter; ++it) {
        // stationarity residual: || sum_i (y - g_i)/||y - g_i|| ||
        Vector subgrad(d, 0.0);
        Vector num(d, 0.0);
        double wsum = 0.0;
        for (const Vector& g : msgs) {
            double dist = std::max(vecmath::l2_dist(y, g), kDenomFloor);
            double w = 1.0 / dist;
            wsum += w;
            for (std::size_t c = 0; c < d; ++c) {
                num[c] += w * g[c];
                subgrad[c] += (y[c] - g[c]) * w;
            }
        }
        if (vecmath::l2_norm(subgrad) <= tol) return y;
        y = vecmath::scale(num, 1.0 / wsum);
    }
    return y;
}

MfmDetail mfm_detail(const std::vector<Vector>& msgs, double threshold) {
    if (msgs.empty()) throw std::invalid_argument("mfm_aggregate: empty message list");
    if (threshold <= 0.0) throw std::invalid_argument("mfm_aggregate: threshold must be > 0");
    const std::size_t m = msgs.size();
    MfmDetail det;
    // g_med: smallest index whose T/2-ball holds a strict majority
    for (std::size_t i = 0; i < m && !det.representative; ++i) {
        std::size_t count = 0;
        for (std::size_t j = 0; j < m; ++j) {
            if (vecmath::l2_dist(msgs[j], msgs[i]) <= threshold / 2.0) ++count;
        }
        if (2 * count > m) det.representative = i;
    }
    if (!det.representative) {
        det.output = Vector(msgs[0].size(), 0.0);
        return det;
    }
    std::vector<Vector> kept;
    for (std::size_t i = 0; i < m; ++i) {
        if (vecmath::l2_dist(msgs[i], msgs[*det.representative]) <= threshold) {
            det.kept.push_back(i);
            kept.push_back(msgs[i]);
        }
    }
    det.output = vecmath::mean(kept);
    return det;
}

Vector mfm_aggregate(const std::vector<Vector>& msgs, double threshold) {
    return mfm_detail(msgs, threshold).output;
}

std::optional<double> robustness_ratio(const AggregatorSpec& spec,
                                       const std::vector<Vector>& msgs,
                                       const std::vector<std::size_t>& honest_set) {
    if (honest_set.empty()) throw std::invalid_argument("robustness_ratio: empty honest set");
    std::vector<Vector> honest;
    honest.reserve(honest_set.size());
    for (std::size_t i : honest_set) honest.push_back(msgs.at(i));
    Vector honest_mean = vecmath::mean(honest);
    long double denom = 0.0L;
    for (const Vector& g : honest) {
        double dist = vecmath::l2_dist(g, honest_mean);
        denom += (long double)dist * dist;
    }
    denom /= (long double)honest.size();
    if (denom < 1e-24L) return std::nullopt;
    double err = vecmath::l2_dist(aggregate(spec, msgs), honest_mean);
    return err * err / (double)denom;
}

RobustnessReport estimate_kappa(const AggregatorSpec& spec, std::size_t m, double delta,
                                std::uint64_t trials, Rng& rng) {
    if (delta >= 0.5) throw std::invalid_argument("estimate_kappa: delta must be < 1/2");
    if (trials < 1) throw std::invalid_argument("estimate_kappa: trials must be >= 1");
    const std::size_t byz = (std::size_t)(delta * (double)m);
    const std::size_t d = 3;
    RobustnessReport report;
    std::vector<std::size_t> honest_set;
    for (std::size_t i = byz; i < m; ++i) honest_set.push_back(i);

    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        std::vector<Vector> msgs(m, Vector(d, 0.0));
        double spread = std::exp(4.0 * uniform01(rng) - 2.0);
        for (std::size_t i = byz; i < m; ++i) {
            for (std::size_t c = 0; c < d; ++c) msgs[i][c] = spread * normal01(rng);
        }
        std::vector<Vector> honest(msgs.begin() + (long)byz, msgs.end());
        Vector hmean = vecmath::mean(honest);
        // worst of a menu of Byzantine placements, magnitude swept
        double best = -1.0;
        bool any_valid = false;
        for (int placement = 0; placement < 3; ++placement) {
            for (double mag : {1.0, 10.0, 100.0, 1e4, 1e6}) {
                for (std::size_t i = 0; i < byz; ++i) {
                    switch (placement) {
                        case 0:  // collinear far point
                            msgs[i] = vecmath::scale(hmean, 1.0 + mag);
                            break;
                        case 1:  // cluster at honest mean + offset
                            msgs[i] = hmean;
                            msgs[i][0] += mag;
                            break;
                        default:  // antipodal
                            msgs[i] = vecmath::scale(hmean, -mag);
                    }
                }
                auto ratio = robustness_ratio(spec, msgs, honest_set);
                if (ratio) {
                    any_valid = true;
                    best = std::max(best, *ratio);
                }
                if (byz == 0) break;  // no Byzantine slots, one evaluation suffices
            }
            if (byz == 0) break;
        }
        ++report.trials;
        if (!any_valid) {
            ++report.degenerate_count;
        } else {
            report.max_ratio = std::max(report.max_ratio, best);
        }
    }
    return report;
}

}  // namespace byzsim

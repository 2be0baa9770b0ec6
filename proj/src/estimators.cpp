#include "cevmlab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cevmlab {

bool TailEstimate::has_flag(const std::string& f) const {
    return std::find(flags.begin(), flags.end(), f) != flags.end();
}

TailEstimate count_estimate(std::span<const Sample> samples,
                            const std::function<bool(const Sample&)>& pred, double t, double scale,
                            const std::string& tag) {
    if (samples.empty()) throw std::invalid_argument("count_estimate: empty sample set");
    long long hits = 0;
    for (const Sample& s : samples)
        if (pred(s)) ++hits;

    TailEstimate e;
    e.raw_count = hits;
    e.n = samples.size();
    e.t = t;
    e.scale = scale;
    e.functional_tag = tag;
    const double n = double(e.n);
    e.value = scale * double(hits) / n;
    const double p = double(hits) / n;
    e.std_error = scale * std::sqrt(p * (1.0 - p) / n);
    if (hits < kLowCountThreshold) e.flags.push_back("low_count");
    return e;
}

TailEstimate cev_rect_estimate(std::span<const Sample> samples, const NormalizingQuadruple& q,
                               double t, double x, double y) {
    if (!(t > 0.0)) throw std::invalid_argument("cev_rect_estimate: t must be positive");
    const double a = q.alpha(t), b = q.beta(t), c = q.c(t), d = q.d(t);
    return count_estimate(
        samples,
        [=](const Sample& s) { return (s.x - b) / a <= x && (s.y - d) / c > y; }, t, t,
        "cev_rect");
}

TailEstimate mevt_survival_estimate(std::span<const Sample> samples,
                                    const NormalizingQuadruple& q, double t, double x, double y) {
    if (!(t > 0.0)) throw std::invalid_argument("mevt_survival_estimate: t must be positive");
    const double a = q.alpha(t), b = q.beta(t), c = q.c(t), d = q.d(t);
    return count_estimate(
        samples,
        [=](const Sample& s) { return (s.x - b) / a > x || (s.y - d) / c > y; }, t, t,
        "mevt_survival");
}

TailEstimate joint_quadrant_estimate(std::span<const Sample> samples,
                                     const NormalizingQuadruple& q, double t, double x, double y) {
    if (!(t > 0.0)) throw std::invalid_argument("joint_quadrant_estimate: t must be positive");
    const double a = q.alpha(t), b = q.beta(t), c = q.c(t), d = q.d(t);
    return count_estimate(
        samples,
        [=](const Sample& s) { return (s.x - b) / a > x && (s.y - d) / c > y; }, t, t,
        "joint_quadrant");
}

TailEstimate standardized_estimate(std::span<const Sample> samples,
                                   const std::function<double(double)>& f, double t, double x,
                                   double y, Side side) {
    if (!(t > 0.0)) throw std::invalid_argument("standardized_estimate: t must be positive");
    auto pred = [&, t, x, y, side](const Sample& s) {
        const double fx = f(s.x);
        if (std::isnan(fx)) throw std::invalid_argument("standardized_estimate: f(x) is NaN");
        const bool xev = (side == Side::rect) ? (fx / t <= x) : (fx / t > x);
        return xev && s.y / t > y;
    };
    return count_estimate(samples, pred, t, t,
                          side == Side::rect ? "standardized_rect" : "standardized_quadrant");
}

TailEstimate hrv_estimate(std::span<const Sample> samples, const HrvSpec& spec, double t, double x,
                          double y, double weight) {
    if (!(t > 0.0)) throw std::invalid_argument("hrv_estimate: t must be positive");
    const double l0 = spec.lambda0(t);
    TailEstimate e = count_estimate(
        samples, [=](const Sample& s) { return s.x > t * x && s.y > t * y; }, t, l0 * weight,
        "hrv");
    if (weight != 1.0) e.flags.push_back("branch_conditional");
    return e;
}

TailEstimate localized_cev_estimate(std::span<const Sample> samples,
                                    const NormalizingQuadruple& q, Interval nbhd, double t,
                                    double x, double y, Side side) {
    if (!(t > 0.0)) throw std::invalid_argument("localized_cev_estimate: t must be positive");
    if (nbhd.is_empty()) {
        TailEstimate e = count_estimate(samples, [](const Sample&) { return false; }, t, t,
                                        "localized_cev");
        e.flags.push_back("empty_neighborhood");
        return e;
    }
    const double a = q.alpha(t), b = q.beta(t), c = q.c(t), d = q.d(t);
    auto pred = [=](const Sample& s) {
        if (!nbhd.contains_left_open(s.x)) return false;
        const double xn = (s.x - b) / a;
        const bool xev = (side == Side::rect) ? (xn <= x) : (xn > x);
        return xev && (s.y - d) / c > y;
    };
    return count_estimate(samples, pred, t, t, "localized_cev");
}

}  // namespace cevmlab

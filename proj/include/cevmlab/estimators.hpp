#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cevmlab/common.hpp"
#include "cevmlab/norming.hpp"

namespace cevmlab {

struct Sample {
    double x;
    double y;
};

// Scaled-tail Monte Carlo estimate: value = scale * raw_count / n with the
// binomial plug-in standard error on the same scale.
struct TailEstimate {
    double value = 0.0;
    double std_error = 0.0;
    long long raw_count = 0;
    size_t n = 0;
    double t = 0.0;
    double scale = 0.0;
    std::string functional_tag;
    std::vector<std::string> flags;

    bool has_flag(const std::string& f) const;
};

// Second-order normalization lambda_0 with t = o(lambda_0(t)).
struct HrvSpec {
    std::function<double(double)> lambda0;
    std::string note;
};

enum class Side { rect, quadrant };

// t P{ (X - beta)/alpha <= x, (Y - d)/c > y }.
TailEstimate cev_rect_estimate(std::span<const Sample> samples, const NormalizingQuadruple& q,
                               double t, double x, double y);

// t P{ (X - beta)/alpha > x or (Y - d)/c > y }.
TailEstimate mevt_survival_estimate(std::span<const Sample> samples,
                                    const NormalizingQuadruple& q, double t, double x, double y);

// t P{ (X - beta)/alpha > x, (Y - d)/c > y }.
TailEstimate joint_quadrant_estimate(std::span<const Sample> samples,
                                     const NormalizingQuadruple& q, double t, double x, double y);

// t P{ f(X)/t <= x (or > x), Y/t > y }; the second sample coordinate must
// already be Pareto-standardized.
TailEstimate standardized_estimate(std::span<const Sample> samples,
                                   const std::function<double(double)>& f, double t, double x,
                                   double y, Side side = Side::rect);

// lambda_0(t) P{ X > t x, Y > t y }, weighted by `weight` when the samples
// were drawn from a single branch (branch-conditional sampling).
TailEstimate hrv_estimate(std::span<const Sample> samples, const HrvSpec& spec, double t, double x,
                          double y, double weight = 1.0);

// cev_rect_estimate (or its exceedance form) restricted to {X in nbhd};
// membership is lo < X <= hi.
TailEstimate localized_cev_estimate(std::span<const Sample> samples,
                                    const NormalizingQuadruple& q, Interval nbhd, double t,
                                    double x, double y, Side side = Side::rect);

// Shared counting core, exposed so callers can build custom functionals with
// identical flag/scaling behavior.
TailEstimate count_estimate(std::span<const Sample> samples,
                            const std::function<bool(const Sample&)>& pred, double t, double scale,
                            const std::string& tag);

inline constexpr long long kLowCountThreshold = 50;

}  // namespace cevmlab

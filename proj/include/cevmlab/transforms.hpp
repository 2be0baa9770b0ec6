#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "cevmlab/measures.hpp"
#include "cevmlab/norming.hpp"
#include "cevmlab/scenarios.hpp"

namespace cevmlab {

struct StandardizationPlan {
    StdCase kind = StdCase::impossible;
    std::function<double(double)> f;  // empty when impossible
    double rho = kNaN;
    std::optional<double> beta0;
    double pushforward_exponent = kNaN;  // 1/rho
    double alpha_scale = 1.0;            // alpha(1); alpha is renormalized so alpha(1) = 1
    std::string reason;
};

// Decides which standardization case the quadruple falls into and constructs
// the standardizing f. mu_star (the limit under q, with the conditioning
// coordinate already Pareto-scaled) may be null; case (i) then fails since
// its mass condition cannot be checked.
StandardizationPlan plan_standardization(const NormalizingQuadruple& q, Interval x_range,
                                         const LimitMeasure* mu_star);

// Pushforward of mu_star under the plan's coordinate map: case (i) uses
// x -> (max(x, 0))^{1/rho}, the one-sided cases x -> |x|^{1/rho}. Mass at
// x = -inf becomes an atom at 0; in case (i) mass below 0 collapses to 0 and
// the result is flagged (that information is lost).
LimitMeasure pushforward_standardized(const LimitMeasure& mu_star,
                                      const StandardizationPlan& plan);

// Restriction/swap of a joint limit into the two conditional limits
// (gamma_x, gamma_y <= 0, asymptotic dependence required).
std::pair<LimitMeasure, LimitMeasure> cev_pair_from_mevt(const LimitMeasure& mu,
                                                         const EviSupport& gx,
                                                         const EviSupport& gy);

// Recomposition of the joint limit from the two conditional limits. Both
// inputs must agree on the shared upper quadrant to 1e-9 (the caller asserts
// the normalizations are equivalent); otherwise throws std::runtime_error.
LimitMeasure mevt_from_cev_pair(const LimitMeasure& mu_xy, const LimitMeasure& mu_yx,
                                const EviSupport& gx, const EviSupport& gy);

// max over the grid of |mu_xy((x,inf] x (y,inf]) - mu_yx((y,inf] x (x,inf])|.
double overlap_consistency(const LimitMeasure& mu_xy, const LimitMeasure& mu_yx,
                           std::span<const std::pair<double, double>> grid);

inline constexpr double kOverlapTol = 1e-9;

}  // namespace cevmlab

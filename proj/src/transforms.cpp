#include "cevmlab/transforms.hpp"

#include <cmath>
#include <stdexcept>

#include "cevmlab/rootfind.hpp"

namespace cevmlab {

namespace {

std::vector<double> probe_grid(const Interval& iv) {
    std::vector<double> g;
    if (std::isfinite(iv.hi)) {
        for (double d : {0.25, 0.5, 1.0, 2.0, 4.0}) g.push_back(iv.hi - d);
    } else {
        g = {-2.0, -1.0, 0.0, 1.0, 2.0, 4.0};
    }
    if (std::isfinite(iv.lo)) {
        std::erase_if(g, [&](double v) { return v <= iv.lo; });
        for (double f : {0.25, 0.5}) g.push_back(iv.lo + f * (std::isfinite(iv.hi) ? iv.hi - iv.lo : 1.0));
    }
    return g;
}

// Inverse of the rescaled scale function alpha(t)/alpha(1) at v.
double alpha_inverse(const std::function<double(double)>& alpha, double scale, double v) {
    auto fn = [&alpha, scale](double t) { return alpha(t) / scale; };
    auto [lo, hi] = expand_bracket(fn, v);
    return inverse_monotone(fn, v, lo, hi);
}

}  // namespace

StandardizationPlan plan_standardization(const NormalizingQuadruple& q, Interval x_range,
                                         const LimitMeasure* mu_star) {
    StandardizationPlan plan;

    const auto t_grid = geometric_grid(1e2, 10.0, 9);
    RegVarProfile prof;
    try {
        prof = profile_regular_variation(q, {0.5, 2.0}, t_grid);
    } catch (const std::exception& e) {
        plan.reason = std::string("scale profile failed: ") + e.what();
        return plan;
    }
    if (!prof.regular) {
        plan.reason = "alpha is not regularly varying: " + prof.note;
        return plan;
    }
    plan.rho = prof.rho;
    if (std::abs(prof.rho) <= 1e-6) {
        plan.reason = "rho = 0: shift is not Pi-varying, standardization excluded";
        return plan;
    }

    const double a1 = q.alpha(1.0);
    plan.alpha_scale = a1;
    plan.pushforward_exponent = 1.0 / prof.rho;
    const auto& alpha = q.alpha;

    if (prof.rho > 0.0) {
        for (double t : t_grid) {
            if (std::abs(q.beta(t)) > 1e-12 * std::max(1.0, alpha(t))) {
                plan.reason = "case (i) needs beta identically 0";
                return plan;
            }
        }
        if (!mu_star) {
            plan.reason = "no CEV* limit measure registered for this normalization";
            return plan;
        }
        const auto ys = probe_grid(mu_star->y_support);
        for (double y : ys) {
            if (!(raw::quadrant(*mu_star, 0.0, y) > 0.0)) {
                plan.reason = "limit places no mass on (0,inf) x (y,inf)";
                return plan;
            }
        }
        plan.kind = StdCase::case_i;
        plan.f = [alpha, a1](double x) {
            if (x < 1.0) return 1.0 / (2.0 - x);
            return alpha_inverse(alpha, a1, x);
        };
        return plan;
    }

    // rho < 0: shift must be a constant beta0 with a one-sided range(X).
    const double beta0 = q.beta(t_grid.front());
    for (double t : t_grid) {
        if (std::abs(q.beta(t) - beta0) > 1e-12 * std::max(1.0, std::abs(beta0))) {
            plan.reason = "case (ii) needs a constant shift beta0";
            return plan;
        }
    }
    plan.beta0 = beta0;
    if (x_range.hi <= beta0) {
        plan.kind = StdCase::case_ii_left;
        plan.f = [alpha, a1, beta0](double x) { return alpha_inverse(alpha, a1, beta0 - x); };
    } else if (x_range.lo >= beta0) {
        plan.kind = StdCase::case_ii_right;
        plan.f = [alpha, a1, beta0](double x) { return alpha_inverse(alpha, a1, x - beta0); };
    } else {
        plan.reason = "range(X) is a two-sided neighborhood of beta0";
    }
    return plan;
}

namespace {

struct XMap {
    std::function<double(double)> fwd;   // total on the support closure
    std::function<double(double)> inv;   // total; clamps outside the range
    std::function<double(double)> dinv;  // |d inv / dv| for density rescaling
    int dir;                             // direction of fwd on the support
};

XMap make_xmap(const StandardizationPlan& plan) {
    const double rho = plan.rho;
    const double e = plan.pushforward_exponent;
    if (plan.kind == StdCase::case_i) {
        return XMap{[e](double x) { return x <= 0.0 ? 0.0 : std::pow(x, e); },
                    [rho](double v) { return v <= 0.0 ? 0.0 : std::pow(v, rho); },
                    [rho](double v) { return std::abs(rho) * std::pow(v, rho - 1.0); }, +1};
    }
    if (plan.kind == StdCase::case_ii_left) {
        // x <= 0, v = |x|^{1/rho}: increasing from 0 (at -inf) to +inf (at 0-).
        return XMap{[e](double x) { return x >= 0.0 ? kInf : std::pow(-x, e); },
                    [rho](double v) { return v <= 0.0 ? -kInf : -std::pow(v, rho); },
                    [rho](double v) { return std::abs(rho) * std::pow(v, rho - 1.0); }, +1};
    }
    // case_ii_right: x >= 0, v = x^{1/rho}: decreasing.
    return XMap{[e](double x) { return x <= 0.0 ? kInf : std::pow(x, e); },
                [rho](double v) { return v <= 0.0 ? kInf : std::pow(v, rho); },
                [rho](double v) { return std::abs(rho) * std::pow(v, rho - 1.0); }, -1};
}

MonotoneCoord transform_coord(const MonotoneCoord& c, const XMap& map) {
    if (c.dir == 0) return MonotoneCoord::constant(map.fwd(c.const_value));
    MonotoneCoord out;
    out.dir = c.dir * map.dir;
    out.value = [v = c.value, f = map.fwd](double s) { return f(v(s)); };
    out.inverse = [inv = c.inverse, mi = map.inv](double w) { return inv(mi(w)); };
    const double r1 = map.fwd(c.range.lo), r2 = map.fwd(c.range.hi);
    out.range = Interval{std::min(r1, r2), std::max(r1, r2)};
    return out;
}

}  // namespace

LimitMeasure pushforward_standardized(const LimitMeasure& mu_star,
                                      const StandardizationPlan& plan) {
    if (plan.kind == StdCase::impossible)
        throw std::invalid_argument("pushforward_standardized: plan is impossible");
    const XMap map = make_xmap(plan);

    LimitMeasure out;
    out.id = mu_star.id + ".standardized";
    out.x_support = Interval{0.0, kInf};
    out.y_support = mu_star.y_support;
    out.gamma_y = mu_star.gamma_y;
    out.standardized = true;

    bool collapsed = false;
    for (const auto& comp : mu_star.components) {
        std::visit(
            [&](const auto& c) {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, ProductComponent>) {
                    ProductComponent pc = c;
                    for (auto& a : pc.x_atoms) {
                        const double nx = map.fwd(a.x);
                        if (plan.kind == StdCase::case_i && a.x < 0.0) collapsed = true;
                        a.x = nx;
                    }
                    out.components.push_back(std::move(pc));
                } else if constexpr (std::is_same_v<T, CurveComponent>) {
                    CurveComponent cc = c;
                    if (plan.kind == StdCase::case_i && c.x.range.lo < 0.0) collapsed = true;
                    cc.x = transform_coord(c.x, map);
                    out.components.push_back(std::move(cc));
                } else if constexpr (std::is_same_v<T, DensityComponent>) {
                    DensityComponent dc;
                    const auto& old = c;
                    if (map.dir > 0) {
                        dc.rect = [old, map](double v, double y) {
                            return old.rect(map.inv(v), y);
                        };
                        dc.quadrant = [old, map](double v, double y) {
                            return old.quadrant(map.inv(v), y);
                        };
                        dc.x_tail = [old, map](double v) { return old.x_tail(map.inv(v)); };
                    } else {
                        dc.rect = [old, map](double v, double y) {
                            return old.quadrant(map.inv(v), y);
                        };
                        dc.quadrant = [old, map](double v, double y) {
                            return old.rect(map.inv(v), y);
                        };
                        dc.x_tail = [old, map](double v) {
                            return old.x_tail(-kInf) - old.x_tail(map.inv(v));
                        };
                    }
                    dc.y_slice = old.y_slice;
                    dc.density = [old, map](double v, double y) {
                        return old.density(map.inv(v), y) * map.dinv(v);
                    };
                    dc.note = old.note + " (standardized)";
                    out.components.push_back(std::move(dc));
                } else {
                    throw std::invalid_argument(
                        "pushforward_standardized: wrapped measures are not transformable");
                }
            },
            comp);
    }
    if (mu_star.mass_at_minus_inf) {
        // -inf maps to 0 in every case handled here.
        out.components.push_back(
            ProductComponent{{{0.0, 1.0}}, *mu_star.mass_at_minus_inf, "mapped from x = -inf"});
        if (plan.kind == StdCase::case_i) collapsed = true;
    }
    if (mu_star.mass_at_plus_inf) {
        out.mass_at_plus_inf = mu_star.mass_at_plus_inf;
        out.flags.push_back("mass_at_plus_inf_retained");
    }
    if (collapsed) out.flags.push_back("negative_side_collapsed");
    return out;
}

std::pair<LimitMeasure, LimitMeasure> cev_pair_from_mevt(const LimitMeasure& mu,
                                                         const EviSupport& gx,
                                                         const EviSupport& gy) {
    if (gx.gamma > 0.0 || gy.gamma > 0.0)
        throw std::invalid_argument(
            "cev_pair_from_mevt: requires gamma_x <= 0 and gamma_y <= 0");

    bool dependent = false;
    for (double x : probe_grid(gx.interval()))
        for (double y : probe_grid(gy.interval()))
            if (raw::quadrant(mu, x, y) > 0.0) dependent = true;
    if (!dependent)
        throw std::invalid_argument(
            "cev_pair_from_mevt: joint limit carries no quadrant mass (asymptotic independence)");

    const bool tainted = bool(mu.mass_at_minus_inf) || bool(mu.mass_at_plus_inf);

    LimitMeasure xy = mu;
    xy.id = mu.id + ".cev_xy";
    xy.y_support = gy.interval();
    xy.gamma_y = gy.gamma;
    if (tainted) xy.flags.push_back("violates_ii_star");

    LimitMeasure yx;
    yx.id = mu.id + ".cev_yx";
    yx.components.push_back(SwappedComponent{std::make_shared<LimitMeasure>(mu)});
    yx.x_support = mu.y_support;
    yx.y_support = gx.interval();
    yx.gamma_y = gx.gamma;
    yx.gamma_x = gy.gamma;
    if (tainted) yx.flags.push_back("violates_ii_star");
    return {std::move(xy), std::move(yx)};
}

LimitMeasure mevt_from_cev_pair(const LimitMeasure& mu_xy, const LimitMeasure& mu_yx,
                                const EviSupport& gx, const EviSupport& gy) {
    const auto xs = probe_grid(gx.interval());
    const auto ys = probe_grid(gy.interval());
    for (double x : xs) {
        for (double y : ys) {
            const double lhs = raw::quadrant(mu_xy, x, y);
            const double rhs = raw::quadrant(mu_yx, y, x);
            if (std::abs(lhs - rhs) > kOverlapTol)
                throw std::runtime_error(
                    "mevt_from_cev_pair: conditional limits disagree on the shared quadrant "
                    "(normalizations not equivalent)");
        }
    }

    LimitMeasure out;
    out.id = mu_xy.id + "+" + mu_yx.id + ".mevt";
    out.components.push_back(MevtPasteComponent{std::make_shared<LimitMeasure>(mu_xy),
                                                std::make_shared<LimitMeasure>(mu_yx)});
    out.x_support = gx.interval();
    out.y_support = gy.interval();
    out.gamma_x = gx.gamma;
    out.gamma_y = gy.gamma;
    for (const auto& f : mu_xy.flags) out.flags.push_back(f);
    for (const auto& f : mu_yx.flags) out.flags.push_back(f);
    return out;
}

double overlap_consistency(const LimitMeasure& mu_xy, const LimitMeasure& mu_yx,
                           std::span<const std::pair<double, double>> grid) {
    double worst = 0.0;
    for (const auto& [x, y] : grid) {
        const double d = std::abs(raw::quadrant(mu_xy, x, y) - raw::quadrant(mu_yx, y, x));
        worst = std::max(worst, d);
    }
    return worst;
}

}  // namespace cevmlab

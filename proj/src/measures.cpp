#include "cevmlab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cevmlab {

namespace {

double tail_total(const Tail1D& t) { return t.tail(t.support.lo); }

// Guarded product: a weight of zero kills an infinite tail.
double wtimes(double w, double tail) {
    if (w == 0.0) return 0.0;
    return w * tail;
}

double atoms_leq(const ProductComponent& p, double x) {
    double s = 0.0;
    for (const auto& a : p.x_atoms)
        if (a.x <= x) s += a.w;
    return s;
}

double atoms_gt(const ProductComponent& p, double x) {
    double s = 0.0;
    for (const auto& a : p.x_atoms)
        if (a.x > x) s += a.w;
    return s;
}

double atoms_total(const ProductComponent& p) {
    double s = 0.0;
    for (const auto& a : p.x_atoms) s += a.w;
    return s;
}

struct SRange {
    double lo;
    double hi;
    bool empty() const { return !(lo < hi); }
};

constexpr SRange kAllS{-kInf, kInf};
constexpr SRange kEmptyS{kInf, -kInf};

// {s : coord(s) <= v}; curves carry no atoms and attain their range
// endpoints only in the limit, so endpoint conventions carry no mass.
SRange s_where_leq(const MonotoneCoord& c, double v) {
    if (c.dir == 0) return (c.const_value <= v) ? kAllS : kEmptyS;
    if (v >= c.range.hi) return kAllS;
    if (v <= c.range.lo) return kEmptyS;
    if (c.dir > 0) return SRange{-kInf, c.inverse(v)};
    return SRange{c.inverse(v), kInf};
}

// {s : coord(s) > v}.
SRange s_where_gt(const MonotoneCoord& c, double v) {
    if (c.dir == 0) return (c.const_value > v) ? kAllS : kEmptyS;
    if (v >= c.range.hi) return kEmptyS;
    if (v <= c.range.lo) return kAllS;
    if (c.dir > 0) return SRange{c.inverse(v), kInf};
    return SRange{-kInf, c.inverse(v)};
}

double curve_mass(const CurveComponent& c, SRange a, SRange b) {
    const double lo = std::max({a.lo, b.lo, c.s_min});
    const double hi = std::min(a.hi, b.hi);
    if (!(lo < hi)) return 0.0;
    const double at_hi = (hi == kInf) ? 0.0 : c.h(hi);
    return c.h(lo) - at_hi;
}

double comp_rect(const MeasureComponent& comp, double x, double y);
double comp_quadrant(const MeasureComponent& comp, double x, double y);
double comp_y_slice(const MeasureComponent& comp, double y);
double comp_x_tail(const MeasureComponent& comp, double x);

double comp_rect(const MeasureComponent& comp, double x, double y) {
    return std::visit(
        [&](const auto& c) -> double {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, ProductComponent>) {
                return wtimes(atoms_leq(c, x), c.y_tail.tail(y));
            } else if constexpr (std::is_same_v<T, CurveComponent>) {
                return curve_mass(c, s_where_leq(c.x, x), s_where_gt(c.y, y));
            } else if constexpr (std::is_same_v<T, DensityComponent>) {
                return c.rect(x, y);
            } else if constexpr (std::is_same_v<T, SwappedComponent>) {
                return raw::x_tail(*c.inner, y) - raw::quadrant(*c.inner, y, x);
            } else {
                return raw::rect(*c.xy, x, y);
            }
        },
        comp);
}

double comp_quadrant(const MeasureComponent& comp, double x, double y) {
    return std::visit(
        [&](const auto& c) -> double {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, ProductComponent>) {
                return wtimes(atoms_gt(c, x), c.y_tail.tail(y));
            } else if constexpr (std::is_same_v<T, CurveComponent>) {
                return curve_mass(c, s_where_gt(c.x, x), s_where_gt(c.y, y));
            } else if constexpr (std::is_same_v<T, DensityComponent>) {
                return c.quadrant(x, y);
            } else if constexpr (std::is_same_v<T, SwappedComponent>) {
                return raw::quadrant(*c.inner, y, x);
            } else {
                return raw::quadrant(*c.xy, x, y);
            }
        },
        comp);
}

double comp_y_slice(const MeasureComponent& comp, double y) {
    return std::visit(
        [&](const auto& c) -> double {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, ProductComponent>) {
                return wtimes(atoms_total(c), c.y_tail.tail(y));
            } else if constexpr (std::is_same_v<T, CurveComponent>) {
                return curve_mass(c, kAllS, s_where_gt(c.y, y));
            } else if constexpr (std::is_same_v<T, DensityComponent>) {
                return c.y_slice(y);
            } else if constexpr (std::is_same_v<T, SwappedComponent>) {
                return raw::x_tail(*c.inner, y);
            } else {
                return raw::y_slice(*c.xy, y);
            }
        },
        comp);
}

double comp_x_tail(const MeasureComponent& comp, double x) {
    return std::visit(
        [&](const auto& c) -> double {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, ProductComponent>) {
                return wtimes(atoms_gt(c, x), tail_total(c.y_tail));
            } else if constexpr (std::is_same_v<T, CurveComponent>) {
                return curve_mass(c, s_where_gt(c.x, x), kAllS);
            } else if constexpr (std::is_same_v<T, DensityComponent>) {
                return c.x_tail(x);
            } else if constexpr (std::is_same_v<T, SwappedComponent>) {
                return raw::y_slice(*c.inner, x);
            } else {
                return raw::y_slice(*c.yx, x);
            }
        },
        comp);
}

}  // namespace

MonotoneCoord MonotoneCoord::increasing(std::function<double(double)> v,
                                        std::function<double(double)> inv, Interval range) {
    return MonotoneCoord{+1, std::move(v), std::move(inv), 0.0, range};
}

MonotoneCoord MonotoneCoord::decreasing(std::function<double(double)> v,
                                        std::function<double(double)> inv, Interval range) {
    return MonotoneCoord{-1, std::move(v), std::move(inv), 0.0, range};
}

MonotoneCoord MonotoneCoord::constant(double v) {
    return MonotoneCoord{0, nullptr, nullptr, v, Interval{v, v}};
}

Tail1D nu1() {
    return Tail1D{"nu_1", [](double y) { return y <= -1.0 ? kInf : 1.0 / (1.0 + y); },
                  Interval{-1.0, kInf}};
}

Tail1D nu_tilde1() {
    return Tail1D{"nu_tilde_1", [](double y) { return y <= 0.0 ? kInf : 1.0 / y; },
                  Interval{0.0, kInf}};
}

Tail1D nu_minus1() {
    return Tail1D{"nu_-1", [](double y) { return y >= 1.0 ? 0.0 : 1.0 - y; },
                  Interval{-kInf, 1.0}};
}

Tail1D gev_tail_measure(double gamma) {
    const EviSupport e = support_interval(gamma);
    return Tail1D{"gev_tail(" + std::to_string(gamma) + ")",
                  [gamma, e](double y) {
                      if (y <= e.q_lower) return kInf;
                      if (y >= e.q_upper) return 0.0;
                      return gev_tail(gamma, y);
                  },
                  e.interval()};
}

Tail1D scale_tail(const Tail1D& base, double w, const std::string& name) {
    auto inner = base.tail;
    return Tail1D{name.empty() ? std::to_string(w) + "*" + base.name : name,
                  [inner, w](double y) { return wtimes(w, inner(y)); }, base.support};
}

namespace raw {

double rect(const LimitMeasure& m, double x, double y) {
    double s = 0.0;
    for (const auto& c : m.components) s += comp_rect(c, x, y);
    if (m.mass_at_minus_inf) s += m.mass_at_minus_inf->tail(y);
    if (m.mass_at_plus_inf && x == kInf) s += m.mass_at_plus_inf->tail(y);
    return s;
}

double quadrant(const LimitMeasure& m, double x, double y) {
    double s = 0.0;
    for (const auto& c : m.components) s += comp_quadrant(c, x, y);
    if (m.mass_at_plus_inf && x < kInf) s += m.mass_at_plus_inf->tail(y);
    return s;
}

double y_slice(const LimitMeasure& m, double y) {
    double s = 0.0;
    for (const auto& c : m.components) s += comp_y_slice(c, y);
    if (m.mass_at_minus_inf) s += m.mass_at_minus_inf->tail(y);
    if (m.mass_at_plus_inf) s += m.mass_at_plus_inf->tail(y);
    return s;
}

double x_tail(const LimitMeasure& m, double x) {
    double s = 0.0;
    for (const auto& c : m.components) s += comp_x_tail(c, x);
    if (m.mass_at_plus_inf && x < kInf) s += tail_total(*m.mass_at_plus_inf);
    return s;
}

}  // namespace raw

double rect_mass(const LimitMeasure& m, double x, double y) {
    if (!(y > m.y_support.lo))
        throw std::domain_error("rect_mass: y at or below the lower support endpoint");
    return raw::rect(m, x, y);
}

double quadrant_mass(const LimitMeasure& m, double x, double y) {
    if (!(y > m.y_support.lo))
        throw std::domain_error("quadrant_mass: y at or below the lower support endpoint");
    return raw::quadrant(m, x, y);
}

double survival_complement(const LimitMeasure& m, double x, double y) {
    if (!m.x_support.contains_open(x) || !m.y_support.contains_open(y))
        throw std::domain_error("survival_complement: point outside the support interior");
    // Disjoint split {X > x} + {X <= x, Y > y}; agrees with the
    // inclusion-exclusion form but never forms inf - inf.
    return raw::x_tail(m, x) + raw::rect(m, x, y);
}

double marginal_x_tail(const LimitMeasure& m, double x) { return raw::x_tail(m, x); }

double marginal_y_tail(const LimitMeasure& m, double y) {
    if (!(y > m.y_support.lo))
        throw std::domain_error("marginal_y_tail: y at or below the lower support endpoint");
    return raw::y_slice(m, y);
}

bool is_product(const LimitMeasure& m, std::span<const std::pair<double, double>> grid,
                double tol) {
    if (grid.empty()) return true;
    double ylo = kInf, yhi = -kInf;
    for (const auto& [x, y] : grid) {
        ylo = std::min(ylo, y);
        yhi = std::max(yhi, y);
    }
    const double y0 = 0.5 * (ylo + yhi);
    const double full0 = raw::rect(m, kInf, y0);
    for (const auto& [x, y] : grid) {
        const double lhs = raw::rect(m, x, y) * full0;
        const double rhs = raw::rect(m, x, y0) * raw::rect(m, kInf, y);
        if (std::abs(lhs - rhs) > tol * std::max({1.0, std::abs(lhs), std::abs(rhs)}))
            return false;
    }
    return true;
}

double homogeneity_defect(const LimitMeasure& m, double scale,
                          std::span<const std::pair<double, double>> grid) {
    if (!m.standardized)
        throw std::domain_error("homogeneity_defect: measure not in standardized form");
    if (!(scale > 0.0)) throw std::domain_error("homogeneity_defect: scale must be positive");
    double worst = 0.0;
    for (const auto& [x, y] : grid) {
        const double scaled = raw::quadrant(m, scale * x, scale * y);
        const double base = raw::quadrant(m, x, y);
        worst = std::max(worst, std::abs(scaled - base / scale));
    }
    return worst;
}

std::vector<double> atom_positions(const LimitMeasure& m) {
    std::vector<double> xs;
    for (const auto& comp : m.components)
        if (const auto* p = std::get_if<ProductComponent>(&comp))
            for (const auto& a : p->x_atoms) xs.push_back(a.x);
    return xs;
}

nlohmann::json measure_to_json(const LimitMeasure& m) {
    nlohmann::json j;
    j["id"] = m.id;
    j["x_support"] = {m.x_support.lo, m.x_support.hi};
    j["y_support"] = {m.y_support.lo, m.y_support.hi};
    if (m.gamma_x) j["gamma_x"] = *m.gamma_x;
    if (m.gamma_y) j["gamma_y"] = *m.gamma_y;
    j["standardized"] = m.standardized;
    j["satisfies_ii_star"] = m.satisfies_ii_star();
    if (!m.flags.empty()) j["flags"] = m.flags;
    if (m.mass_at_minus_inf) j["mass_at_minus_inf"] = m.mass_at_minus_inf->name;
    if (m.mass_at_plus_inf) j["mass_at_plus_inf"] = m.mass_at_plus_inf->name;
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& comp : m.components) {
        nlohmann::json cj;
        std::visit(
            [&](const auto& c) {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, ProductComponent>) {
                    cj["kind"] = "product";
                    nlohmann::json atoms = nlohmann::json::array();
                    for (const auto& a : c.x_atoms) atoms.push_back({a.x, a.w});
                    cj["x_atoms"] = atoms;
                    cj["y_tail"] = c.y_tail.name;
                    if (!c.note.empty()) cj["note"] = c.note;
                } else if constexpr (std::is_same_v<T, CurveComponent>) {
                    cj["kind"] = "curve";
                    cj["s_min"] = c.s_min;
                    if (!c.note.empty()) cj["note"] = c.note;
                } else if constexpr (std::is_same_v<T, DensityComponent>) {
                    cj["kind"] = "density";
                    if (!c.note.empty()) cj["note"] = c.note;
                } else if constexpr (std::is_same_v<T, SwappedComponent>) {
                    cj["kind"] = "swapped";
                    cj["inner"] = c.inner->id;
                } else {
                    cj["kind"] = "mevt_paste";
                    cj["xy"] = c.xy->id;
                    cj["yx"] = c.yx->id;
                }
            },
            comp);
        comps.push_back(cj);
    }
    j["components"] = comps;
    return j;
}

}  // namespace cevmlab

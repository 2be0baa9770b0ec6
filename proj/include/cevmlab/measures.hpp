#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "cevmlab/common.hpp"
#include "cevmlab/margins.hpp"

namespace cevmlab {

// One-dimensional tail measure: tail(v) = mass of (v, hi]. Total and
// monotone on the whole line (+inf below the support, 0 above it).
struct Tail1D {
    std::string name;
    std::function<double(double)> tail;
    Interval support;
};

Tail1D nu1();                           // nu_1(y, inf] = 1/(1+y) on (-1, inf)
Tail1D nu_tilde1();                     // 1/y on (0, inf)
Tail1D nu_minus1();                     // Lebesgue on (-inf, 1]: tail (1-y)^+
Tail1D gev_tail_measure(double gamma);  // (1+gamma y)^(-1/gamma) on E^(gamma)
Tail1D scale_tail(const Tail1D& base, double w, const std::string& name = "");

struct Atom {
    double x;
    double w;
};

// Atomic x-marginal tensored with a y tail measure.
struct ProductComponent {
    std::vector<Atom> x_atoms;
    Tail1D y_tail;
    std::string note;
};

// One monotone (or constant) coordinate of a curve parametrization.
struct MonotoneCoord {
    int dir = 0;  // +1 increasing, -1 decreasing, 0 constant
    std::function<double(double)> value;
    std::function<double(double)> inverse;  // coordinate -> s; unused when dir == 0
    double const_value = 0.0;
    Interval range;  // closure of attained values

    static MonotoneCoord increasing(std::function<double(double)> v,
                                    std::function<double(double)> inv, Interval range);
    static MonotoneCoord decreasing(std::function<double(double)> v,
                                    std::function<double(double)> inv, Interval range);
    static MonotoneCoord constant(double v);
};

// Mass on the curve {(x(s), y(s)) : s > s_min} with h(r) = mass of {s > r};
// h is continuous and nonincreasing with h(inf) = 0 (no atoms on the curve).
struct CurveComponent {
    MonotoneCoord x;
    MonotoneCoord y;
    std::function<double(double)> h;
    double s_min = -kInf;
    std::string note;
};

// Bivariate density block with closed-form set functions. `density` itself
// is descriptive (serialization, pushforward derivatives).
struct DensityComponent {
    std::function<double(double, double)> rect;      // [-inf,x] x (y,inf]
    std::function<double(double, double)> quadrant;  // (x,inf] x (y,inf]
    std::function<double(double)> y_slice;           // full-x x (y,inf]
    std::function<double(double)> x_tail;            // (x,inf] x full-y (may be +inf)
    std::function<double(double, double)> density;
    std::string note;
};

struct LimitMeasure;

// Coordinate swap (x,y) -> (y,x) of a whole measure.
struct SwappedComponent {
    std::shared_ptr<const LimitMeasure> inner;
};

// Joint measure recomposed from the two conditional limits: upper-y sets are
// read from xy, lower-y / full-column sets from yx.
struct MevtPasteComponent {
    std::shared_ptr<const LimitMeasure> xy;
    std::shared_ptr<const LimitMeasure> yx;
};

using MeasureComponent =
    std::variant<ProductComponent, CurveComponent, DensityComponent, SwappedComponent,
                 MevtPasteComponent>;

struct LimitMeasure {
    std::string id;
    std::vector<MeasureComponent> components;
    Interval x_support = full_line();
    Interval y_support = full_line();
    std::optional<double> gamma_x;
    std::optional<double> gamma_y;
    std::optional<Tail1D> mass_at_minus_inf;  // on {-inf} x .
    std::optional<Tail1D> mass_at_plus_inf;   // on {+inf} x .
    bool standardized = false;                // declared on [0,inf]^2 \ {(0,0)}
    std::vector<std::string> flags;

    bool satisfies_ii_star() const { return !mass_at_minus_inf && !mass_at_plus_inf; }
};

// mu([-inf, x] x (y, inf]); closed at x, so atoms sitting exactly at x count.
// y at or below the lower support endpoint is a domain error.
double rect_mass(const LimitMeasure& m, double x, double y);

// mu((x, inf] x (y, inf]).
double quadrant_mass(const LimitMeasure& m, double x, double y);

// mu(E \ ([q_x, x] x [q_y, y])) for (x, y) inside both support interiors,
// computed by inclusion-exclusion from the marginal tails.
double survival_complement(const LimitMeasure& m, double x, double y);

// mu((x, inf] x full-y) and mu(full-x x (y, inf]).
double marginal_x_tail(const LimitMeasure& m, double x);
double marginal_y_tail(const LimitMeasure& m, double y);

// Product test against a fixed reference slice y0 = midpoint of the probed
// y values: rect(x,y) rect(inf,y0) = rect(x,y0) rect(inf,y) within tol.
bool is_product(const LimitMeasure& m, std::span<const std::pair<double, double>> grid,
                double tol = 1e-9);

// max over quadrant corners A = (x,inf] x (y,inf] of
// |mu(scale A) - mu(A)/scale|; only for measures in standardized form.
double homogeneity_defect(const LimitMeasure& m, double scale,
                          std::span<const std::pair<double, double>> grid);

nlohmann::json measure_to_json(const LimitMeasure& m);

// x positions of the atomic part (product components of this measure).
std::vector<double> atom_positions(const LimitMeasure& m);

// Unchecked primitives (total in their arguments); the public operations add
// the domain guards. Exposed for transforms and estimator cross-checks.
namespace raw {
double rect(const LimitMeasure& m, double x, double y);
double quadrant(const LimitMeasure& m, double x, double y);
double y_slice(const LimitMeasure& m, double y);
double x_tail(const LimitMeasure& m, double x);
}  // namespace raw

}  // namespace cevmlab

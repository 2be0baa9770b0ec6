#include "cevmlab/scenarios.hpp"

#include <cmath>
#include <stdexcept>

#include "cevmlab/rootfind.hpp"

namespace cevmlab {

std::string to_string(FunctionalKind k) {
    switch (k) {
        case FunctionalKind::CevRect: return "cev_rect";
        case FunctionalKind::MevtSurvival: return "mevt_survival";
        case FunctionalKind::JointQuadrant: return "joint_quadrant";
        case FunctionalKind::StdRect: return "standardized_rect";
        case FunctionalKind::StdQuadrant: return "standardized_quadrant";
        case FunctionalKind::Hrv: return "hrv";
        case FunctionalKind::LocalizedRect: return "localized_rect";
        case FunctionalKind::LocalizedQuadrant: return "localized_quadrant";
    }
    return "?";
}

std::string to_string(StdCase c) {
    switch (c) {
        case StdCase::case_i: return "case_i";
        case StdCase::case_ii_left: return "case_ii_left";
        case StdCase::case_ii_right: return "case_ii_right";
        case StdCase::impossible: return "impossible";
    }
    return "?";
}

namespace scenario_fn {

double g_osc(double y) {
    if (y < 1.0) return 2.0;
    return y * (2.0 + std::sin(std::log(y)));
}

double g_osc_inv(double v) {
    if (!(v >= 2.0)) throw std::invalid_argument("g_osc_inv: v below range");
    const double lo = std::max(1.0, v / 3.0);
    const double hi = std::max(1.0, v);
    return inverse_monotone([](double y) { return g_osc(y); }, v, lo, hi);
}

double g_c(double c, double u) { return u * (1.0 + c * std::sin(std::log(u))); }

double g_c_inv(double c, double v) {
    if (!(v > 0.0) || !(v <= 1.0)) throw std::invalid_argument("g_c_inv: v outside (0,1]");
    const double lo = 2.0 * v / 3.0;
    const double hi = std::min(1.0, 2.0 * v);
    return inverse_monotone([c](double u) { return g_c(c, u); }, v, lo, hi);
}

double psi_log(double x) {
    const double lx = std::log(x);
    return lx + std::sin(std::log(lx));
}

double psi_log_inv(double v) {
    if (!(v >= 1.0)) throw std::invalid_argument("psi_log_inv: v below range");
    const double lo = std::exp(v - 1.0);
    const double hi = std::exp(std::min(v + 1.0, 709.0));
    return inverse_monotone([](double x) { return psi_log(x); }, v, std::max(lo, std::exp(1.0)),
                            hi);
}

double z_surv(double x) {
    if (x < kZCutoff) return 1.0;
    return 4.0 / (3.0 * psi_log_inv(x)) - std::exp(-x) / 3.0;
}

namespace {
// psi_log_inv(kZCutoff), computed once; z_surv expressed over w = psi^{-1}(x)
// needs only one bisection per inversion.
const double kW0 = psi_log_inv(kZCutoff);
const double kSurvAtCutoff = 4.0 / (3.0 * kW0) - std::exp(-kZCutoff) / 3.0;

double z_surv_of_w(double w) { return 4.0 / (3.0 * w) - std::exp(-psi_log(w)) / 3.0; }
}  // namespace

double z_surv_inv(double u) {
    if (u >= kSurvAtCutoff) return kZCutoff;
    const double w = inverse_monotone([](double w_) { return z_surv_of_w(w_); }, u, kW0, 1e18);
    return psi_log(w);
}

double pareto_mix_surv(double x) {
    if (x <= 1.0) return 1.0;
    return (2.0 + std::sin(std::log(x))) / (2.0 * x * x);
}

double pareto_mix_inv(double u) {
    if (!(u > 0.0) || !(u > 0.0 && u <= 1.0))
        throw std::invalid_argument("pareto_mix_inv: u outside (0,1]");
    if (u == 1.0) return 1.0;
    const double hi = std::sqrt(1.5 / u) + 1.0;
    return inverse_monotone([](double x) { return pareto_mix_surv(x); }, u, 1.0, hi);
}

}  // namespace scenario_fn

namespace {

using scenario_fn::g_c;
using scenario_fn::g_c_inv;
using scenario_fn::g_osc;
using scenario_fn::g_osc_inv;
using scenario_fn::pareto_mix_inv;
using scenario_fn::pareto_mix_surv;
using scenario_fn::psi_log;
using scenario_fn::z_surv;
using scenario_fn::z_surv_inv;

constexpr double kTau8 = 0.25;  // index of the light branch in the hidden tail scenario

double pos(double v) { return v > 0.0 ? v : 0.0; }

NormalizingQuadruple quad(std::function<double(double)> a, std::function<double(double)> b,
                          std::function<double(double)> c, std::function<double(double)> d,
                          double gamma_y, std::optional<double> gx = std::nullopt) {
    NormalizingQuadruple q;
    q.alpha = std::move(a);
    q.beta = std::move(b);
    q.c = std::move(c);
    q.d = std::move(d);
    q.gamma_y = gamma_y;
    q.gamma_x_hint = gx;
    return q;
}

std::function<double(double)> fconst(double v) {
    return [v](double) { return v; };
}
std::function<double(double)> fident() {
    return [](double t) { return t; };
}

std::shared_ptr<LimitMeasure> new_measure(std::string id, Interval xs, Interval ys) {
    auto m = std::make_shared<LimitMeasure>();
    m->id = std::move(id);
    m->x_support = xs;
    m->y_support = ys;
    return m;
}

// ---------------------------------------------------------------------------
// S1: Y standard Pareto, B uniform {0,1}, X = B + (1-B)(2 - 1/Y). Two
// printed normalizations with genuinely different limit measures.
// ---------------------------------------------------------------------------
Scenario make_s1() {
    Scenario s;
    s.id = "S1";
    s.title = "dual CEVM limits under different normalizations";
    s.draws_per_sample = 2;
    s.draw = [](const CounterRng& rng, uint64_t i) {
        const bool b = rng.pick(i, 0, 2) == 1;
        const double u = rng.u01(i, 1);
        return Sample{b ? 1.0 : 2.0 - u, 1.0 / u};
    };
    s.margin = quad(fconst(1.0), fconst(0.0), fident(), fident(), 1.0);
    s.margin_y_checks = {0.0, 1.0, 3.0};

    {
        ModelSpec m;
        m.tag = "cev_xy";
        m.functional = FunctionalKind::CevRect;
        m.quadruple = quad(fconst(1.0), fconst(0.0), fident(), fident(), 1.0);
        auto meas = new_measure("S1.cev_xy", full_line(), Interval{-1.0, kInf});
        meas->gamma_y = 1.0;
        meas->components.push_back(
            ProductComponent{{{1.0, 0.5}, {2.0, 0.5}}, nu1(), "atoms at the accumulation points"});
        m.analytic = meas;
        m.prelimit = [](double t, double x, double y) {
            const double iny = 1.0 / (1.0 + y);
            double v = (x >= 1.0) ? 0.5 * iny : 0.0;
            if (x >= 2.0)
                v += 0.5 * iny;
            else if (x >= 1.0)
                v += 0.5 * pos(iny - t * (2.0 - x));
            return v;
        };
        m.prelimit_t_min = 10.0;
        m.expected = VerdictKind::Converges;
        m.ref_x = 1.5;
        m.ref_y = 0.0;
        m.expected_limit = 0.5;
        m.mc_grid = {{-0.5, 0.0}, {1.0 + kAtomNudge, 0.0}, {1.5, 0.0},          {1.5, 1.0},
                     {2.0 + kAtomNudge, 1.0},              {2.0 + kAtomNudge, 0.0},
                     {3.0, 0.0},  {1.5, 3.0}};
        m.mc_verdict = true;
        s.models.push_back(std::move(m));
    }
    {
        ModelSpec m;
        m.tag = "cev_xy_alt";
        m.functional = FunctionalKind::CevRect;
        m.quadruple = quad([](double t) { return 1.0 / t; }, fconst(2.0), fident(), fident(), 1.0);
        auto meas = new_measure("S1.cev_xy_alt", full_line(), Interval{-1.0, kInf});
        meas->gamma_y = 1.0;
        meas->mass_at_minus_inf = scale_tail(nu1(), 0.5);
        CurveComponent curve;
        curve.x = MonotoneCoord::increasing([](double s) { return -1.0 / (1.0 + s); },
                                            [](double v) { return -1.0 / v - 1.0; },
                                            Interval{-kInf, 0.0});
        curve.y = MonotoneCoord::increasing(fident(), fident(), Interval{-1.0, kInf});
        curve.h = [](double r) { return 1.0 / (2.0 * (1.0 + r)); };
        curve.s_min = -1.0;
        curve.note = "{(-(1+y)^{-1}, y) : y > -1}";
        meas->components.push_back(std::move(curve));
        meas->flags.push_back("violates_ii_star");
        m.analytic = meas;
        m.prelimit = [](double t, double x, double y) {
            const double iny = 1.0 / (1.0 + y);
            double v = (x >= -t) ? 0.5 * iny : 0.0;
            v += (x >= 0.0) ? 0.5 * iny : 0.5 * pos(iny + x);
            return v;
        };
        m.prelimit_t_min = 10.0;
        m.expected = VerdictKind::Converges;
        m.ref_x = -0.5;
        m.ref_y = 0.0;
        m.expected_limit = 0.75;
        m.mc_grid = {{-1.5, 0.0}, {-0.5, 0.0}, {-0.5, 1.0}, {0.0, 0.0}, {0.5, 0.0}, {-0.9, 3.0}};
        m.mc_verdict = true;
        s.models.push_back(std::move(m));
    }
    return s;
}

// ---------------------------------------------------------------------------
// S2: X = 2 + B/Y, B uniform {-1,1}. The fine CEVM limit sits on two curves
// and is not a product measure, yet no monotone f standardizes X (two-sided
// neighborhood of 2).
// ---------------------------------------------------------------------------
Scenario make_s2() {
    Scenario s;
    s.id = "S2";
    s.title = "non-product CEVM limit that cannot be standardized";
    s.draws_per_sample = 2;
    s.draw = [](const CounterRng& rng, uint64_t i) {
        const double b = rng.pick(i, 0, 2) == 1 ? 1.0 : -1.0;
        const double u = rng.u01(i, 1);
        return Sample{2.0 + b * u, 1.0 / u};
    };
    s.margin = quad(fconst(1.0), fconst(0.0), fident(), fident(), 1.0);
    s.margin_y_checks = {0.0, 1.0, 3.0};

    {
        ModelSpec m;
        m.tag = "cev_xy";
        m.functional = FunctionalKind::CevRect;
        m.quadruple = quad([](double t) { return 1.0 / t; }, fconst(2.0), fident(), fconst(0.0),
                           1.0);
        auto meas = new_measure("S2.cev_xy", full_line(), Interval{0.0, kInf});
        meas->gamma_y = 1.0;
        CurveComponent plus;
        plus.x = MonotoneCoord::decreasing([](double s) { return 1.0 / s; },
                                           [](double v) { return 1.0 / v; }, Interval{0.0, kInf});
        plus.y = MonotoneCoord::increasing(fident(), fident(), Interval{0.0, kInf});
        plus.h = [](double r) { return 1.0 / (2.0 * r); };
        plus.s_min = 0.0;
        plus.note = "{(1/y, y) : y > 0}";
        CurveComponent minus;
        minus.x = MonotoneCoord::increasing([](double s) { return -1.0 / s; },
                                            [](double v) { return -1.0 / v; },
                                            Interval{-kInf, 0.0});
        minus.y = MonotoneCoord::increasing(fident(), fident(), Interval{0.0, kInf});
        minus.h = [](double r) { return 1.0 / (2.0 * r); };
        minus.s_min = 0.0;
        minus.note = "{(-1/y, y) : y > 0}";
        meas->components.push_back(std::move(plus));
        meas->components.push_back(std::move(minus));
        m.analytic = meas;
        m.prelimit = [](double t, double x, double y) {
            (void)t;
            if (x > 0.0) return 0.5 * std::min(x, 1.0 / y) + 0.5 / y;
            if (x == 0.0) return 0.5 / y;
            return 0.5 * pos(1.0 / y + x);
        };
        m.prelimit_t_min = 50.0;
        m.expected = VerdictKind::Converges;
        m.ref_x = 1.0;
        m.ref_y = 1.0;
        m.expected_limit = 1.0;
        m.mc_grid = {{-1.5, 0.5}, {-0.5, 0.5}, {0.0, 1.0}, {0.5, 1.0},
                     {1.0, 1.0},  {3.0, 0.5},  {0.5, 0.5}};
        m.mc_verdict = true;
        s.models.push_back(std::move(m));
    }

    // A family of monotone candidates f; every standardized quadrant
    // functional is identically zero at large t.
    struct Fam {
        const char* tag;
        std::function<double(double)> f;
    };
    const Fam fam[] = {
        {"standardized_f1", [](double x) { return x; }},
        {"standardized_f2", [](double x) { return 1.0 / (3.0 - x); }},
        {"standardized_f3", [](double x) { return std::exp(x); }},
        {"standardized_f4", [](double x) { return 1.0 / (x - 1.0); }},
        {"standardized_f5", [](double x) { return std::log1p(x); }},
    };
    for (const auto& fm : fam) {
        ModelSpec m;
        m.tag = fm.tag;
        m.functional = FunctionalKind::StdQuadrant;
        m.f_std = fm.f;
        auto meas = new_measure(std::string("S2.") + fm.tag + ".zero", Interval{0.0, kInf},
                                Interval{0.0, kInf});
        m.analytic = meas;  // zero measure: the limit is degenerate
        m.prelimit = [](double, double, double) { return 0.0; };
        m.prelimit_t_min = 100.0;
        m.expected = VerdictKind::Degenerate;
        m.ref_x = 0.5;
        m.ref_y = 0.5;
        m.mc_grid = {{0.5, 0.5}, {1.0, 0.5}, {1.0, 1.0}, {3.0, 1.0}, {0.5, 3.0}};
        m.mc_verdict = true;
        s.models.push_back(std::move(m));
    }

    s.standardize = StandardizeCase{"cev_xy", Interval{1.0, 3.0}, "", StdCase::impossible};
    return s;
}

// ---------------------------------------------------------------------------
// S3: X = B(1 - U/Y). The coarse limit is a product measure, yet
// f(x) = 1/(1-x) standardizes X; the fine limit around beta_0 = 1 pushes
// forward onto the printed atom-plus-density measure.
// ---------------------------------------------------------------------------
Scenario make_s3() {
    Scenario s;
    s.id = "S3";
    s.title = "product CEVM limit that is nevertheless standardizable";
    s.draws_per_sample = 3;
    s.draw = [](const CounterRng& rng, uint64_t i) {
        const double b = rng.pick(i, 0, 2) == 1 ? 1.0 : -1.0;
        const double uy = rng.u01(i, 1);
        const double uu = rng.u01(i, 2);
        return Sample{b * (1.0 - uu * uy), 1.0 / uy};
    };
    s.margin = quad(fconst(1.0), fconst(0.0), fident(), fident(), 1.0);
    s.margin_y_checks = {0.0, 1.0, 3.0};

    {
        ModelSpec m;
        m.tag = "cev_xy";
        m.functional = FunctionalKind::CevRect;
        m.quadruple = quad(fconst(1.0), fconst(0.0), fident(), fconst(0.0), 1.0);
        auto meas = new_measure("S3.cev_xy", full_line(), Interval{0.0, kInf});
        meas->gamma_y = 1.0;
        meas->components.push_back(
            ProductComponent{{{-1.0, 0.5}, {1.0, 0.5}}, nu_tilde1(), "atoms at +-1"});
        m.analytic = meas;
        m.prelimit = [](double t, double x, double y) {
            if (x >= 1.0) return 1.0 / y;
            if (x >= 0.0) {
                const double c = t * (1.0 - x);
                double v = 0.5 / y;
                if (c * y < 1.0) v += 0.5 * (1.0 / y - c + c * std::log(c * y));
                return v;
            }
            if (x > -1.0) return 0.5 / y;
            return 0.0;
        };
        m.prelimit_t_min = 100.0;
        m.expected = VerdictKind::Converges;
        m.ref_x = 1.5;
        m.ref_y = 1.0;
        m.expected_limit = 1.0;
        m.mc_grid = {{-1.5, 0.5},
                     {-1.0 - kAtomNudge, 0.5},
                     {-0.5, 1.0},
                     {0.0, 1.0},
                     {1.0 + kAtomNudge, 0.5},
                     {3.0, 3.0}};
        m.mc_verdict = true;
        s.models.push_back(std::move(m));
    }
    {
        ModelSpec m;
        m.tag = "cev_xy_fine";
        m.functional = FunctionalKind::CevRect;
        m.quadruple = quad([](double t) { return 1.0 / t; }, fconst(1.0), fident(), fconst(0.0),
                           1.0);
        auto meas = new_measure("S3.cev_xy_fine", Interval{-kInf, 0.0}, Interval{0.0, kInf});
        meas->gamma_y = 1.0;
        meas->mass_at_minus_inf = scale_tail(nu_tilde1(), 0.5);
        DensityComponent dc;
        dc.rect = [](double x, double y) {
            if (!(y > 0.0)) return kInf;
            if (x >= 0.0) return 0.5 / y;
            const double ax = -x;
            if (ax * y >= 1.0) return 0.0;
            return 0.5 * (1.0 / y - ax + ax * std::log(ax * y));
        };
        dc.y_slice = [](double y) { return y > 0.0 ? 0.5 / y : kInf; };
        dc.quadrant = [dcrect = dc.rect, dcslice = dc.y_slice](double x, double y) {
            if (x >= 0.0) return 0.0;
            return dcslice(y) - dcrect(x, y);
        };
        dc.x_tail = [](double x) { return x >= 0.0 ? 0.0 : kInf; };
        dc.density = [](double x, double y) {
            return (y > 0.0 && x < 0.0 && x > -1.0 / y) ? 0.5 / y : 0.0;
        };
        dc.note = "density 1/(2y) on {-1/y < x < 0}";
        meas->components.push_back(std::move(dc));
        meas->flags.push_back("violates_ii_star");
        m.analytic = meas;
        m.prelimit = [](double t, double x, double y) {
            if (x >= 0.0) return 1.0 / y;
            double v = 0.5 / y;
            const double ax = -x;
            if (ax <= t && ax * y < 1.0) v += 0.5 * (1.0 / y - ax + ax * std::log(ax * y));
            return v;
        };
        m.prelimit_t_min = 100.0;
        m.expected = VerdictKind::Converges;
        m.ref_x = -0.5;
        m.ref_y = 1.0;
        m.expected_limit = 0.5 + 0.5 * (1.0 - 0.5 + 0.5 * std::log(0.5));
        m.mc_grid = {{-3.0, 0.5}, {-1.0, 0.5}, {-1.0, 1.0}, {-0.5, 1.0}, {-0.1, 1.0}, {-2.0, 3.0}};
        m.mc_verdict = true;
        s.models.push_back(std::move(m));
    }
    {
        ModelSpec m;
        m.tag = "standardized";
        m.functional = FunctionalKind::StdRect;
        m.f_std = [](double x) { return 1.0 / (1.0 - x); };
        auto meas = new_measure("S3.standardized", Interval{0.0, kInf}, Interval{0.0, kInf});
        meas->standardized = true;
        meas->components.push_back(
            ProductComponent{{{0.0, 0.5}, }, nu_tilde1(), "escape mass at 0"});
        DensityComponent dc;
        dc.rect = [](double x, double y) {
            if (!(y > 0.0)) return kInf;
            if (x <= y) return 0.0;
            return 0.5 * (1.0 / y - 1.0 / x + std::log(y / x) / x);
        };
        dc.y_slice = [](double y) { return y > 0.0 ? 0.5 / y : kInf; };
        dc.quadrant = [](double x, double y) {
            if (!(y > 0.0)) return kInf;
            if (x <= y) return 0.5 / y;
            return (std::log(x / y) + 1.0) / (2.0 * x);
        };
        dc.x_tail = [](double x) { return x >= kInf ? 0.0 : kInf; };
        dc.density = [](double x, double y) {
            return (y > 0.0 && x > y) ? 1.0 / (2.0 * x * x * y) : 0.0;
        };
        dc.note = "density (2 x^2 y)^{-1} on {x > y > 0}";
        meas->components.push_back(std::move(dc));
        m.analytic = meas;
        m.prelimit = [](double, double x, double y) {
            if (x <= 0.0) return 0.0;
            double v = 0.5 / y;
            if (x > y) v += 0.5 * (1.0 / y - 1.0 / x + std::log(y / x) / x);
            return v;
        };
        m.prelimit_t_min = 100.0;
        m.expected = VerdictKind::Converges;
        m.ref_x = 2.0;
        m.ref_y = 1.0;
        m.expected_limit = 0.5 + 0.5 * (1.0 - 0.5 + std::log(0.5) / 2.0);
        m.mc_grid = {{0.3, 1.0}, {1.0, 1.0}, {2.0, 1.0}, {3.0, 0.5}, {1.0, 0.5}, {2.0, 3.0}};
        m.mc_verdict = true;
        s.models.push_back(std::move(m));
    }

    s.standardize =
        StandardizeCase{"cev_xy_fine", Interval{-1.0, 1.0}, "standardized", StdCase::case_ii_left};
    return s;
}

// ---------------------------------------------------------------------------
// S4: X = e^Y. f = log standardizes onto the diagonal measure, while no
// linear normalization of X against large Y converges at all.
// ---------------------------------------------------------------------------
Scenario make_s4() {
    Scenario s;
    s.id = "S4";
    s.title = "standardizable by f = log without any CEVM normalization";
    s.draws_per_sample = 1;
    s.draw = [](const CounterRng& rng, uint64_t i) {
        const double y = 1.0 / rng.u01(i, 0);
        return Sample{std::exp(y), y};
    };
    s.margin = quad(fconst(1.0), fconst(0.0), fident(), fident(), 1.0);
    s.margin_y_checks = {0.0, 1.0, 3.0};

    {
        ModelSpec m;
        m.tag = "standardized";
        m.functional = FunctionalKind::StdQuadrant;
        m.f_std = [](double x) { return std::log(x); };
        auto meas = new_measure("S4.standardized", Interval{0.0, kInf}, Interval{0.0, kInf});
        meas->standardized = true;
        CurveComponent diag;
        diag.x = MonotoneCoord::increasing(fident(), fident(), Interval{0.0, kInf});
        diag.y = MonotoneCoord::increasing(fident(), fident(), Interval{0.0, kInf});
        diag.h = [](double r) { return 1.0 / r; };
        diag.s_min = 0.0;
        diag.note = "main diagonal";
        meas->components.push_back(std::move(diag));
        m.analytic = meas;
        m.prelimit = [](double, double x, double y) { return 1.0 / std::max(x, y); };
        m.prelimit_t_min = 100.0;
        m.expected = VerdictKind::Converges;
        m.ref_x = 2.0;
        m.ref_y = 1.0;
        m.expected_limit = 0.5;
        m.mc_grid = {{0.5, 0.5}, {1.0, 0.5}, {2.0, 1.0}, {1.0, 3.0}, {3.0, 3.0}, {0.5, 2.0}};
        m.mc_verdict = true;
        // exp(Y) saturates above Y = 709; keep t * x inside the faithful range.
        m.mc_t = 200.0;
        m.mc_scan = ScanSpec{3.0, 1.5, 12};
        s.models.push_back(std::move(m));
    }

    struct Cand {
        const char* tag;
        std::function<double(double)> a, b;
    };
    const Cand cands[] = {
        {"cev_cand_sqrt", [](double t) { return std::sqrt(t); }, fconst(0.0)},
        {"cev_cand_lin", fident(), fconst(0.0)},
        {"cev_cand_quad", [](double t) { return t * t; }, fconst(0.0)},
        {"cev_cand_gumbel", fconst(1.0), [](double t) { return std::log(t); }},
        {"cev_cand_affine", fident(), fident()},
    };
    for (const auto& cd : cands) {
        ModelSpec m;
        m.tag = cd.tag;
        m.functional = FunctionalKind::CevRect;
        m.quadruple = quad(cd.a, cd.b, fident(), fconst(0.0), 1.0);
        auto a = cd.a;
        auto b = cd.b;
        m.prelimit = [a, b](double t, double x, double y) {
            const double v = b(t) + a(t) * x;
            if (!(v >= std::exp(1.0))) return 0.0;
            return pos(1.0 / y - t / std::log(v));
        };
        m.prelimit_t_min = 100.0;
        m.scan_t_max = 1e100;  // alpha(t) must stay representable
        m.expected = VerdictKind::Degenerate;
        m.ref_x = 1.0;
        m.ref_y = 1.0;
        m.mc_verdict = true;
        s.models.push_back(std::move(m));
    }

    s.standardize = StandardizeCase{"cev_cand_lin", Interval{std::exp(1.0), kInf}, "",
                                    StdCase::impossible};
    return s;
}

// ---------------------------------------------------------------------------
// S5: X = BY + (1-B)(-g^{-1}(2Y)) with g(y) = y(2 + sin log y). The MEVT
// limit exists; no CEVM normalization converges (oscillation below q_gammaX).
// ---------------------------------------------------------------------------
Scenario make_s5() {
    Scenario s;
    s.id = "S5";
    s.title = "MEVT limit without any CEVM limit";
    s.draws_per_sample = 2;
    s.draw = [](const CounterRng& rng, uint64_t i) {
        const bool b = rng.pick(i, 0, 2) == 1;
        const double y = 1.0 / rng.u01(i, 1);
        return Sample{b ? y : -g_osc_inv(2.0 * y), y};
    };
    s.margin = quad(fconst(1.0), fconst(0.0), fident(), fident(), 1.0);
    s.margin_y_checks = {0.0, 1.0, 3.0};

    {
        ModelSpec m;
        m.tag = "mevt";
        m.functional = FunctionalKind::MevtSurvival;
        m.quadruple = quad([](double t) { return t / 2.0; }, [](double t) { return t / 2.0; },
                           fident(), fident(), 1.0, 1.0);
        auto meas = new_measure("S5.mevt", Interval{-1.0, kInf}, Interval{-1.0, kInf});
        meas->gamma_x = 1.0;
        meas->gamma_y = 1.0;
        CurveComponent main;
        main.x = MonotoneCoord::increasing(fident(), fident(), Interval{-1.0, kInf});
        main.y = MonotoneCoord::increasing([](double s) { return (s - 1.0) / 2.0; },
                                           [](double v) { return 2.0 * v + 1.0; },
                                           Interval{-1.0, kInf});
        main.h = [](double r) { return 1.0 / (1.0 + r); };
        main.s_min = -1.0;
        main.note = "{(s, (s-1)/2) : s > -1}";
        CurveComponent edge;
        edge.x = MonotoneCoord::constant(-1.0);
        edge.y = MonotoneCoord::increasing(fident(), fident(), Interval{-1.0, kInf});
        edge.h = [](double r) { return 1.0 / (2.0 * (1.0 + r)); };
        edge.s_min = -1.0;
        edge.note = "{(-1, y) : y > -1}";
        meas->components.push_back(std::move(main));
        meas->components.push_back(std::move(edge));
        m.analytic = meas;
        m.prelimit = [](double, double x, double y) {
            const double ix = 1.0 / (1.0 + x), iy = 1.0 / (1.0 + y);
            return ix + iy - std::min(ix, 0.5 * iy);
        };
        m.prelimit_t_min = 100.0;
        m.expected = VerdictKind::Converges;
        m.ref_x = 0.0;
        m.ref_y = 0.0;
        m.expected_limit = 1.5;
        m.mc_grid = {{-0.5, -0.5}, {0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0},
                     {1.0, 1.0},   {3.0, 1.0}, {0.5, 3.0}};
        s.models.push_back(std::move(m));
    }
    {
        ModelSpec m;
        m.tag = "cev_xy";
        m.functional = FunctionalKind::CevRect;
        m.quadruple = quad(fident(), fconst(0.0), fident(), fident(), 1.0);
        m.prelimit = [](double t, double x, double y) {
            const double iny = 1.0 / (1.0 + y);
            if (x > 0.0) {
                double v = 0.5 * iny;
                if (t * x >= 1.0) v += 0.5 * pos(iny - 1.0 / x);
                return v;
            }
            if (x == 0.0) return 0.5 * iny;
            return std::min(0.5 * iny, t / g_osc(t * -x));
        };
        m.prelimit_t_min = 100.0;
        m.probes = {
            {"sin_zero", 1,
             [](int n, double x, double) { return std::exp(2.0 * kPi * n) / std::abs(x); },
             [](double x, double y) {
                 return std::min(0.5 / (1.0 + y), 1.0 / (2.0 * std::abs(x)));
             }},
            {"sin_one", 1,
             [](int n, double x, double) {
                 return std::exp(2.0 * kPi * n + kPi / 2.0) / std::abs(x);
             },
             [](double x, double y) {
                 return std::min(0.5 / (1.0 + y), 1.0 / (3.0 * std::abs(x)));
             }},
        };
        m.expected = VerdictKind::Oscillates;
        m.ref_x = -1.5;
        m.ref_y = 0.0;
        m.expected_lo = 2.0 / 9.0;
        m.expected_hi = 1.0 / 3.0;
        s.models.push_back(std::move(m));
    }
    return s;
}

// ---------------------------------------------------------------------------
// S6: four branches over one Pareto variable, using g_c(u) = u(1 + c sin
// log u). Both conditional limits exist (non-equivalent normalizations); the
// joint MEVT functional oscillates.
// ---------------------------------------------------------------------------
Scenario make_s6() {
    Scenario s;
    s.id = "S6";
    s.title = "two CEVM limits without an MEVT limit";
    s.draws_per_sample = 2;
    s.draw = [](const CounterRng& rng, uint64_t i) {
        const uint32_t b = rng.pick(i, 0, 4);
        const double u = rng.u01(i, 1);  // u = 1/Z
        switch (b) {
            case 0: return Sample{2.0 - u, 2.0 - g_c_inv(0.5, u)};
            case 1: return Sample{2.0 - std::sqrt(u), 2.0 - g_c_inv(-0.5, u)};
            case 2: return Sample{2.0 - u, 1.0 - u};
            default: return Sample{1.0 - u, 2.0 - u};
        }
    };
    auto c6 = [](double t) { return 4.0 / (3.0 * t); };
    auto d6 = [](double t) { return 2.0 - 4.0 / (3.0 * t); };
    auto a6 = [](double t) { return 2.0 / t; };
    auto b6 = [](double t) { return 2.0 - 2.0 / t; };
    s.margin = quad(fconst(1.0), fconst(0.0), c6, d6, -1.0);
    s.margin_y_checks = {0.0, 0.5, 0.9};

    {
        ModelSpec m;
        m.tag = "cev_xy";
        m.functional = FunctionalKind::CevRect;
        m.quadruple = quad(fconst(1.0), fconst(0.0), c6, d6, -1.0);
        auto meas = new_measure("S6.cev_xy", full_line(), Interval{-kInf, 1.0});
        meas->gamma_y = -1.0;
        meas->components.push_back(ProductComponent{
            {{1.0, 1.0 / 3.0}, {2.0, 2.0 / 3.0}}, nu_minus1(), "atoms at 1 and 2"});
        m.analytic = meas;
        m.prelimit = [](double t, double x, double y) {
            const double u = 4.0 * (1.0 - y) / (3.0 * t);
            double v = 0.0;
            if (x >= 2.0)
                v += g_c(0.5, u) + g_c(-0.5, u);
            else if (x >= 1.0)
                v += pos(g_c(0.5, u) - (2.0 - x)) + pos(g_c(-0.5, u) - (2.0 - x) * (2.0 - x));
            v += (x >= 1.0) ? u : pos(u - (1.0 - x));
            return t / 4.0 * v;
        };
        m.prelimit_t_min = 100.0;
        m.expected = VerdictKind::Converges;
        m.ref_x = 1.5;
        m.ref_y = 0.0;
        m.expected_limit = 1.0 / 3.0;
        m.mc_grid = {{0.5, 0.0},
                     {1.0 + kAtomNudge, 0.0},
                     {1.5, 0.0},
                     {2.0 + kAtomNudge, 0.0},
                     {1.5, -0.5},
                     {2.0 + kAtomNudge, 0.5},
                     {3.0, -1.5},
                     {1.5, 0.9}};
        s.models.push_back(std::move(m));
    }
    {
        ModelSpec m;
        m.tag = "cev_yx";
        m.functional = FunctionalKind::CevRect;
        m.swap_xy = true;
        m.quadruple = quad(fconst(1.0), fconst(0.0), a6, b6, -1.0);
        auto meas = new_measure("S6.cev_yx", full_line(), Interval{-kInf, 1.0});
        meas->gamma_y = -1.0;
        meas->components.push_back(
            ProductComponent{{{1.0, 0.5}, {2.0, 0.5}}, nu_minus1(), "atoms at 1 and 2"});
        m.analytic = meas;
        m.prelimit = [](double t, double a, double b) {
            // a thresholds the raw second component, b the normalized first.
            const double w = 2.0 * (1.0 - b) / t;
            double v = 0.0;
            if (a >= 2.0)
                v += w + w * w;
            else if (a >= 1.0)
                v += pos(w - g_c(0.5, 2.0 - a)) + pos(w * w - g_c(-0.5, 2.0 - a));
            if (a >= 1.0)
                v += w;
            else if (a >= 0.0)
                v += pos(w - (1.0 - a));
            return t / 4.0 * v;
        };
        m.prelimit_t_min = 100.0;
        m.expected = VerdictKind::Converges;
        m.ref_x = 1.5;
        m.ref_y = 0.0;
        m.expected_limit = 0.5;
        m.mc_grid = {{0.5, 0.0},
                     {1.0 + kAtomNudge, 0.0},
                     {1.5, 0.0},
                     {2.0 + kAtomNudge, 0.0},
                     {2.0 + kAtomNudge, 0.5},
                     {1.5, -1.0},
                     {1.0 + kAtomNudge, -0.5}};
        s.models.push_back(std::move(m));
    }
    {
        ModelSpec m;
        m.tag = "mevt";
        m.functional = FunctionalKind::JointQuadrant;
        m.quadruple = quad(a6, b6, c6, d6, -1.0, -1.0);
        m.prelimit = [](double t, double x, double y) {
            const double w = 2.0 * (1.0 - x) / t;
            const double u = 4.0 * (1.0 - y) / (3.0 * t);
            return t / 4.0 * (std::min(w, g_c(0.5, u)) + std::min(w * w, g_c(-0.5, u)));
        };
        m.prelimit_t_min = 8.0;
        m.probes = {
            {"phase_high", 1,
             [](int n, double, double y) {
                 return 4.0 * (1.0 - y) / 3.0 * std::exp((2.0 * n - 0.5) * kPi);
             },
             [](double x, double y) { return std::min((1.0 - x) / 2.0, (1.0 - y) / 2.0); }},
            {"phase_low", 1,
             [](int n, double, double y) {
                 return 4.0 * (1.0 - y) / 3.0 * std::exp((2.0 * n + 0.5) * kPi);
             },
             [](double x, double y) { return std::min((1.0 - x) / 2.0, (1.0 - y) / 6.0); }},
        };
        m.expected = VerdictKind::Oscillates;
        m.ref_x = 0.0;
        m.ref_y = 0.0;
        m.expected_lo = 1.0 / 6.0;
        m.expected_hi = 0.5;
        s.models.push_back(std::move(m));
    }

    EquivalenceCase eq;
    eq.label = "cev_xy vs cev_yx normalizations";
    eq.q1 = quad(fconst(1.0), fconst(0.0), c6, d6, -1.0);
    eq.q2 = quad(a6, b6, fconst(1.0), fconst(0.0), -1.0);
    eq.expected = EquivalenceVerdict::not_equivalent;
    s.equivalence_cases.push_back(std::move(eq));
    return s;
}

// ---------------------------------------------------------------------------
// S7: Gumbel-margin construction with b = psi(t) = log t + sin log log t.
// The CEVM with beta = log t converges; the marginal normalization b = psi
// is not equivalent to it and its joint functional oscillates.
// ---------------------------------------------------------------------------
Scenario make_s7() {
    Scenario s;
    s.id = "S7";
    s.title = "marginal and conditional shifts both diverge but are not equivalent";
    s.draws_per_sample = 2;
    s.draw = [](const CounterRng& rng, uint64_t i) {
        const double uy = rng.u01(i, 0);
        const double y = 1.0 / uy;
        if (y > 4.0) return Sample{-std::log(4.0 * uy), y};
        return Sample{z_surv_inv(rng.u01(i, 1)), y};
    };
    s.margin = quad(fconst(1.0), fconst(0.0), fident(), fident(), 1.0);
    s.margin_y_checks = {0.0, 1.0, 3.0};

    {
        ModelSpec m;
        m.tag = "cev_xy";
        m.functional = FunctionalKind::JointQuadrant;
        m.quadruple = quad(fconst(1.0), [](double t) { return std::log(t); }, fident(), fident(),
                           1.0, 0.0);
        auto meas = new_measure("S7.cev_xy", full_line(), Interval{-1.0, kInf});
        meas->gamma_y = 1.0;
        CurveComponent curve;
        curve.x = MonotoneCoord::increasing([](double Ss) { return std::log(Ss / 4.0); },
                                            [](double v) { return 4.0 * std::exp(v); },
                                            full_line());
        curve.y = MonotoneCoord::increasing([](double Ss) { return Ss - 1.0; },
                                            [](double v) { return v + 1.0; },
                                            Interval{-1.0, kInf});
        curve.h = [](double r) { return 1.0 / r; };
        curve.s_min = 0.0;
        curve.note = "{(log(s/4), s-1) : s > 0}";
        meas->components.push_back(std::move(curve));
        m.analytic = meas;
        m.prelimit = [](double t, double x, double y) {
            double v = 1.0 / std::max(4.0 * std::exp(x), 1.0 + y);
            v += t * z_surv(x + std::log(t)) * pos(1.0 / (t * (1.0 + y)) - 0.25);
            return v;
        };
        m.prelimit_t_min = 100.0;
        m.expected = VerdictKind::Converges;
        m.ref_x = 0.0;
        m.ref_y = 0.0;
        m.expected_limit = 0.25;
        m.mc_grid = {{-1.5, 0.0}, {-0.5, 0.0}, {0.0, 0.0}, {1.0, 0.0},
                     {0.0, 1.0},  {0.0, 3.0},  {-0.5, -0.5}};
        s.models.push_back(std::move(m));
    }
    {
        ModelSpec m;
        m.tag = "mevt";
        m.functional = FunctionalKind::JointQuadrant;
        m.quadruple = quad(fconst(1.0), [](double t) { return psi_log(t); }, fident(), fident(),
                           1.0, 0.0);
        m.prelimit = [](double t, double x, double y) {
            const double c = std::sin(std::log(std::log(t)));
            return 1.0 / std::max(4.0 * std::exp(x + c), 1.0 + y);
        };
        m.prelimit_t_min = std::exp(1.0) * (1.0 - 1e-12);
        m.probes = {
            {"loglog_zero", 0,
             [](int n, double, double) { return std::exp(std::exp(2.0 * kPi * n)); },
             [](double x, double y) { return 1.0 / std::max(4.0 * std::exp(x), 1.0 + y); }},
            {"loglog_one", 0,
             [](int n, double, double) {
                 return std::exp(std::exp(2.0 * kPi * n + kPi / 2.0));
             },
             [](double x, double y) { return 1.0 / std::max(4.0 * std::exp(x + 1.0), 1.0 + y); }},
        };
        m.expected = VerdictKind::Oscillates;
        m.ref_x = 0.0;
        m.ref_y = 0.0;
        m.expected_lo = 1.0 / (4.0 * std::exp(1.0));
        m.expected_hi = 0.25;
        s.models.push_back(std::move(m));
    }

    EquivalenceCase eq;
    eq.label = "beta = log t vs b = psi(t)";
    eq.q1 = quad(fconst(1.0), [](double t) { return std::log(t); }, fident(), fident(), 1.0);
    eq.q2 = quad(fconst(1.0), [](double t) { return psi_log(t); }, fident(), fident(), 1.0);
    eq.expected = EquivalenceVerdict::not_equivalent;
    s.equivalence_cases.push_back(std::move(eq));
    return s;
}

// ---------------------------------------------------------------------------
// S8: three branches (Z1^tau, Z1), (Z1, Z1^tau), (Z2, Z2) with Z2 carrying
// the oscillating second-order tail. First-order limit on the axes; the
// second-order functional with lambda_0 = t^2 oscillates, so the vector is
// not hidden regularly varying.
// ---------------------------------------------------------------------------
Scenario make_s8() {
    Scenario s;
    s.id = "S8";
    s.title = "CEVM with asymptotic independence but no hidden regular variation";
    s.draws_per_sample = 2;
    s.draw = [](const CounterRng& rng, uint64_t i) {
        const uint32_t b = rng.pick(i, 0, 3);
        const double u = rng.u01(i, 1);
        if (b == 0) {
            const double z = 1.0 / u;
            return Sample{std::pow(z, kTau8), z};
        }
        if (b == 1) {
            const double z = 1.0 / u;
            return Sample{z, std::pow(z, kTau8)};
        }
        const double z2 = pareto_mix_inv(u);
        return Sample{z2, z2};
    };
    s.draw_conditional = [](const CounterRng& rng, uint64_t i) {
        const double z2 = pareto_mix_inv(rng.u01(i, 1));
        return Sample{z2, z2};
    };
    s.conditional_note = "heavy joint branch only; reweight by 1/3";
    auto c8 = [](double t) { return t / 3.0; };
    s.margin = quad(fconst(1.0), fconst(0.0), c8, c8, 1.0);
    s.margin_y_checks = {0.0, 1.0, 3.0};

    auto z1_term = [](double upper, double lower) {
        // P{Z1 <= upper, Z1 > lower} for a standard Pareto Z1.
        const double pl = lower <= 1.0 ? 1.0 : 1.0 / lower;
        const double pu = upper <= 1.0 ? 1.0 : 1.0 / upper;
        return pos(pl - pu);
    };

    {
        ModelSpec m;
        m.tag = "mevt";
        m.functional = FunctionalKind::MevtSurvival;
        m.quadruple = quad(fident(), fconst(0.0), fident(), fconst(0.0), 1.0, 1.0);
        auto meas = new_measure("S8.first_order", Interval{0.0, kInf}, Interval{0.0, kInf});
        meas->standardized = true;
        CurveComponent ax;
        ax.x = MonotoneCoord::increasing(fident(), fident(), Interval{0.0, kInf});
        ax.y = MonotoneCoord::constant(0.0);
        ax.h = [](double r) { return 1.0 / (3.0 * r); };
        ax.s_min = 0.0;
        ax.note = "x-axis";
        CurveComponent ay;
        ay.x = MonotoneCoord::constant(0.0);
        ay.y = MonotoneCoord::increasing(fident(), fident(), Interval{0.0, kInf});
        ay.h = [](double r) { return 1.0 / (3.0 * r); };
        ay.s_min = 0.0;
        ay.note = "y-axis";
        meas->components.push_back(std::move(ax));
        meas->components.push_back(std::move(ay));
        m.analytic = meas;
        m.prelimit = [](double t, double x, double y) {
            const double a = std::max(std::pow(t * x, -1.0 / kTau8), 1.0 / (t * y));
            const double b = std::max(1.0 / (t * x), std::pow(t * y, -1.0 / kTau8));
            return t / 3.0 * (a + b + pareto_mix_surv(t * std::min(x, y)));
        };
        m.prelimit_t_min = 100.0;
        m.expected = VerdictKind::Converges;
        m.ref_x = 1.0;
        m.ref_y = 1.0;
        m.expected_limit = 2.0 / 3.0;
        m.mc_grid = {{0.5, 0.5}, {1.0, 1.0}, {2.0, 1.0}, {1.0, 2.0}, {2.0, 2.0}, {0.5, 2.0}};
        m.mc_verdict = true;
        s.models.push_back(std::move(m));
    }
    {
        ModelSpec m;
        m.tag = "hrv";
        m.functional = FunctionalKind::Hrv;
        m.hrv = HrvSpec{[](double t) { return t * t; }, "lambda_0(t) = t^2"};
        m.conditional_branch = true;
        m.branch_weight = 1.0 / 3.0;
        m.prelimit = [](double t, double x, double y) {
            const double a = std::min(std::pow(t * x, -1.0 / kTau8), 1.0 / (t * y));
            const double b = std::min(1.0 / (t * x), std::pow(t * y, -1.0 / kTau8));
            return t * t / 3.0 * (a + b + pareto_mix_surv(t * std::max(x, y)));
        };
        m.prelimit_t_min = 8.0;
        m.scan_t_max = 1e120;  // keeps t^2 scaling clear of overflow
        m.probes = {
            {"sin_plus", 0,
             [](int n, double x, double y) {
                 return std::exp((2.0 * n + 0.5) * kPi) / std::max(x, y);
             },
             [](double x, double y) {
                 const double mx = std::max(x, y);
                 return 0.5 / (mx * mx);
             }},
            {"sin_minus", 1,
             [](int n, double x, double y) {
                 return std::exp((2.0 * n - 0.5) * kPi) / std::max(x, y);
             },
             [](double x, double y) {
                 const double mx = std::max(x, y);
                 return 1.0 / (6.0 * mx * mx);
             }},
        };
        m.expected = VerdictKind::Oscillates;
        m.ref_x = 1.0;
        m.ref_y = 1.0;
        m.expected_lo = 1.0 / 6.0;
        m.expected_hi = 0.5;
        m.mc_verdict = true;
        m.mc_scan = ScanSpec{8.0, 1.3, 12};
        m.mc_t_max = 200.0;
        s.models.push_back(std::move(m));
    }
    {
        ModelSpec m;
        m.tag = "hrv_first";
        m.functional = FunctionalKind::Hrv;
        m.hrv = HrvSpec{fident(), "lambda_0(t) = t"};
        m.prelimit = [](double t, double x, double y) {
            const double a = std::min(std::pow(t * x, -1.0 / kTau8), 1.0 / (t * y));
            const double b = std::min(1.0 / (t * x), std::pow(t * y, -1.0 / kTau8));
            return t / 3.0 * (a + b + pareto_mix_surv(t * std::max(x, y)));
        };
        m.prelimit_t_min = 100.0;
        m.expected = VerdictKind::Degenerate;
        m.ref_x = 1.0;
        m.ref_y = 1.0;
        s.models.push_back(std::move(m));
    }
    {
        ModelSpec m;
        m.tag = "cev_xy";
        m.functional = FunctionalKind::CevRect;
        auto ab8 = [](double t) { return std::pow(t / 3.0, kTau8); };
        m.quadruple = quad(ab8, ab8, c8, c8, 1.0);
        auto meas = new_measure("S8.cev_xy", Interval{-1.0, kInf}, Interval{-1.0, kInf});
        meas->gamma_y = 1.0;
        CurveComponent curve;
        curve.x = MonotoneCoord::increasing(
            [](double Ss) { return std::pow(Ss, kTau8) - 1.0; },
            [](double v) { return std::pow(1.0 + v, 1.0 / kTau8); }, Interval{-1.0, kInf});
        curve.y = MonotoneCoord::increasing([](double Ss) { return Ss - 1.0; },
                                            [](double v) { return v + 1.0; },
                                            Interval{-1.0, kInf});
        curve.h = [](double r) { return 1.0 / r; };
        curve.s_min = 0.0;
        curve.note = "{(s^tau - 1, s - 1) : s > 0}";
        meas->components.push_back(std::move(curve));
        m.analytic = meas;
        m.prelimit = [z1_term](double t, double x, double y) {
            const double t3 = t / 3.0;
            const double xq = 1.0 + x;
            const double ly = t3 * (1.0 + y);
            double v = 0.0;
            // branch (Z1^tau, Z1)
            v += z1_term(xq > 0.0 ? t3 * std::pow(xq, 1.0 / kTau8) : 0.0, ly);
            // branch (Z1, Z1^tau)
            v += z1_term(xq > 0.0 ? std::pow(t3, kTau8) * xq : 0.0,
                         std::pow(ly, 1.0 / kTau8));
            // branch (Z2, Z2)
            const double u3 = xq > 0.0 ? std::pow(t3, kTau8) * xq : 0.0;
            v += pos(pareto_mix_surv(ly) - pareto_mix_surv(u3));
            return t3 * v;
        };
        m.prelimit_t_min = 100.0;
        m.expected = VerdictKind::Converges;
        m.ref_x = 1.0;
        m.ref_y = 0.0;
        m.expected_limit = 1.0 - std::pow(2.0, -1.0 / kTau8);
        m.mc_grid = {{1.0, 0.0}, {0.5, 0.0}, {1.0, 1.0}, {3.0, 0.0}, {0.5, 1.0}, {-0.5, -0.5}};
        s.models.push_back(std::move(m));
    }
    {
        ModelSpec m;
        m.tag = "cev_yx";
        m.functional = FunctionalKind::CevRect;
        m.swap_xy = true;
        auto ab8 = [](double t) { return std::pow(t / 3.0, kTau8); };
        m.quadruple = quad(ab8, ab8, c8, c8, 1.0);
        m.analytic = std::shared_ptr<const LimitMeasure>(s.models.back().analytic);
        m.prelimit = s.models.back().prelimit;
        m.prelimit_t_min = 100.0;
        m.expected = VerdictKind::Converges;
        m.ref_x = 1.0;
        m.ref_y = 0.0;
        m.expected_limit = 1.0 - std::pow(2.0, -1.0 / kTau8);
        m.mc_grid = s.models.back().mc_grid;
        s.models.push_back(std::move(m));
    }
    return s;
}

// ---------------------------------------------------------------------------
// S9: mixture X = omega_I - Y^{-tau_I}. The global CEVM keeps only the two
// atoms; localized CEVMs around each accumulation point keep the curve
// structure; the MEVT limit keeps only the upper component.
// ---------------------------------------------------------------------------
Scenario make_s9() {
    Scenario s;
    s.id = "S9";
    s.title = "mixture: global CEVM atoms vs localized fine structure";
    s.draws_per_sample = 2;
    s.draw = [](const CounterRng& rng, uint64_t i) {
        const bool second = rng.pick(i, 0, 2) == 1;
        const double u = rng.u01(i, 1);
        // Y^{-tau_i} = u^{tau_i} with tau_1 = 1, tau_2 = 2.
        return second ? Sample{2.0 - u * u, 1.0 / u} : Sample{1.0 - u, 1.0 / u};
    };
    s.margin = quad(fconst(1.0), fconst(0.0), fident(), fident(), 1.0);
    s.margin_y_checks = {0.0, 1.0, 3.0};

    {
        ModelSpec m;
        m.tag = "cev_xy";
        m.functional = FunctionalKind::CevRect;
        m.quadruple = quad(fconst(1.0), fconst(0.0), fident(), fident(), 1.0);
        auto meas = new_measure("S9.cev_xy", full_line(), Interval{-1.0, kInf});
        meas->gamma_y = 1.0;
        meas->components.push_back(
            ProductComponent{{{1.0, 0.5}, {2.0, 0.5}}, nu1(), "atoms at omega_1, omega_2"});
        m.analytic = meas;
        m.prelimit = [](double t, double x, double y) {
            const double iny = 1.0 / (1.0 + y);
            double v = 0.0;
            const double omega[2] = {1.0, 2.0};
            const double tau[2] = {1.0, 2.0};
            for (int i = 0; i < 2; ++i) {
                if (x >= omega[i])
                    v += 0.5 * iny;
                else if (x > omega[i] - 1.0)
                    v += 0.5 * pos(iny - t * std::pow(omega[i] - x, 1.0 / tau[i]));
            }
            return v;
        };
        m.prelimit_t_min = 10.0;
        m.expected = VerdictKind::Converges;
        m.ref_x = 1.5;
        m.ref_y = 0.0;
        m.expected_limit = 0.5;
        m.mc_grid = {{-0.5, 0.0},
                     {0.5, 0.0},
                     {1.0 + kAtomNudge, 0.0},
                     {1.5, 0.0},
                     {1.5, 1.0},
                     {2.0 + kAtomNudge, 0.0},
                     {2.0 + kAtomNudge, 3.0},
                     {3.0, 0.0},
                     {1.5, 3.0}};
        m.mc_verdict = true;
        s.models.push_back(std::move(m));
    }

    struct Loc {
        const char* tag;
        double tau, omega;
        Interval nbhd;
    };
    const Loc locs[] = {{"localized_1", 1.0, 1.0, Interval{0.0, 1.5}},
                        {"localized_2", 2.0, 2.0, Interval{1.5, 2.0}}};
    for (const auto& lc : locs) {
        ModelSpec m;
        m.tag = lc.tag;
        m.functional = FunctionalKind::LocalizedQuadrant;
        const double tau = lc.tau;
        const double omega = lc.omega;
        m.quadruple = quad([tau](double t) { return std::pow(t, -tau); }, fconst(omega), fident(),
                           fident(), 1.0);
        m.neighborhood = lc.nbhd;
        auto meas = new_measure(std::string("S9.") + lc.tag, Interval{-kInf, 0.0},
                                Interval{-1.0, kInf});
        meas->gamma_y = 1.0;
        CurveComponent curve;
        curve.x = MonotoneCoord::increasing(
            [tau](double Ss) { return -std::pow(Ss, -tau); },
            [tau](double v) { return std::pow(-v, -1.0 / tau); }, Interval{-kInf, 0.0});
        curve.y = MonotoneCoord::increasing([](double Ss) { return Ss - 1.0; },
                                            [](double v) { return v + 1.0; },
                                            Interval{-1.0, kInf});
        curve.h = [](double r) { return 1.0 / (2.0 * r); };
        curve.s_min = 0.0;
        curve.note = "{(-s^{-tau}, s-1) : s > 0} with the mixture weight";
        meas->components.push_back(std::move(curve));
        m.analytic = meas;
        m.prelimit = [tau](double, double x, double y) {
            if (x >= 0.0) return 0.0;
            return 0.5 * std::min(std::pow(-x, 1.0 / tau), 1.0 / (1.0 + y));
        };
        m.prelimit_t_min = 100.0;
        m.expected = VerdictKind::Converges;
        m.ref_x = -1.0;
        m.ref_y = 0.0;
        m.expected_limit = 0.5;
        m.mc_grid = {{-2.0, 0.0}, {-1.0, 0.0}, {-0.5, 0.0}, {-0.25, 0.0}, {-1.0, 1.0}, {-0.5, 1.0}};
        m.mc_verdict = true;
        s.models.push_back(std::move(m));
    }

    {
        ModelSpec m;
        m.tag = "mevt";
        m.functional = FunctionalKind::MevtSurvival;
        m.quadruple = quad([](double t) { return 8.0 / (t * t); },
                           [](double t) { return 2.0 - 4.0 / (t * t); }, fident(), fident(), 1.0,
                           -2.0);
        auto meas = new_measure("S9.mevt", Interval{-kInf, 0.5}, Interval{-1.0, kInf});
        meas->gamma_x = -2.0;
        meas->gamma_y = 1.0;
        meas->mass_at_minus_inf = scale_tail(nu1(), 0.5);
        meas->flags.push_back("violates_ii_star");
        CurveComponent curve;
        curve.x = MonotoneCoord::increasing(
            [](double Ss) { return 0.5 * (1.0 - 1.0 / (Ss * Ss)); },
            [](double v) { return 1.0 / std::sqrt(1.0 - 2.0 * v); }, Interval{-kInf, 0.5});
        curve.y = MonotoneCoord::increasing([](double Ss) { return Ss / 2.0 - 1.0; },
                                            [](double v) { return 2.0 * (1.0 + v); },
                                            Interval{-1.0, kInf});
        curve.h = [](double r) { return 1.0 / r; };
        curve.s_min = 0.0;
        curve.note = "upper component in MEVT scaling";
        meas->components.push_back(std::move(curve));
        m.analytic = meas;
        m.prelimit = [](double, double x, double y) {
            const double iny = 1.0 / (1.0 + y);
            const double q = std::sqrt(1.0 - 2.0 * x);
            return iny + q - std::min(q, 0.5 * iny);
        };
        m.prelimit_t_min = 100.0;
        m.expected = VerdictKind::Converges;
        m.ref_x = 0.0;
        m.ref_y = 0.0;
        m.expected_limit = 1.5;
        m.mc_grid = {{0.0, 0.0}, {-0.5, 0.0}, {0.25, 0.0}, {0.0, 1.0}, {0.25, 1.0}, {0.4, 3.0}};
        m.mc_verdict = true;
        s.models.push_back(std::move(m));
    }
    return s;
}

}  // namespace

const std::vector<Scenario>& builtin_scenarios() {
    static const std::vector<Scenario> all = [] {
        std::vector<Scenario> v;
        v.push_back(make_s1());
        v.push_back(make_s2());
        v.push_back(make_s3());
        v.push_back(make_s4());
        v.push_back(make_s5());
        v.push_back(make_s6());
        v.push_back(make_s7());
        v.push_back(make_s8());
        v.push_back(make_s9());
        return v;
    }();
    return all;
}

const Scenario& scenario_by_id(std::string_view id) {
    for (const auto& s : builtin_scenarios())
        if (s.id == id) return s;
    throw std::invalid_argument("unknown scenario id: " + std::string(id));
}

const ModelSpec* Scenario::find(std::string_view tag) const {
    for (const auto& m : models)
        if (m.tag == tag) return &m;
    return nullptr;
}

std::vector<Sample> sample(const Scenario& s, uint64_t seed, size_t n) {
    CounterRng rng(seed);
    std::vector<Sample> out;
    out.reserve(n);
    for (uint64_t i = 0; i < n; ++i) out.push_back(s.draw(rng, i));
    return out;
}

std::vector<Sample> sample_conditional(const Scenario& s, uint64_t seed, size_t n) {
    if (!s.draw_conditional)
        throw std::invalid_argument("scenario " + s.id + " has no conditional sampler");
    CounterRng rng(seed, 1);
    std::vector<Sample> out;
    out.reserve(n);
    for (uint64_t i = 0; i < n; ++i) out.push_back(s.draw_conditional(rng, i));
    return out;
}

nlohmann::json scenario_to_json(const Scenario& s) {
    nlohmann::json j;
    j["id"] = s.id;
    j["title"] = s.title;
    j["draws_per_sample"] = s.draws_per_sample;
    if (s.draw_conditional) j["conditional_sampler"] = s.conditional_note;
    nlohmann::json models = nlohmann::json::array();
    for (const auto& m : s.models) {
        nlohmann::json mj;
        mj["tag"] = m.tag;
        mj["functional"] = to_string(m.functional);
        mj["swap_xy"] = m.swap_xy;
        mj["expected"] = to_string(m.expected);
        mj["reference_point"] = {m.ref_x, m.ref_y};
        if (std::isfinite(m.expected_limit)) mj["expected_limit"] = m.expected_limit;
        if (std::isfinite(m.expected_lo)) mj["expected_bounds"] = {m.expected_lo, m.expected_hi};
        mj["has_analytic_measure"] = bool(m.analytic);
        nlohmann::json probes = nlohmann::json::array();
        for (const auto& p : m.probes) probes.push_back(p.label);
        mj["probes"] = probes;
        models.push_back(mj);
    }
    j["models"] = models;
    if (s.standardize) {
        j["standardize"] = {{"quad_tag", s.standardize->quad_tag},
                            {"expected", to_string(s.standardize->expected)}};
    }
    return j;
}

}  // namespace cevmlab

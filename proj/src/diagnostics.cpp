#include "cevmlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cevmlab {

std::string to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::Converges: return "converges";
        case VerdictKind::Oscillates: return "oscillates";
        case VerdictKind::Degenerate: return "degenerate";
        case VerdictKind::Indeterminate: return "indeterminate";
    }
    return "?";
}

std::vector<ScanPoint> scan(const TFunctional& fn, const std::vector<double>& t_grid) {
    if (t_grid.size() < 12) throw std::invalid_argument("scan: need at least 12 grid points");
    for (size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1])) throw std::invalid_argument("scan: grid not increasing");
    std::vector<ScanPoint> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) out.push_back(fn(t));
    return out;
}

ProbeFit probe(const TFunctional& fn, const ProbeSpec& p, double x, double y, int n_terms,
               double t_min, double t_max, double stab_tol) {
    if (n_terms < 3) throw std::invalid_argument("probe: need n_terms >= 3");
    ProbeFit fit;
    fit.label = p.label;
    for (int n = p.n_start; n < p.n_start + n_terms; ++n) {
        const double t = p.t_of_n(n, x, y);
        if (!std::isfinite(t) || t > t_max) {
            fit.truncated = true;
            break;  // t_n is increasing, later terms only get larger
        }
        if (t < t_min) continue;
        fit.trace.push_back(fn(t));
    }
    fit.terms_used = int(fit.trace.size());
    if (fit.trace.empty()) {
        fit.stable = false;
        return fit;
    }
    fit.constant = fit.trace.back().value;
    if (fit.trace.size() == 1) {
        fit.stable = true;  // cannot be falsified; truncation already recorded
        fit.truncated = true;
    } else {
        double lo = kInf, hi = -kInf, max_se = 0.0;
        const size_t start = fit.trace.size() > 3 ? fit.trace.size() - 3 : 0;
        for (size_t i = start; i < fit.trace.size(); ++i) {
            lo = std::min(lo, fit.trace[i].value);
            hi = std::max(hi, fit.trace[i].value);
            max_se = std::max(max_se, fit.trace[i].std_error);
        }
        fit.stable = (hi - lo) <= std::max(stab_tol * std::max(1.0, std::abs(fit.constant)),
                                           4.0 * max_se);
    }
    return fit;
}

ConvergenceVerdict classify(const std::vector<ScanPoint>& scan_points,
                            const std::vector<ProbeFit>& probes, double threshold) {
    if (scan_points.size() < 12)
        throw std::invalid_argument("classify: need a scan with at least 12 points");
    ConvergenceVerdict v;
    v.evidence = scan_points;
    for (const auto& p : probes)
        if (p.terms_used > 0) v.probe_values[p.label] = p.constant;

    const size_t tail_len = 5;
    double tail_lo = kInf, tail_hi = -kInf, tail_mean = 0.0, max_se = 0.0;
    bool tail_zero = true;  // every tail point consistent with 0 at its own error
    const size_t start = scan_points.size() - tail_len;
    for (size_t i = start; i < scan_points.size(); ++i) {
        const auto& sp = scan_points[i];
        tail_lo = std::min(tail_lo, sp.value);
        tail_hi = std::max(tail_hi, sp.value);
        tail_mean += sp.value;
        tail_zero = tail_zero && std::abs(sp.value) < threshold + 4.0 * sp.std_error;
        max_se = std::max(max_se, sp.std_error);
    }
    tail_mean /= double(tail_len);
    const double thr = threshold + 4.0 * max_se;

    if (tail_zero) {
        v.kind = VerdictKind::Degenerate;
        v.limit = 0.0;
        return v;
    }

    // Probes certify oscillation; a scan tail alone never does (it cannot
    // tell slow convergence from a slow phase), and an unluckily placed
    // noisy tail must not override separated probe fits either.
    std::vector<double> constants;
    bool all_stable = true;
    for (const auto& p : probes) {
        if (p.terms_used == 0) continue;
        constants.push_back(p.constant);
        all_stable = all_stable && p.stable;
        if (p.truncated) v.notes.push_back("probe " + p.label + " truncated");
    }
    if (constants.size() >= 2 && all_stable) {
        const auto [lo, hi] = std::minmax_element(constants.begin(), constants.end());
        if (*hi - *lo > thr) {
            v.kind = VerdictKind::Oscillates;
            v.liminf = *lo;
            v.limsup = *hi;
            return v;
        }
    }
    if (tail_hi - tail_lo < thr) {
        v.kind = VerdictKind::Converges;
        v.limit = tail_mean;
        return v;
    }
    v.kind = VerdictKind::Indeterminate;
    v.notes.push_back("scan does not settle and probes do not separate");
    return v;
}

}  // namespace cevmlab

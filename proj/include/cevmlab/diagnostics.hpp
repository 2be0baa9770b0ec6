#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cevmlab/common.hpp"

namespace cevmlab {

struct ScanPoint {
    double t = 0.0;
    double value = 0.0;
    double std_error = 0.0;  // zero in analytic mode
};

// A functional of t: analytic pre-limit evaluation or a Monte Carlo estimate
// with its standard error.
using TFunctional = std::function<ScanPoint(double)>;

// Subsequence t_n along which the pre-limit provably converges; t_of_n and
// the expected constant are closed forms parametrized by the grid point.
struct ProbeSpec {
    std::string label;
    int n_start = 0;
    std::function<double(int, double, double)> t_of_n;
    std::function<double(double, double)> expected_value;
};

std::vector<ScanPoint> scan(const TFunctional& fn, const std::vector<double>& t_grid);

struct ProbeFit {
    std::string label;
    double constant = kNaN;
    bool stable = false;
    int terms_used = 0;
    bool truncated = false;  // terms dropped (overflow or above t_max)
    std::vector<ScanPoint> trace;
};

// Evaluates fn along p.t_of_n(n, x, y), n = n_start ... n_start+n_terms-1,
// dropping non-representable terms and terms outside [t_min, t_max]. The
// fitted constant is the last usable value; `stable` reports whether the
// trace settled (single-term fits count as stable and are flagged truncated).
ProbeFit probe(const TFunctional& fn, const ProbeSpec& p, double x, double y, int n_terms,
               double t_min = 1.0, double t_max = kInf, double stab_tol = 1e-6);

enum class VerdictKind { Converges, Oscillates, Degenerate, Indeterminate };

std::string to_string(VerdictKind k);

struct ConvergenceVerdict {
    VerdictKind kind = VerdictKind::Indeterminate;
    double limit = kNaN;                  // Converges
    double liminf = kNaN, limsup = kNaN;  // Oscillates
    std::vector<ScanPoint> evidence;
    std::map<std::string, double> probe_values;
    std::vector<std::string> notes;
};

// Decision rule over a scan tail plus probe fits. The effective threshold is
// widened by 4x the largest tail standard error (Monte Carlo mode).
//   - tail values all below threshold        -> Degenerate
//   - tail spread below threshold            -> Converges(tail mean)
//   - >= 2 stable probes, gap over threshold -> Oscillates(min, max)
//   - otherwise                              -> Indeterminate
ConvergenceVerdict classify(const std::vector<ScanPoint>& scan_points,
                            const std::vector<ProbeFit>& probes, double threshold = 0.02);

}  // namespace cevmlab

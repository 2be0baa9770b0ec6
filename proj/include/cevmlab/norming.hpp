#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cevmlab/common.hpp"

namespace cevmlab {

// The functions (alpha, beta) normalize the first component, (c, d) the
// conditioning one. All four must be total and finite on [t_min, inf),
// with alpha, c > 0 there.
struct NormalizingQuadruple {
    std::function<double(double)> alpha;
    std::function<double(double)> beta;
    std::function<double(double)> c;
    std::function<double(double)> d;
    double gamma_y = 0.0;
    std::optional<double> gamma_x_hint;
    double t_min = 1.0;
};

struct RegVarEvidence {
    double lambda;
    double t;
    double ratio;
};

struct RegVarProfile {
    double rho = kNaN;      // NaN when flagged non-regular
    double c_shift = kNaN;  // constant C of the shift relation
    bool regular = false;
    std::string note;
    std::vector<RegVarEvidence> evidence;
};

// Probes alpha(lambda t)/alpha(t) and (beta(lambda t) - beta(t))/alpha(t)
// along t_grid. rho and C are read off at the two largest t values; a ratio
// sequence whose spread over the top half of the grid exceeds tol leaves the
// profile flagged non-regular with rho = NaN.
RegVarProfile profile_regular_variation(const NormalizingQuadruple& q,
                                        const std::vector<double>& lambdas,
                                        const std::vector<double>& t_grid, double tol = 1e-3);

enum class EquivalenceVerdict { equivalent, not_equivalent, indeterminate };

struct EquivalenceConstants {
    double A = kNaN;
    double B = kNaN;
    double C_pair = kNaN;
    double D = kNaN;
    EquivalenceVerdict verdict = EquivalenceVerdict::indeterminate;
    std::string note;
};

// Tracks alpha1/alpha2, (beta1 - beta2)/alpha2, c1/c2, (d1 - d2)/c2 along
// t_grid. equivalent iff all four stabilize with the scale limits in
// (0, inf); a clearly oscillating or diverging sequence gives
// not_equivalent, slow drift gives indeterminate.
EquivalenceConstants check_equivalence(const NormalizingQuadruple& q1,
                                       const NormalizingQuadruple& q2,
                                       const std::vector<double>& t_grid);

// Internal sequence classification, exposed for diagnostics reuse.
enum class SeqKind { stable, diverged, oscillating, drifting };

struct SeqClass {
    SeqKind kind;
    double value;   // tail value when stable
    double spread;  // absolute spread over the tail window
};

SeqClass classify_sequence(const std::vector<double>& values, double stable_tol = 1e-3,
                           double osc_threshold = 0.02);

}  // namespace cevmlab

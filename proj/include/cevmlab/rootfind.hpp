#pragma once

#include <functional>
#include <utility>

namespace cevmlab {

// Bisection inverse of a monotone function on [lo, hi]. Returns x with
// |fn(x) - target| <= tol * max(1, |target|). Throws std::invalid_argument
// when target is not bracketed by fn(lo), fn(hi).
double inverse_monotone(const std::function<double(double)>& fn, double target, double lo,
                        double hi, double tol = 1e-12, int max_iter = 200);

// Grows [seed_lo, seed_hi] geometrically (about 1 and away from it) until
// fn brackets target. fn must be monotone on (0, inf).
std::pair<double, double> expand_bracket(const std::function<double(double)>& fn, double target,
                                         double seed_lo = 0.5, double seed_hi = 2.0);

}  // namespace cevmlab

#include "cevmlab/rootfind.hpp"

#include <cmath>
#include <stdexcept>

namespace cevmlab {

double inverse_monotone(const std::function<double(double)>& fn, double target, double lo,
                        double hi, double tol, int max_iter) {
    if (!(lo <= hi)) throw std::invalid_argument("inverse_monotone: empty bracket");
    double flo = fn(lo);
    double fhi = fn(hi);
    const bool increasing = fhi >= flo;
    const double fmin = increasing ? flo : fhi;
    const double fmax = increasing ? fhi : flo;
    if (!(target >= fmin && target <= fmax))
        throw std::invalid_argument("inverse_monotone: target outside bracket image");

    const double goal = tol * std::max(1.0, std::abs(target));
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < max_iter && lo < hi; ++it) {
        mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // interval exhausted at double precision
        const double fm = fn(mid);
        if (std::abs(fm - target) <= goal) return mid;
        if ((fm < target) == increasing)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::pair<double, double> expand_bracket(const std::function<double(double)>& fn, double target,
                                         double seed_lo, double seed_hi) {
    double lo = seed_lo, hi = seed_hi;
    const bool increasing = fn(hi) >= fn(lo);
    for (int it = 0; it < 2100; ++it) {
        const double at_lo = fn(lo);
        const double at_hi = fn(hi);
        const double fmin = increasing ? at_lo : at_hi;
        const double fmax = increasing ? at_hi : at_lo;
        if (target >= fmin && target <= fmax) return {lo, hi};
        if (increasing ? (target < fmin) : (target > fmax))
            lo *= 0.5;
        else
            hi *= 2.0;
        if (!(lo > 0.0) || !std::isfinite(hi)) break;
    }
    throw std::invalid_argument("expand_bracket: target unreachable");
}

}  // namespace cevmlab

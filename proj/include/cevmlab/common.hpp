#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace cevmlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
inline constexpr double kPi = 3.14159265358979323846;

// Grid points are moved off atoms by this amount before Monte Carlo
// comparisons (continuity-set caveat of vague convergence).
inline constexpr double kAtomNudge = 1e-9;

// Interval of the extended real line. Membership tests treat lo/hi as
// excluded unless stated otherwise; +-inf are ordinary values here.
struct Interval {
    double lo = -kInf;
    double hi = kInf;

    bool contains_open(double v) const { return v > lo && v < hi; }
    // Half-open (lo, hi] membership, used for localized neighborhoods.
    bool contains_left_open(double v) const { return v > lo && v <= hi; }
    bool is_empty() const { return !(lo < hi); }
};

inline Interval full_line() { return Interval{-kInf, kInf}; }

// t_0, t_0*ratio, ..., count values.
std::vector<double> geometric_grid(double start, double ratio, int count);

// max - min; NaN-free inputs assumed.
double spread(const std::vector<double>& values);

}  // namespace cevmlab

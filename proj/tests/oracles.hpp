#pragma once

#include <functional>

#include "cevmlab/measures.hpp"

// Brute-force evaluators kept independent of the measure component logic;
// unit and acceptance tests freeze expected values computed here.
namespace cevmlab::oracle {

// Mass of {s : x(s) <= x or > x, y(s) > y} on a curve carrying h(r) on
// {s > r}, by fine discretization of s (no use of coordinate inverses).
double curve_rect(const std::function<double(double)>& x_of_s,
                  const std::function<double(double)>& y_of_s,
                  const std::function<double(double)>& h, double s_lo, double s_hi, double x,
                  double y, int cells = 2'000'000);

double curve_quadrant(const std::function<double(double)>& x_of_s,
                      const std::function<double(double)>& y_of_s,
                      const std::function<double(double)>& h, double s_lo, double s_hi, double x,
                      double y, int cells = 2'000'000);

// Integral of f over [x_lo, x_hi] x [y_lo, y_hi] by composite Simpson.
double quad2d(const std::function<double(double, double)>& f, double x_lo, double x_hi,
              double y_lo, double y_hi, int nx = 600, int ny = 600);

// Same with a y-dependent inner x range [x_lo(y), x_hi(y)] (empty rows give
// zero); keeps the integrand smooth across triangular supports.
double quad_region(const std::function<double(double, double)>& f, double y_lo, double y_hi,
                   const std::function<double(double)>& x_lo_of_y,
                   const std::function<double(double)>& x_hi_of_y, int nx = 800, int ny = 800);

}  // namespace cevmlab::oracle

#include "oracles.hpp"

#include <cmath>

namespace cevmlab::oracle {

namespace {

double curve_mass(const std::function<double(double)>& x_of_s,
                  const std::function<double(double)>& y_of_s,
                  const std::function<double(double)>& h, double s_lo, double s_hi, double x,
                  double y, bool upper_x, int cells) {
    // Each s-cell contributes h(a) - h(b); membership decided at the midpoint.
    double mass = 0.0;
    const double step = (s_hi - s_lo) / cells;
    for (int i = 0; i < cells; ++i) {
        const double a = s_lo + i * step;
        const double b = a + step;
        const double mid = 0.5 * (a + b);
        const double xv = x_of_s(mid);
        const bool x_ok = upper_x ? (xv > x) : (xv <= x);
        if (x_ok && y_of_s(mid) > y) mass += h(a) - h(b);
    }
    return mass;
}

}  // namespace

double curve_rect(const std::function<double(double)>& x_of_s,
                  const std::function<double(double)>& y_of_s,
                  const std::function<double(double)>& h, double s_lo, double s_hi, double x,
                  double y, int cells) {
    return curve_mass(x_of_s, y_of_s, h, s_lo, s_hi, x, y, false, cells);
}

double curve_quadrant(const std::function<double(double)>& x_of_s,
                      const std::function<double(double)>& y_of_s,
                      const std::function<double(double)>& h, double s_lo, double s_hi, double x,
                      double y, int cells) {
    return curve_mass(x_of_s, y_of_s, h, s_lo, s_hi, x, y, true, cells);
}

double quad_region(const std::function<double(double, double)>& f, double y_lo, double y_hi,
                   const std::function<double(double)>& x_lo_of_y,
                   const std::function<double(double)>& x_hi_of_y, int nx, int ny) {
    if (nx % 2) ++nx;
    if (ny % 2) ++ny;
    const double hy = (y_hi - y_lo) / ny;
    auto wt = [](int i, int n) { return i == 0 || i == n ? 1.0 : (i % 2 ? 4.0 : 2.0); };
    double sum = 0.0;
    for (int j = 0; j <= ny; ++j) {
        const double y = y_lo + j * hy;
        const double a = x_lo_of_y(y), b = x_hi_of_y(y);
        if (!(b > a)) continue;
        const double hx = (b - a) / nx;
        double row = 0.0;
        for (int i = 0; i <= nx; ++i) row += wt(i, nx) * f(a + i * hx, y);
        sum += wt(j, ny) * row * hx / 3.0;
    }
    return sum * hy / 3.0;
}

double quad2d(const std::function<double(double, double)>& f, double x_lo, double x_hi,
              double y_lo, double y_hi, int nx, int ny) {
    if (nx % 2) ++nx;
    if (ny % 2) ++ny;
    const double hx = (x_hi - x_lo) / nx;
    const double hy = (y_hi - y_lo) / ny;
    auto wt = [](int i, int n) { return i == 0 || i == n ? 1.0 : (i % 2 ? 4.0 : 2.0); };
    double sum = 0.0;
    for (int i = 0; i <= nx; ++i) {
        const double x = x_lo + i * hx;
        double row = 0.0;
        for (int j = 0; j <= ny; ++j) row += wt(j, ny) * f(x, y_lo + j * hy);
        sum += wt(i, nx) * row;
    }
    return sum * hx * hy / 9.0;
}

}  // namespace cevmlab::oracle

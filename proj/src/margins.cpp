#include "cevmlab/margins.hpp"

#include <algorithm>
#include <stdexcept>

namespace cevmlab {

std::vector<double> geometric_grid(double start, double ratio, int count) {
    if (!(start > 0.0) || !(ratio > 1.0) || count < 1)
        throw std::invalid_argument("geometric_grid: need start > 0, ratio > 1, count >= 1");
    std::vector<double> g;
    g.reserve(static_cast<size_t>(count));
    double t = start;
    for (int i = 0; i < count; ++i) {
        g.push_back(t);
        t *= ratio;
    }
    return g;
}

double spread(const std::vector<double>& values) {
    if (values.empty()) return 0.0;
    auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return *hi - *lo;
}

EviSupport support_interval(double gamma) {
    if (!std::isfinite(gamma)) throw std::domain_error("support_interval: gamma must be finite");
    if (std::abs(gamma) < kGammaZeroEps) return EviSupport{gamma, -kInf, kInf};
    if (gamma > 0.0) return EviSupport{gamma, -1.0 / gamma, kInf};
    return EviSupport{gamma, -kInf, -1.0 / gamma};
}

double gev_tail(double gamma, double x) {
    if (std::abs(gamma) < kGammaZeroEps) return std::exp(-x);
    const double u = gamma * x;
    if (!(1.0 + u > 0.0)) throw std::domain_error("gev_tail: x outside E^(gamma)");
    return std::exp(-std::log1p(u) / gamma);
}

double marginal_transform(double gamma, double x) {
    if (!(x > 0.0)) throw std::domain_error("marginal_transform: x must be positive");
    if (std::abs(gamma) < kGammaZeroEps) return std::log(x);
    return std::expm1(gamma * std::log(x)) / gamma;
}

double inverse_marginal_transform(double gamma, double u) {
    if (std::abs(gamma) < kGammaZeroEps) return std::exp(u);
    const double v = gamma * u;
    if (!(1.0 + v > 0.0))
        throw std::domain_error("inverse_marginal_transform: u outside E^(gamma)");
    return std::exp(std::log1p(v) / gamma);
}

double pareto_standardize(double cdf_value) {
    if (!(cdf_value >= 0.0) || !(cdf_value <= 1.0))
        throw std::domain_error("pareto_standardize: cdf value outside [0, 1]");
    if (cdf_value == 1.0) return kInf;
    return 1.0 / (1.0 - cdf_value);
}

}  // namespace cevmlab

#pragma once

#include "cevmlab/common.hpp"

namespace cevmlab {

// Below this threshold the gamma = 0 (Gumbel) expressions are used verbatim;
// evaluating the generic formulas closer to zero loses digits to cancellation.
inline constexpr double kGammaZeroEps = 1e-10;

// Interior of the support of the GEV distribution G_gamma together with its
// endpoints q_gamma (lower) and q^gamma (upper) on the extended real line.
struct EviSupport {
    double gamma;
    double q_lower;
    double q_upper;

    bool contains(double x) const { return x > q_lower && x < q_upper; }
    Interval interval() const { return Interval{q_lower, q_upper}; }
};

// E^(gamma) = {x : 1 + gamma x > 0}.
EviSupport support_interval(double gamma);

// (1 + gamma x)^(-1/gamma), read as e^(-x) for gamma = 0. Strictly
// decreasing on E^(gamma); throws std::domain_error outside.
double gev_tail(double gamma, double x);

// (x^gamma - 1)/gamma for x > 0, read as log x for gamma = 0.
double marginal_transform(double gamma, double x);

// Inverse of marginal_transform: (1 + gamma u)^(1/gamma) for u in E^(gamma).
double inverse_marginal_transform(double gamma, double u);

// Pareto standardization 1/(1 - F). F = 1 maps to +inf (atom at the upper
// endpoint); values outside [0, 1] are a domain error.
double pareto_standardize(double cdf_value);

}  // namespace cevmlab

#include "cevmlab/norming.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cevmlab {

namespace {

std::vector<double> tail_window(const std::vector<double>& v, size_t len) {
    const size_t k = std::min(len, v.size());
    return std::vector<double>(v.end() - static_cast<long>(k), v.end());
}

// (lambda^rho - 1)/rho with the log lambda convention at rho = 0.
double power_increment(double rho, double lambda) {
    if (std::abs(rho) < 1e-9) return std::log(lambda);
    return std::expm1(rho * std::log(lambda)) / rho;
}

}  // namespace

SeqClass classify_sequence(const std::vector<double>& values, double stable_tol,
                           double osc_threshold) {
    if (values.empty()) return {SeqKind::drifting, kNaN, kNaN};
    const auto tail = tail_window(values, 5);
    const double sp = spread(tail);
    double mean = 0.0;
    for (double v : tail) mean += v;
    mean /= double(tail.size());
    const double rel = sp / std::max(1.0, std::abs(mean));
    if (rel < stable_tol) return {SeqKind::stable, tail.back(), sp};

    // A monotone trace is never oscillation: it is divergence when it has
    // run off by orders of magnitude, slow drift otherwise.
    bool inc = true, dec = true;
    for (size_t i = 1; i < values.size(); ++i) {
        inc = inc && values[i] >= values[i - 1];
        dec = dec && values[i] <= values[i - 1];
    }
    if (inc || dec) {
        const double first = std::abs(values.front()), last = std::abs(values.back());
        if (last > 1e3 * std::max(1.0, first)) return {SeqKind::diverged, values.back(), sp};
        return {SeqKind::drifting, tail.back(), sp};
    }
    if (rel > osc_threshold) return {SeqKind::oscillating, tail.back(), sp};
    return {SeqKind::drifting, tail.back(), sp};
}

RegVarProfile profile_regular_variation(const NormalizingQuadruple& q,
                                        const std::vector<double>& lambdas,
                                        const std::vector<double>& t_grid, double tol) {
    if (t_grid.size() < 2) throw std::invalid_argument("profile_regular_variation: t_grid too short");
    for (size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1]))
            throw std::invalid_argument("profile_regular_variation: t_grid not increasing");
    const bool has2 = std::count(lambdas.begin(), lambdas.end(), 2.0) > 0;
    const bool hashalf = std::count(lambdas.begin(), lambdas.end(), 0.5) > 0;
    if (!has2 || !hashalf)
        throw std::invalid_argument("profile_regular_variation: lambdas must contain 2 and 1/2");

    RegVarProfile prof;
    bool all_stable = true;
    for (double lam : lambdas) {
        std::vector<double> ratios;
        for (double t : t_grid) {
            if (t < q.t_min || lam * t < q.t_min) continue;
            const double a = q.alpha(t);
            if (!(a > 0.0)) throw std::invalid_argument("profile_regular_variation: alpha <= 0");
            const double r = q.alpha(lam * t) / a;
            ratios.push_back(r);
            prof.evidence.push_back({lam, t, r});
        }
        if (ratios.size() < 2) continue;
        const auto top = tail_window(ratios, std::max<size_t>(5, ratios.size() / 2));
        double mean = 0.0;
        for (double v : top) mean += v;
        mean /= double(top.size());
        if (spread(top) > tol * std::max(1.0, std::abs(mean))) {
            all_stable = false;
            prof.note += "alpha ratio does not stabilize at lambda=" + std::to_string(lam) + "; ";
        }
    }
    if (!all_stable) {
        prof.regular = false;
        return prof;
    }

    // rho from the two largest t values, lambda in {2, 1/2}.
    auto rho_at = [&](double lam, double t) {
        return std::log(q.alpha(lam * t) / q.alpha(t)) / std::log(lam);
    };
    const double t1 = t_grid[t_grid.size() - 2];
    const double t2 = t_grid.back();
    const double rho_est[] = {rho_at(2.0, t1), rho_at(2.0, t2), rho_at(0.5, t1), rho_at(0.5, t2)};
    double rho = 0.0;
    for (double r : rho_est) rho += r;
    rho /= 4.0;

    // Shift constant C against C (lambda^rho - 1)/rho, stabilization checked
    // over the top half of the grid.
    std::vector<double> c_seq;
    for (double t : t_grid) {
        if (t < q.t_min || 0.5 * t < q.t_min) continue;
        const double c2 = (q.beta(2.0 * t) - q.beta(t)) / q.alpha(t) / power_increment(rho, 2.0);
        const double ch = (q.beta(0.5 * t) - q.beta(t)) / q.alpha(t) / power_increment(rho, 0.5);
        c_seq.push_back(0.5 * (c2 + ch));
    }
    const auto ctail = tail_window(c_seq, std::max<size_t>(5, c_seq.size() / 2));
    double cmean = 0.0;
    for (double v : ctail) cmean += v;
    cmean /= double(std::max<size_t>(1, ctail.size()));
    if (!c_seq.empty() && spread(ctail) > tol * std::max(1.0, std::abs(cmean))) {
        prof.regular = false;
        prof.note += "shift increments do not stabilize; ";
        return prof;
    }

    prof.regular = true;
    prof.rho = rho;
    prof.c_shift = c_seq.empty() ? 0.0 : c_seq.back();
    return prof;
}

EquivalenceConstants check_equivalence(const NormalizingQuadruple& q1,
                                       const NormalizingQuadruple& q2,
                                       const std::vector<double>& t_grid) {
    const double t_min = std::max(q1.t_min, q2.t_min);
    std::vector<double> ra, rb, rc, rd;
    for (double t : t_grid) {
        if (t < t_min) continue;
        const double a2 = q2.alpha(t);
        const double c2 = q2.c(t);
        ra.push_back(q1.alpha(t) / a2);
        rb.push_back((q1.beta(t) - q2.beta(t)) / a2);
        rc.push_back(q1.c(t) / c2);
        rd.push_back((q1.d(t) - q2.d(t)) / c2);
    }

    EquivalenceConstants out;
    const SeqClass cls[4] = {classify_sequence(ra), classify_sequence(rb), classify_sequence(rc),
                             classify_sequence(rd)};
    out.A = cls[0].value;
    out.B = cls[1].value;
    out.C_pair = cls[2].value;
    out.D = cls[3].value;

    bool bad = false, drift = false;
    const char* names[4] = {"A", "B", "C", "D"};
    for (int i = 0; i < 4; ++i) {
        switch (cls[i].kind) {
            case SeqKind::stable:
                break;
            case SeqKind::diverged:
            case SeqKind::oscillating:
                bad = true;
                out.note += std::string(names[i]) + "-sequence does not converge; ";
                break;
            case SeqKind::drifting:
                drift = true;
                out.note += std::string(names[i]) + "-sequence drifts; ";
                break;
        }
    }
    const bool scales_ok = out.A > 1e-12 && std::isfinite(out.A) && out.C_pair > 1e-12 &&
                           std::isfinite(out.C_pair);
    if (bad || (!drift && cls[0].kind == SeqKind::stable && cls[2].kind == SeqKind::stable &&
                !scales_ok)) {
        out.verdict = EquivalenceVerdict::not_equivalent;
    } else if (drift) {
        out.verdict = EquivalenceVerdict::indeterminate;
    } else {
        out.verdict = EquivalenceVerdict::equivalent;
    }
    return out;
}

}  // namespace cevmlab

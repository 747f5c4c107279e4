// convergence.hpp — Cutoff-bump and step-halving drift checks
//
// Truncation and step size are the two knobs every reported number depends
// on. A quantity is trusted only after re-evaluating with the cutoff grown
// and with the step halved, and seeing the drift stay under tolerance.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "usco/fock.hpp"

namespace usco::convergence {

struct DriftReport {
    double max_drift{0.0};
    double tolerance{0.0};
    bool passed{false};
    std::string detail;
};

inline double max_abs_diff(const std::vector<double>& x, const std::vector<double>& y) {
    double d = 0.0;
    const size_t n = std::min(x.size(), y.size());
    for (size_t i = 0; i < n; ++i) d = std::max(d, std::abs(x[i] - y[i]));
    return d;
}

// Re-evaluate `quantities` with extra Fock shells and compare.
inline DriftReport cutoff_bump(const std::function<std::vector<double>(FockCutoff)>& quantities,
                               FockCutoff base, int extra_shells, double tolerance) {
    std::vector<double> v0 = quantities(base);
    std::vector<double> v1 = quantities(FockCutoff(base.n_a + extra_shells, base.n_b + extra_shells));
    DriftReport r;
    r.max_drift = max_abs_diff(v0, v1);
    r.tolerance = tolerance;
    r.passed = r.max_drift < tolerance;
    r.detail = "cutoff (" + std::to_string(base.n_a) + "," + std::to_string(base.n_b) + ") vs +" +
               std::to_string(extra_shells) + " shells: drift " + std::to_string(r.max_drift);
    return r;
}

// Re-evaluate `quantities` with the step halved and compare.
inline DriftReport dt_halving(const std::function<std::vector<double>(double)>& quantities,
                              double dt, double tolerance) {
    std::vector<double> v0 = quantities(dt);
    std::vector<double> v1 = quantities(0.5 * dt);
    DriftReport r;
    r.max_drift = max_abs_diff(v0, v1);
    r.tolerance = tolerance;
    r.passed = r.max_drift < tolerance;
    r.detail = "dt " + std::to_string(dt) + " vs " + std::to_string(0.5 * dt) + ": drift " +
               std::to_string(r.max_drift);
    return r;
}

} // namespace usco::convergence

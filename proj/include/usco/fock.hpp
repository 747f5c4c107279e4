// fock.hpp — Truncated two-mode Fock space: cutoffs, composite indexing, states

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <utility>

#include "usco/errors.hpp"

namespace usco {

using Complex = std::complex<double>;

// Dense operator on the composite space. All cross-module exchange uses this
// layout; modules are free to keep sparse copies internally.
using OperatorMatrix = Eigen::MatrixXcd;

// Retained Fock levels per mode: 0..n_a-1 for mode a, 0..n_b-1 for mode b.
// Composite index of |m>_a |n>_b is m*n_b + n (mode a major). This layout is
// the binding contract for every matrix, state vector, and CSV file.
struct FockCutoff {
    int n_a{2};
    int n_b{2};

    FockCutoff(int levels_a, int levels_b) : n_a(levels_a), n_b(levels_b) {
        if (n_a < 2 || n_b < 2)
            throw validation_error("FockCutoff: need at least 2 levels per mode, got (" +
                                   std::to_string(n_a) + "," + std::to_string(n_b) + ")");
    }

    int dim() const { return n_a * n_b; }

    int index(int m, int n) const { return m * n_b + n; }

    std::pair<int, int> levels(int idx) const { return {idx / n_b, idx % n_b}; }

    bool operator==(const FockCutoff&) const = default;
};

// Pure state: amplitudes A_{m,n} at composite index m*n_b + n.
struct StateVector {
    FockCutoff cutoff;
    Eigen::VectorXcd amps;

    StateVector(FockCutoff c, Eigen::VectorXcd a) : cutoff(c), amps(std::move(a)) {
        if (amps.size() != cutoff.dim())
            throw validation_error("StateVector: amplitude length " + std::to_string(amps.size()) +
                                   " does not match dimension " + std::to_string(cutoff.dim()));
    }

    static StateVector vacuum(FockCutoff c) { return basis(c, 0, 0); }

    static StateVector basis(FockCutoff c, int m, int n) {
        if (m < 0 || m >= c.n_a || n < 0 || n >= c.n_b)
            throw validation_error("StateVector::basis: level (" + std::to_string(m) + "," +
                                   std::to_string(n) + ") outside cutoff");
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(c.dim());
        v(c.index(m, n)) = 1.0;
        return {c, std::move(v)};
    }

    Complex amp(int m, int n) const { return amps(cutoff.index(m, n)); }

    double norm() const { return amps.norm(); }

    StateVector normalized() const {
        Eigen::VectorXcd v = amps / amps.norm();
        return {cutoff, std::move(v)};
    }
};

// Mixed state: rho_{m,n,j,k} at row m*n_b + n, column j*n_b + k.
struct DensityMatrix {
    FockCutoff cutoff;
    Eigen::MatrixXcd entries;

    DensityMatrix(FockCutoff c, Eigen::MatrixXcd e) : cutoff(c), entries(std::move(e)) {
        if (entries.rows() != cutoff.dim() || entries.cols() != cutoff.dim())
            throw validation_error("DensityMatrix: entries must be " + std::to_string(cutoff.dim()) +
                                   "x" + std::to_string(cutoff.dim()));
    }

    static DensityMatrix pure(const StateVector& psi) {
        return {psi.cutoff, psi.amps * psi.amps.adjoint()};
    }

    static DensityMatrix vacuum(FockCutoff c) { return pure(StateVector::vacuum(c)); }

    Complex entry(int m, int n, int j, int k) const {
        return entries(cutoff.index(m, n), cutoff.index(j, k));
    }

    double trace_real() const { return entries.trace().real(); }
};

} // namespace usco

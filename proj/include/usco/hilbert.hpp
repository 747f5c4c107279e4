// hilbert.hpp — Ladder operators, parity, expectation values, partial transpose

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cmath>
#include <vector>

#include "usco/errors.hpp"
#include "usco/fock.hpp"
#include "usco/linalg.hpp"

namespace usco::hilbert {

using linalg::SparseOp;

// a |m,n> = sqrt(m) |m-1,n>, zero amplitude onto levels past the cutoff.
inline SparseOp annihilator_a_sparse(FockCutoff c) {
    std::vector<Eigen::Triplet<Complex>> t;
    t.reserve(static_cast<size_t>(c.dim()));
    for (int m = 1; m < c.n_a; ++m)
        for (int n = 0; n < c.n_b; ++n)
            t.emplace_back(c.index(m - 1, n), c.index(m, n), std::sqrt(double(m)));
    SparseOp a(c.dim(), c.dim());
    a.setFromTriplets(t.begin(), t.end());
    return a;
}

inline SparseOp annihilator_b_sparse(FockCutoff c) {
    std::vector<Eigen::Triplet<Complex>> t;
    t.reserve(static_cast<size_t>(c.dim()));
    for (int m = 0; m < c.n_a; ++m)
        for (int n = 1; n < c.n_b; ++n)
            t.emplace_back(c.index(m, n - 1), c.index(m, n), std::sqrt(double(n)));
    SparseOp b(c.dim(), c.dim());
    b.setFromTriplets(t.begin(), t.end());
    return b;
}

struct LadderOps {
    OperatorMatrix a;
    OperatorMatrix a_dag;
    OperatorMatrix b;
    OperatorMatrix b_dag;
};

inline LadderOps ladder_ops(FockCutoff c) {
    OperatorMatrix a = annihilator_a_sparse(c);
    OperatorMatrix b = annihilator_b_sparse(c);
    return {a, a.adjoint(), b, b.adjoint()};
}

// P = (-1)^(a^+a + b^+b): diagonal with entry (-1)^(m+n).
inline OperatorMatrix parity_op(FockCutoff c) {
    OperatorMatrix p = OperatorMatrix::Zero(c.dim(), c.dim());
    for (int m = 0; m < c.n_a; ++m)
        for (int n = 0; n < c.n_b; ++n)
            p(c.index(m, n), c.index(m, n)) = ((m + n) % 2 == 0) ? 1.0 : -1.0;
    return p;
}

inline OperatorMatrix number_op_a(FockCutoff c) {
    OperatorMatrix n = OperatorMatrix::Zero(c.dim(), c.dim());
    for (int m = 0; m < c.n_a; ++m)
        for (int k = 0; k < c.n_b; ++k) n(c.index(m, k), c.index(m, k)) = double(m);
    return n;
}

inline OperatorMatrix number_op_b(FockCutoff c) {
    OperatorMatrix n = OperatorMatrix::Zero(c.dim(), c.dim());
    for (int m = 0; m < c.n_a; ++m)
        for (int k = 0; k < c.n_b; ++k) n(c.index(m, k), c.index(m, k)) = double(k);
    return n;
}

inline Complex expectation(const OperatorMatrix& op, const StateVector& psi) {
    if (op.rows() != psi.amps.size() || op.cols() != psi.amps.size())
        throw validation_error("expectation: operator dimension " + std::to_string(op.rows()) +
                               " does not match state dimension " + std::to_string(psi.amps.size()));
    return (psi.amps.adjoint() * (op * psi.amps))(0);
}

inline Complex expectation(const OperatorMatrix& op, const DensityMatrix& rho) {
    if (op.rows() != rho.entries.rows() || op.cols() != rho.entries.cols())
        throw validation_error("expectation: operator dimension " + std::to_string(op.rows()) +
                               " does not match density-matrix dimension " +
                               std::to_string(rho.entries.rows()));
    return (op * rho.entries).trace();
}

// Partial transpose over mode b: output(m,n;j,k) = input(m,k;j,n).
// Trace-preserving involution; Hermitian whenever the input is.
inline OperatorMatrix partial_transpose_b(const DensityMatrix& rho) {
    const FockCutoff c = rho.cutoff;
    OperatorMatrix out(c.dim(), c.dim());
    for (int m = 0; m < c.n_a; ++m)
        for (int j = 0; j < c.n_a; ++j)
            for (int n = 0; n < c.n_b; ++n)
                for (int k = 0; k < c.n_b; ++k)
                    out(c.index(m, n), c.index(j, k)) = rho.entries(c.index(m, k), c.index(j, n));
    return out;
}

inline void require_normalized(const StateVector& psi, double tol = 1e-9) {
    double n = psi.norm();
    if (std::abs(n - 1.0) >= tol)
        throw validation_error("state is not normalized: |psi| = " + std::to_string(n));
}

// Density-matrix health: Hermitian to 1e-10, unit trace to 1e-8, lowest
// eigenvalue above -1e-7 (truncation/integration slack).
inline void require_valid_density(const DensityMatrix& rho,
                                  double herm_tol = 1e-10,
                                  double trace_tol = 1e-8,
                                  double eig_floor = -1e-7) {
    linalg::require_hermitian(rho.entries, herm_tol, "density matrix");
    double tr = rho.entries.trace().real();
    if (std::abs(tr - 1.0) >= trace_tol)
        throw validation_error("density matrix trace = " + std::to_string(tr));
    double min_eig = linalg::eigvalsh(rho.entries).minCoeff();
    if (min_eig < eig_floor)
        throw validation_error("density matrix has eigenvalue " + std::to_string(min_eig) +
                               " below floor");
}

} // namespace usco::hilbert

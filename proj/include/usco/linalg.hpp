// linalg.hpp — Dense Hermitian eigensolves, matrix exponentials, inverse iteration

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <cmath>
#include <complex>
#include <string>

#include "usco/errors.hpp"
#include "usco/fock.hpp"

namespace usco::linalg {

using SparseOp = Eigen::SparseMatrix<Complex>;

inline double max_abs(const Eigen::MatrixXcd& m) {
    return m.cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Eigen::MatrixXcd& m, double tol) {
    return max_abs(m - m.adjoint()) < tol;
}

inline void require_hermitian(const Eigen::MatrixXcd& m, double tol, const char* what) {
    if (m.rows() != m.cols())
        throw validation_error(std::string(what) + ": matrix not square");
    double dev = max_abs(m - m.adjoint());
    if (dev >= tol)
        throw validation_error(std::string(what) + ": matrix not Hermitian, max|M-M^+| = " +
                               std::to_string(dev));
}

struct EighResult {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXcd vectors; // column k pairs with values(k)
};

inline EighResult eigh(const Eigen::MatrixXcd& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigh: eigensolver failed to converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

inline Eigen::VectorXd eigvalsh(const Eigen::MatrixXcd& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigvalsh: eigensolver failed to converge");
    return solver.eigenvalues();
}

// exp(G) for anti-Hermitian G, computed through the eigensystem of the
// Hermitian matrix iG. Exactly unitary up to the eigensolve accuracy, which
// is what the frame-equivalence checks need.
inline Eigen::MatrixXcd expm_antihermitian(const Eigen::MatrixXcd& g) {
    require_hermitian(Complex(0, 1) * g, 1e-10 * std::max(1.0, max_abs(g)),
                      "expm_antihermitian");
    auto [w, v] = eigh(Complex(0, 1) * g);
    // G = -i (iG)  =>  exp(G) = V diag(exp(-i w)) V^+
    Eigen::VectorXcd phase(w.size());
    for (Eigen::Index k = 0; k < w.size(); ++k)
        phase(k) = std::exp(Complex(0, -w(k)));
    return v * phase.asDiagonal() * v.adjoint();
}

struct LowestPair {
    double value;
    Eigen::VectorXcd vector;
};

// Lowest eigenpair of a sparse Hermitian matrix by shifted inverse iteration.
// The caller supplies a shift strictly below the lowest eigenvalue (here the
// analytic ground energy minus a margin), so convergence is geometric in
// (E0-shift)/(E1-shift).
inline LowestPair lowest_eigenpair(const SparseOp& h, double shift,
                                   double tol = 1e-13, int max_iter = 300) {
    const auto n = h.rows();
    SparseOp shifted = h;
    for (Eigen::Index k = 0; k < n; ++k)
        shifted.coeffRef(k, k) -= shift;
    shifted.makeCompressed();

    Eigen::SparseLU<SparseOp> lu;
    lu.compute(shifted);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("lowest_eigenpair: LU factorization failed (shift too close?)");

    Eigen::VectorXcd x = Eigen::VectorXcd::Constant(n, Complex(1.0, 0.0) / std::sqrt(double(n)));
    double lambda = shift;
    for (int it = 0; it < max_iter; ++it) {
        Eigen::VectorXcd y = lu.solve(x);
        y /= y.norm();
        lambda = (y.adjoint() * (h * y))(0).real();
        double resid = (h * y - lambda * y).norm();
        x = y;
        if (resid < tol * std::max(1.0, std::abs(lambda))) return {lambda, x};
    }
    double resid = (h * x - lambda * x).norm();
    if (resid < 1e-9 * std::max(1.0, std::abs(lambda))) return {lambda, x};
    throw std::runtime_error("lowest_eigenpair: no convergence after " +
                             std::to_string(max_iter) + " iterations, residual " +
                             std::to_string(resid));
}

} // namespace usco::linalg

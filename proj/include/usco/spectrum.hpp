// spectrum.hpp — Eigensystem, transform matrices U/S_a/S_b, ground-state builders

#pragma once

#include <cmath>
#include <complex>

#include "usco/errors.hpp"
#include "usco/fock.hpp"
#include "usco/hilbert.hpp"
#include "usco/linalg.hpp"
#include "usco/model.hpp"

namespace usco::spectrum {

using model::ModelParams;
using model::NormalModeData;

struct EigenSystem {
    FockCutoff cutoff;
    Eigen::VectorXd energies;  // ascending
    Eigen::MatrixXcd states;   // column k is the k-th eigenvector
    Eigen::VectorXd parity;    // +-1 per state, sign of <P>

    StateVector state(int k) const { return {cutoff, states.col(k)}; }
};

namespace detail {

// op1 acting on mode a: op1 (x) I_b in the composite index m*n_b + n.
inline OperatorMatrix lift_mode_a(FockCutoff c, const Eigen::MatrixXcd& op1) {
    OperatorMatrix out = OperatorMatrix::Zero(c.dim(), c.dim());
    for (int m = 0; m < c.n_a; ++m)
        for (int j = 0; j < c.n_a; ++j) {
            const Complex v = op1(m, j);
            if (v == Complex(0, 0)) continue;
            for (int n = 0; n < c.n_b; ++n) out(c.index(m, n), c.index(j, n)) = v;
        }
    return out;
}

inline OperatorMatrix lift_mode_b(FockCutoff c, const Eigen::MatrixXcd& op1) {
    OperatorMatrix out = OperatorMatrix::Zero(c.dim(), c.dim());
    for (int n = 0; n < c.n_b; ++n)
        for (int k = 0; k < c.n_b; ++k) {
            const Complex v = op1(n, k);
            if (v == Complex(0, 0)) continue;
            for (int m = 0; m < c.n_a; ++m) out(c.index(m, n), c.index(m, k)) = v;
        }
    return out;
}

inline Eigen::MatrixXcd single_mode_annihilator(int levels) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(levels, levels);
    for (int k = 1; k < levels; ++k) a(k - 1, k) = std::sqrt(double(k));
    return a;
}

// Single-mode squeeze S(r) = exp[r (a^2 - a^+2)/2].
inline Eigen::MatrixXcd single_mode_squeezer(int levels, double r) {
    Eigen::MatrixXcd a = single_mode_annihilator(levels);
    Eigen::MatrixXcd gen = 0.5 * r * (a * a - (a * a).adjoint());
    return linalg::expm_antihermitian(gen);
}

// Fix the global phase so the first nonzero amplitude (lexicographic
// composite index) is real positive.
inline void fix_phase(Eigen::VectorXcd& v) {
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        if (std::abs(v(k)) > 1e-12) {
            v *= std::conj(v(k)) / std::abs(v(k));
            return;
        }
    }
}

} // namespace detail

inline EigenSystem diagonalize(const OperatorMatrix& h, FockCutoff cutoff) {
    if (h.rows() != cutoff.dim())
        throw validation_error("diagonalize: matrix dimension does not match cutoff");
    linalg::require_hermitian(h, 1e-10 * std::max(1.0, linalg::max_abs(h)), "diagonalize");
    auto [w, v] = linalg::eigh(h);
    OperatorMatrix p = hilbert::parity_op(cutoff);
    Eigen::VectorXd par(w.size());
    Eigen::MatrixXcd states = v;
    for (Eigen::Index k = 0; k < w.size(); ++k) {
        Eigen::VectorXcd col = states.col(k);
        detail::fix_phase(col);
        states.col(k) = col;
        double pk = (col.adjoint() * (p * col))(0).real();
        par(k) = pk >= 0 ? 1.0 : -1.0;
    }
    return {cutoff, w, states, par};
}

// U = exp[(theta/2) (omega_b-omega_a)/sqrt(omega_a omega_b) (a^+b^+ - ab)
//        - (theta/2) (omega_b+omega_a)/sqrt(omega_a omega_b) (a^+b - ab^+)],
// the bosonic form of the mode rotation. Unitary to the eigensolve accuracy.
inline OperatorMatrix build_U(const ModelParams& p, FockCutoff c) {
    NormalModeData d = model::normal_mode_analysis(p);
    auto [a, a_dag, b, b_dag] = hilbert::ladder_ops(c);
    const double c1 = (p.omega_b - p.omega_a) / std::sqrt(p.omega_a * p.omega_b);
    const double c2 = (p.omega_b + p.omega_a) / std::sqrt(p.omega_a * p.omega_b);
    OperatorMatrix gen = 0.5 * d.theta * c1 * (a_dag * b_dag - a * b) -
                         0.5 * d.theta * c2 * (a_dag * b - a * b_dag);
    return linalg::expm_antihermitian(gen);
}

struct Squeezers {
    OperatorMatrix S_a;
    OperatorMatrix S_b;
};

inline Squeezers build_squeezers(const ModelParams& p, FockCutoff c) {
    NormalModeData d = model::normal_mode_analysis(p);
    return {detail::lift_mode_a(c, detail::single_mode_squeezer(c.n_a, d.r_a)),
            detail::lift_mode_b(c, detail::single_mode_squeezer(c.n_b, d.r_b))};
}

// Lowest eigenvector of build_hamiltonian. Stable parameters use shifted
// inverse iteration seeded by the analytic ground energy; at or past the
// critical point (allow_critical) there is no analytic shift, so a dense
// eigensolve is used and a non-convergence warning goes to stderr.
inline StateVector ground_state_numeric(const ModelParams& p, FockCutoff c) {
    p.validate();
    Eigen::VectorXcd gs;
    if (p.stable()) {
        NormalModeData d = model::normal_mode_analysis(p);
        double shift = model::ground_energy(p) - 0.25 * d.omega_B;
        auto pair = linalg::lowest_eigenpair(model::build_hamiltonian_sparse(p, c), shift);
        gs = pair.vector;
    } else {
        std::fprintf(stderr,
                     "warning: g at/past critical coupling; truncated-cutoff ground state "
                     "is not convergent (r_b -> -inf in the exact model)\n");
        auto [w, v] = linalg::eigh(model::build_hamiltonian(p, c));
        gs = v.col(0);
    }
    detail::fix_phase(gs);
    return {c, gs};
}

// Degenerate-case number-state expansion of |G> = U^+ S_a S_b |0,0>:
// squeezed vacua re-scattered through the pi/4 beam splitter, evaluated as a
// quadruple sum with log-factorials and renormalized after truncation. The
// sum encodes the xi > 0 branch; for xi < 0 the two ground states are related
// by the mode-a parity gauge, which flips the sign of odd-m amplitudes.
inline StateVector ground_state_analytic_degenerate(const ModelParams& p, FockCutoff c) {
    p.validate();
    if (!p.degenerate())
        throw validation_error(
            "ground_state_analytic_degenerate: requires omega_a = omega_b (no closed form "
            "is implemented for the non-degenerate case)");
    if (!p.stable())
        throw stability_error("ground_state_analytic_degenerate: unstable parameters",
                              p.critical_coupling());

    NormalModeData d = model::normal_mode_analysis(p);
    const double ta = std::tanh(d.r_a), tb = std::tanh(d.r_b);
    const double ln2 = std::log(2.0);
    auto lg = [](int n) { return std::lgamma(double(n) + 1.0); };

    Eigen::VectorXd amps = Eigen::VectorXd::Zero(c.dim());
    const int m_max = std::max(c.n_a, c.n_b); // (-tanh r/2)^m decays fast; grid bound suffices
    for (int m = 0; m < m_max; ++m) {
        for (int n = 0; n < m_max; ++n) {
            const double pref_log = 0.5 * lg(2 * m) + 0.5 * lg(2 * n) - lg(m) - lg(n);
            const double pref_mag =
                std::exp(pref_log + m * std::log(std::abs(ta) / 2.0 + 1e-300) +
                         n * std::log(std::abs(tb) / 2.0 + 1e-300));
            if (pref_mag < 1e-22) continue;
            double pref = std::exp(pref_log) * std::pow(-0.5 * ta, m) * std::pow(-0.5 * tb, n);
            for (int l = 0; l <= 2 * m; ++l) {
                const double c_l = (l % 2 == 0 ? 1.0 : -1.0) *
                                   std::exp(-lg(l) + 0.5 * (lg(2 * m) - lg(2 * m - l)) +
                                            0.5 * (lg(2 * n + l) - lg(2 * n)) +
                                            double(m - n - l) * ln2);
                for (int s = 0; s <= 2 * n + l; ++s) {
                    const int ia = 2 * m - l + s;
                    const int ib = 2 * n + l - s;
                    if (ia >= c.n_a || ib >= c.n_b) continue;
                    const double c_s =
                        std::exp(-lg(s) + 0.5 * (lg(2 * m - l + s) - lg(2 * m - l)) +
                                 0.5 * (lg(2 * n + l) - lg(2 * n + l - s)));
                    amps(c.index(ia, ib)) += pref * c_l * c_s;
                }
            }
        }
    }
    if (d.xi < 0.0) {
        for (int m = 1; m < c.n_a; m += 2)
            for (int n = 0; n < c.n_b; ++n) amps(c.index(m, n)) = -amps(c.index(m, n));
    }
    amps /= amps.norm();
    Eigen::VectorXcd out = amps.cast<Complex>();
    detail::fix_phase(out);
    return {c, out};
}

// <a^+a> = <b^+b> = (sinh^2 r_a + sinh^2 r_b)/2 in the ground state
// (degenerate case; derived with the pi/4 beam splitter).
inline double ground_excitations_analytic(const ModelParams& p) {
    if (!p.degenerate())
        throw validation_error("ground_excitations_analytic: requires omega_a = omega_b");
    NormalModeData d = model::normal_mode_analysis(p);
    const double sa = std::sinh(d.r_a), sb = std::sinh(d.r_b);
    return 0.5 * (sa * sa + sb * sb);
}

} // namespace usco::spectrum

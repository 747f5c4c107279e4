// model.hpp — Physical parameters, bare-mode Hamiltonians, normal-mode analysis
//
// Units: hbar = 1, mass mu = 1 in the bosonic frame, frequencies in units of a
// reference omega_r, time in 1/omega_r.

#pragma once

#include <array>
#include <cmath>
#include <string>

#include "usco/errors.hpp"
#include "usco/fock.hpp"
#include "usco/hilbert.hpp"

namespace usco::model {

using linalg::SparseOp;

// Mechanical picture: two mass-mu oscillators with a position-position
// spring eta*(x1-x2)^2. Never materialized as operators; mapped to the
// bosonic frame by from_mechanical.
struct MechanicalParams {
    double mu{1.0};
    double omega_1{1.0};
    double omega_2{1.0};
    double eta{0.0};

    void validate() const {
        if (!(mu > 0)) throw validation_error("MechanicalParams: mu must be > 0");
        if (!(omega_1 > 0) || !(omega_2 > 0))
            throw validation_error("MechanicalParams: omega_1, omega_2 must be > 0");
        if (eta < 0) throw validation_error("MechanicalParams: eta must be >= 0");
    }
};

// Bosonic frame: H = omega_a a^+a + omega_b b^+b + g (a^+ + a)(b^+ + b) [+ C].
// Normal modes stay real while 2|g| < sqrt(omega_a*omega_b); construction
// rejects parameters at or past that point unless allow_critical is set
// (truncated-numeric exploration only; the analytic path still refuses).
struct ModelParams {
    double omega_a{1.0};
    double omega_b{1.0};
    double g{0.0};
    double gamma_a{0.0};
    double gamma_b{0.0};
    bool include_constant{false};
    bool allow_critical{false};

    ModelParams() = default;

    ModelParams(double wa, double wb, double coupling, double ga = 0.0, double gb = 0.0,
                bool with_constant = false, bool critical_ok = false)
        : omega_a(wa), omega_b(wb), g(coupling), gamma_a(ga), gamma_b(gb),
          include_constant(with_constant), allow_critical(critical_ok) {
        validate();
    }

    double critical_coupling() const { return 0.5 * std::sqrt(omega_a * omega_b); }

    bool stable() const { return 2.0 * std::abs(g) < std::sqrt(omega_a * omega_b); }

    bool degenerate(double tol = 1e-12) const { return std::abs(omega_a - omega_b) <= tol; }

    void validate() const {
        if (!(omega_a > 0) || !(omega_b > 0))
            throw validation_error("ModelParams: omega_a, omega_b must be > 0");
        if (gamma_a < 0 || gamma_b < 0)
            throw validation_error("ModelParams: gamma_a, gamma_b must be >= 0");
        if (!stable() && !allow_critical)
            throw stability_error(
                "ModelParams: 2|g| >= sqrt(omega_a*omega_b); normal modes are not real "
                "(critical coupling g_c = " + std::to_string(critical_coupling()) +
                "). Set allow_critical for truncated-numeric exploration.",
                critical_coupling());
    }
};

// Everything the diagonalization yields analytically. beta[i] weights the
// i-th term of the expanded dissipator, in the order
//   D[a], D[b], D[a^+], D[b^+],
//   S[a,a]+S[a^+,a^+], S[b,b]+S[b^+,b^+],
//   S[a,b^+]+S[b,a^+], S[a,b]+S[b^+,a^+],
//   S[a^+,b^+]+S[b,a], S[a^+,b]+S[b^+,a].
// f[i] holds f_{i+1}, F[i] holds F_{i+1}.
struct NormalModeData {
    double theta{};
    double xi{};
    double omega_A{};
    double omega_B{};
    double r_a{};
    double r_b{};
    double g_a{};
    double g_b{};
    std::array<double, 8> f{};
    std::array<double, 8> F{};
    double alpha_1{};
    double alpha_2{};
    std::array<double, 10> beta{};
};

// omega_a = sqrt(omega_1^2 + 2 eta/mu), omega_b likewise, xi = 2 eta,
// g = -xi / (2 mu sqrt(omega_a omega_b)). Decay rates start at zero.
inline ModelParams from_mechanical(const MechanicalParams& p) {
    p.validate();
    double wa = std::sqrt(p.omega_1 * p.omega_1 + 2.0 * p.eta / p.mu);
    double wb = std::sqrt(p.omega_2 * p.omega_2 + 2.0 * p.eta / p.mu);
    double xi = 2.0 * p.eta;
    double g = -xi / (2.0 * p.mu * std::sqrt(wa * wb));
    return ModelParams(wa, wb, g);
}

inline OperatorMatrix build_hamiltonian(const ModelParams& p, FockCutoff c) {
    p.validate();
    auto [a, a_dag, b, b_dag] = hilbert::ladder_ops(c);
    OperatorMatrix h = p.omega_a * (a_dag * a) + p.omega_b * (b_dag * b) +
                       p.g * ((a_dag + a) * (b_dag + b));
    if (p.include_constant)
        h += 0.5 * (p.omega_a + p.omega_b) * OperatorMatrix::Identity(c.dim(), c.dim());
    return h;
}

inline SparseOp build_hamiltonian_sparse(const ModelParams& p, FockCutoff c) {
    p.validate();
    SparseOp a = hilbert::annihilator_a_sparse(c);
    SparseOp b = hilbert::annihilator_b_sparse(c);
    SparseOp h = p.omega_a * SparseOp(a.adjoint() * a) + p.omega_b * SparseOp(b.adjoint() * b) +
                 p.g * SparseOp(SparseOp(a.adjoint() + SparseOp(a)) *
                                SparseOp(b.adjoint() + SparseOp(b)));
    if (p.include_constant) {
        SparseOp id(c.dim(), c.dim());
        id.setIdentity();
        h = h + 0.5 * (p.omega_a + p.omega_b) * id;
    }
    return h;
}

// Corotating part only: conserves a^+a + b^+b.
inline OperatorMatrix build_rwa_hamiltonian(const ModelParams& p, FockCutoff c) {
    p.validate();
    auto [a, a_dag, b, b_dag] = hilbert::ladder_ops(c);
    OperatorMatrix h = p.omega_a * (a_dag * a) + p.omega_b * (b_dag * b) +
                       p.g * (a_dag * b + b_dag * a);
    if (p.include_constant)
        h += 0.5 * (p.omega_a + p.omega_b) * OperatorMatrix::Identity(c.dim(), c.dim());
    return h;
}

inline SparseOp build_rwa_hamiltonian_sparse(const ModelParams& p, FockCutoff c) {
    OperatorMatrix h = build_rwa_hamiltonian(p, c);
    return h.sparseView(1.0, 1e-300);
}

// Full analytic dataset of the diagonalizing transformation.
//
// Branch convention: 2*theta = atan2(2 xi/mu, omega_a^2 - omega_b^2), no
// further shift. This always places the larger normal frequency omega_A on
// the first mechanical mode, which is what makes every displayed coefficient
// formula (f_i, F_i, r_a/r_b, alpha, beta) hold verbatim on both signs of g.
// In the degenerate case it gives theta = +pi/4 for xi > 0 (the mechanical
// model, g < 0) and theta = -pi/4 for g > 0; observables are even in g.
inline NormalModeData normal_mode_analysis(const ModelParams& p) {
    if (!(p.omega_a > 0) || !(p.omega_b > 0))
        throw validation_error("normal_mode_analysis: frequencies must be > 0");
    NormalModeData d;
    const double wa = p.omega_a, wb = p.omega_b;
    d.xi = -2.0 * p.g * std::sqrt(wa * wb); // mu = 1
    const double diff2 = wa * wa - wb * wb;
    d.theta = 0.5 * std::atan2(2.0 * d.xi, diff2);
    const double disc = std::hypot(diff2, 2.0 * d.xi);
    const double wA2 = 0.5 * (wa * wa + wb * wb) + 0.5 * disc;
    const double wB2 = 0.5 * (wa * wa + wb * wb) - 0.5 * disc;
    if (wB2 <= 0.0)
        throw stability_error("normal_mode_analysis: omega_B^2 <= 0 at g = " + std::to_string(p.g) +
                                  " (critical coupling g_c = " + std::to_string(p.critical_coupling()) + ")",
                              p.critical_coupling());
    d.omega_A = std::sqrt(wA2);
    d.omega_B = std::sqrt(wB2);
    d.r_a = 0.5 * std::log(d.omega_A / wa);
    d.r_b = 0.5 * std::log(d.omega_B / wb);
    d.g_a = 0.25 * (wA2 / wa - wa);
    d.g_b = 0.25 * (wB2 / wb - wb);

    const double c = std::cos(d.theta), s = std::sin(d.theta);
    const double wA = d.omega_A, wB = d.omega_B;
    d.f = {0.5 * c / std::sqrt(wa * wA) * (wa + wA), 0.5 * c / std::sqrt(wa * wA) * (wa - wA),
           0.5 * s / std::sqrt(wa * wB) * (wa + wB), 0.5 * s / std::sqrt(wa * wB) * (wa - wB),
           0.5 * s / std::sqrt(wb * wA) * (wb + wA), 0.5 * s / std::sqrt(wb * wA) * (wb - wA),
           0.5 * c / std::sqrt(wb * wB) * (wb + wB), 0.5 * c / std::sqrt(wb * wB) * (wb - wB)};
    d.F = {0.5 * c / std::sqrt(wa * wA) * (wA + wa), 0.5 * c / std::sqrt(wa * wA) * (wA - wa),
           0.5 * s / std::sqrt(wb * wA) * (wA + wb), 0.5 * s / std::sqrt(wb * wA) * (wA - wb),
           0.5 * s / std::sqrt(wa * wB) * (wB + wa), 0.5 * s / std::sqrt(wa * wB) * (wB - wa),
           0.5 * c / std::sqrt(wb * wB) * (wB + wb), 0.5 * c / std::sqrt(wb * wB) * (wB - wb)};

    d.alpha_1 = (d.f[0] + d.f[1]) * (d.f[0] + d.f[1]) * p.gamma_a +
                (d.f[4] + d.f[5]) * (d.f[4] + d.f[5]) * p.gamma_b;
    d.alpha_2 = (d.f[2] + d.f[3]) * (d.f[2] + d.f[3]) * p.gamma_a +
                (d.f[6] + d.f[7]) * (d.f[6] + d.f[7]) * p.gamma_b;

    const auto& F = d.F;
    const double a1 = d.alpha_1, a2 = d.alpha_2;
    // Weights paired with the dissipator terms listed on NormalModeData.
    // Expanding alpha_1 D[F1 a + F2 a^+ - F3 b - F4 b^+] + alpha_2 D[F5 a + ...]
    // attaches F3/F7 to D[b] and F2/F6 to D[a^+].
    d.beta = {a1 * F[0] * F[0] + a2 * F[4] * F[4],  // D[a]
              a1 * F[2] * F[2] + a2 * F[6] * F[6],  // D[b]
              a1 * F[1] * F[1] + a2 * F[5] * F[5],  // D[a^+]
              a1 * F[3] * F[3] + a2 * F[7] * F[7],  // D[b^+]
              a1 * F[0] * F[1] + a2 * F[4] * F[5],  // S[a,a] + S[a^+,a^+]
              a1 * F[2] * F[3] + a2 * F[6] * F[7],  // S[b,b] + S[b^+,b^+]
              a2 * F[4] * F[6] - a1 * F[0] * F[2],  // S[a,b^+] + S[b,a^+]
              a2 * F[4] * F[7] - a1 * F[0] * F[3],  // S[a,b] + S[b^+,a^+]
              a2 * F[5] * F[6] - a1 * F[1] * F[2],  // S[a^+,b^+] + S[b,a]
              a2 * F[5] * F[7] - a1 * F[1] * F[3]}; // S[a^+,b] + S[b^+,a]
    return d;
}

// Analytic ground energy of the truncation-free model: E_{0,0} with the
// zero-point term, shifted down by C when the constant is excluded.
inline double ground_energy(const ModelParams& p) {
    NormalModeData d = normal_mode_analysis(p);
    double e = 0.5 * (d.omega_A + d.omega_B);
    if (!p.include_constant) e -= 0.5 * (p.omega_a + p.omega_b);
    return e;
}

} // namespace usco::model

// dynamics.hpp — Closed-system amplitude ODEs and Lindblad master equations
//
// Integrator: classic fixed-step RK4 for both the amplitude ODEs and the
// density-matrix master equations. The generators are time-independent and at
// most mildly stiff (frequencies up to omega_A plus small decay rates), so a
// fixed step keeps runs simple and bit-reproducible. The Liouvillian is
// applied functionally; no d^2 x d^2 matrix is ever formed.

#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "usco/errors.hpp"
#include "usco/fock.hpp"
#include "usco/hilbert.hpp"
#include "usco/linalg.hpp"
#include "usco/measures.hpp"
#include "usco/model.hpp"

namespace usco::dynamics {

using linalg::SparseOp;
using model::ModelParams;

enum class Engine { closed, micro, phenom };

inline const char* engine_name(Engine e) {
    switch (e) {
        case Engine::closed: return "closed";
        case Engine::micro: return "micro";
        case Engine::phenom: return "phenom";
    }
    return "?";
}

struct EvolutionConfig {
    double t_max{50.0};
    double dt{0.01};
    int record_every{50}; // steps between samples
    Engine engine{Engine::closed};
    bool use_rwa{false};  // closed engine only: drop the counter-rotating terms
};

struct TimeSeries {
    std::vector<double> times;
    std::vector<double> n_a;
    std::vector<double> n_b;
    std::vector<double> logneg;
    std::vector<double> norm_or_trace;
    std::vector<double> parity;
    std::vector<double> energy; // <H>; diagnostic, not part of the CSV contract
};

namespace detail {

inline void validate_config(const ModelParams& p, FockCutoff c, const EvolutionConfig& cfg) {
    if (!(cfg.dt > 0)) throw validation_error("EvolutionConfig: dt must be > 0");
    if (!(cfg.t_max >= cfg.dt)) throw validation_error("EvolutionConfig: t_max must be >= dt");
    if (cfg.record_every < 1)
        throw validation_error("EvolutionConfig: record_every must be >= 1");
    double w_max = std::max(p.omega_a, p.omega_b);
    if (p.stable()) w_max = std::max(w_max, model::normal_mode_analysis(p).omega_A);
    if (cfg.dt * w_max > 0.05 + 1e-12)
        throw validation_error("EvolutionConfig: dt too coarse, need dt*max(omega) <= 0.05 "
                               "(dt*omega = " + std::to_string(cfg.dt * w_max) + ")");
    // RK4 stays stable only while dt * (spectral radius) is inside its
    // imaginary-axis region; the radius grows with the cutoff.
    double radius = (c.n_a - 1) * p.omega_a + (c.n_b - 1) * p.omega_b +
                    4.0 * std::abs(p.g) * std::sqrt(double(c.n_a) * c.n_b);
    if (cfg.dt * radius > 2.6)
        throw validation_error("EvolutionConfig: dt unstable for this cutoff, need "
                               "dt*((n_a-1)*omega_a + (n_b-1)*omega_b + coupling) <= 2.6; "
                               "reduce dt to " + std::to_string(2.5 / radius) + " or below");
}

// Population in the last two levels of either mode.
inline double top_shell_population(const Eigen::VectorXcd& amps, FockCutoff c) {
    double pop = 0.0;
    for (int m = 0; m < c.n_a; ++m)
        for (int n = 0; n < c.n_b; ++n)
            if (m >= c.n_a - 2 || n >= c.n_b - 2) pop += std::norm(amps(c.index(m, n)));
    return pop;
}

inline double top_shell_population(const Eigen::MatrixXcd& rho, FockCutoff c) {
    double pop = 0.0;
    for (int m = 0; m < c.n_a; ++m)
        for (int n = 0; n < c.n_b; ++n)
            if (m >= c.n_a - 2 || n >= c.n_b - 2) pop += rho(c.index(m, n), c.index(m, n)).real();
    return pop;
}

inline void check_saturation(double pop, double t, FockCutoff c) {
    if (pop > 1e-6)
        throw cutoff_saturation_error(
            "evolution populated the top two Fock shells beyond 1e-6 at t = " +
                std::to_string(t) + " (population " + std::to_string(pop) +
                "); grow the cutoff beyond (" + std::to_string(c.n_a) + "," +
                std::to_string(c.n_b) + ")",
            pop, t);
}

struct DiagObs {
    Eigen::VectorXd number_a; // m at composite index
    Eigen::VectorXd number_b; // n at composite index
    Eigen::VectorXd parity;   // (-1)^(m+n)

    explicit DiagObs(FockCutoff c)
        : number_a(c.dim()), number_b(c.dim()), parity(c.dim()) {
        for (int m = 0; m < c.n_a; ++m)
            for (int n = 0; n < c.n_b; ++n) {
                int k = c.index(m, n);
                number_a(k) = m;
                number_b(k) = n;
                parity(k) = ((m + n) % 2 == 0) ? 1.0 : -1.0;
            }
    }
};

} // namespace detail

// ------------------------- closed-system evolution -------------------------

// Schroedinger evolution of the amplitudes A_{m,n}:
//   dA_{m,n}/dt = -i (omega_a m + omega_b n) A_{m,n}
//                 -i g [ sqrt((m+1)(n+1)) A_{m+1,n+1} + sqrt(mn) A_{m-1,n-1}
//                      + sqrt(m(n+1)) A_{m-1,n+1} + sqrt((m+1)n) A_{m+1,n-1} ],
// i.e. dpsi/dt = -i H psi with the sparse truncated H.
inline TimeSeries evolve_closed(const ModelParams& p, const StateVector& psi0,
                                const EvolutionConfig& cfg) {
    const FockCutoff c = psi0.cutoff;
    detail::validate_config(p, c, cfg);
    hilbert::require_normalized(psi0);

    SparseOp h = cfg.use_rwa ? model::build_rwa_hamiltonian_sparse(p, c)
                             : model::build_hamiltonian_sparse(p, c);
    const detail::DiagObs obs(c);

    const int n_steps = int(std::llround(cfg.t_max / cfg.dt));
    Eigen::VectorXcd psi = psi0.amps;
    Eigen::VectorXcd k1(c.dim()), k2(c.dim()), k3(c.dim()), k4(c.dim()), tmp(c.dim());
    const Complex mi(0, -1);

    TimeSeries ts;
    auto record = [&](int step) {
        const double t = step * cfg.dt;
        double pop_top = detail::top_shell_population(psi, c);
        detail::check_saturation(pop_top, t, c);
        ts.times.push_back(t);
        Eigen::VectorXd prob = psi.cwiseAbs2();
        ts.n_a.push_back(obs.number_a.dot(prob));
        ts.n_b.push_back(obs.number_b.dot(prob));
        ts.norm_or_trace.push_back(prob.sum());
        ts.parity.push_back(obs.parity.dot(prob));
        ts.energy.push_back((psi.adjoint() * (h * psi))(0).real());
        ts.logneg.push_back(measures::log_negativity(StateVector(c, psi)));
    };

    record(0);
    for (int step = 1; step <= n_steps; ++step) {
        k1.noalias() = mi * (h * psi);
        tmp.noalias() = psi + (0.5 * cfg.dt) * k1;
        k2.noalias() = mi * (h * tmp);
        tmp.noalias() = psi + (0.5 * cfg.dt) * k2;
        k3.noalias() = mi * (h * tmp);
        tmp.noalias() = psi + cfg.dt * k3;
        k4.noalias() = mi * (h * tmp);
        psi.noalias() += (cfg.dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (step % cfg.record_every == 0 || step == n_steps) record(step);
    }
    return ts;
}

// --------------------------- master equations ------------------------------

struct JumpOperator {
    double rate{};
    SparseOp op;
};

// Microscopic (normal-mode-derived) jump operators expressed in the bare
// frame: U^+ A U = F1 a + F2 a^+ - F3 b - F4 b^+ with rate alpha_1, and
// U^+ B U = F5 a + F6 a^+ + F7 b + F8 b^+ with rate alpha_2. Both annihilate
// the dressed ground state, so the zero-temperature steady state is |G><G|.
inline std::vector<JumpOperator> micro_jump_ops(const ModelParams& p, FockCutoff c) {
    model::NormalModeData d = model::normal_mode_analysis(p);
    SparseOp a = hilbert::annihilator_a_sparse(c);
    SparseOp b = hilbert::annihilator_b_sparse(c);
    SparseOp a_dag = a.adjoint();
    SparseOp b_dag = b.adjoint();
    const auto& F = d.F;
    SparseOp l_a = F[0] * a + F[1] * a_dag - F[2] * b - F[3] * b_dag;
    SparseOp l_b = F[4] * a + F[5] * a_dag + F[6] * b + F[7] * b_dag;
    return {{d.alpha_1, l_a}, {d.alpha_2, l_b}};
}

inline std::vector<JumpOperator> phenom_jump_ops(const ModelParams& p, FockCutoff c) {
    return {{p.gamma_a, hilbert::annihilator_a_sparse(c)},
            {p.gamma_b, hilbert::annihilator_b_sparse(c)}};
}

// S[o,o'] rho = o rho o' - (o' o rho + rho o' o)/2.
inline OperatorMatrix superop_s(const OperatorMatrix& o, const OperatorMatrix& o_prime,
                                const OperatorMatrix& rho) {
    OperatorMatrix oo = o_prime * o;
    return o * rho * o_prime - 0.5 * (oo * rho + rho * oo);
}

// D[o] rho = o rho o^+ - (o^+ o rho + rho o^+ o)/2 = S[o, o^+].
inline OperatorMatrix lindblad_d(const OperatorMatrix& o, const OperatorMatrix& rho) {
    return superop_s(o, o.adjoint(), rho);
}

// Full dissipative right-hand side of the microscopic master equation in the
// bare frame, assembled from the ten beta-weighted terms. Algebraically equal
// to alpha_1 U^+ D[A](U rho U^+) U + alpha_2 U^+ D[B](U rho U^+) U.
inline OperatorMatrix beta_dissipator(const ModelParams& p, const DensityMatrix& rho) {
    model::NormalModeData d = model::normal_mode_analysis(p);
    auto [a, a_dag, b, b_dag] = hilbert::ladder_ops(rho.cutoff);
    const auto& r = rho.entries;
    const auto& bt = d.beta;
    OperatorMatrix out = bt[0] * lindblad_d(a, r) + bt[1] * lindblad_d(b, r) +
                         bt[2] * lindblad_d(a_dag, r) + bt[3] * lindblad_d(b_dag, r);
    out += bt[4] * (superop_s(a, a, r) + superop_s(a_dag, a_dag, r));
    out += bt[5] * (superop_s(b, b, r) + superop_s(b_dag, b_dag, r));
    out += bt[6] * (superop_s(a, b_dag, r) + superop_s(b, a_dag, r));
    out += bt[7] * (superop_s(a, b, r) + superop_s(b_dag, a_dag, r));
    out += bt[8] * (superop_s(a_dag, b_dag, r) + superop_s(b, a, r));
    out += bt[9] * (superop_s(a_dag, b, r) + superop_s(b_dag, a, r));
    return out;
}

namespace detail {

struct PreparedJump {
    double rate;
    SparseOp l;
    SparseOp l_dag;
    SparseOp ldl; // L^+ L
};

inline TimeSeries evolve_master(const ModelParams& p, const DensityMatrix& rho0,
                                const EvolutionConfig& cfg,
                                const std::vector<JumpOperator>& jumps) {
    const FockCutoff c = rho0.cutoff;
    validate_config(p, c, cfg);
    hilbert::require_valid_density(rho0);

    SparseOp h = model::build_hamiltonian_sparse(p, c);
    std::vector<PreparedJump> prepared;
    for (const auto& j : jumps) {
        if (j.rate < 0) throw validation_error("evolve_master: negative jump rate");
        if (j.rate == 0.0) continue;
        SparseOp l_dag = j.op.adjoint();
        prepared.push_back({j.rate, j.op, l_dag, SparseOp(l_dag * j.op)});
    }
    const DiagObs obs(c);

    const int d = c.dim();
    Eigen::MatrixXcd rho = rho0.entries;
    Eigen::MatrixXcd k1(d, d), k2(d, d), k3(d, d), k4(d, d), tmp(d, d), work(d, d);
    const Complex mi(0, -1);

    auto rhs = [&](const Eigen::MatrixXcd& r, Eigen::MatrixXcd& out) {
        out.noalias() = mi * (h * r);
        out.noalias() -= mi * (r * h);
        for (const auto& j : prepared) {
            work.noalias() = j.l * r;
            out.noalias() += j.rate * (work * j.l_dag);
            out.noalias() -= (0.5 * j.rate) * (j.ldl * r);
            out.noalias() -= (0.5 * j.rate) * (r * j.ldl);
        }
    };

    const int n_steps = int(std::llround(cfg.t_max / cfg.dt));
    TimeSeries ts;
    auto record = [&](int step) {
        const double t = step * cfg.dt;
        check_saturation(top_shell_population(rho, c), t, c);
        Eigen::VectorXd diag = rho.diagonal().real();
        const double trace = diag.sum();
        if (std::abs(trace - 1.0) > 1e-6)
            throw std::runtime_error("evolve_master: trace drifted to " + std::to_string(trace) +
                                     " at t = " + std::to_string(t));
        double herm_dev = linalg::max_abs(rho - rho.adjoint());
        if (herm_dev > 1e-9)
            throw std::runtime_error("evolve_master: hermiticity broke (" +
                                     std::to_string(herm_dev) + ") at t = " + std::to_string(t));
        double min_eig = linalg::eigvalsh(rho).minCoeff();
        if (min_eig < -1e-6)
            throw std::runtime_error("evolve_master: positivity broke (min eig " +
                                     std::to_string(min_eig) + ") at t = " + std::to_string(t));
        ts.times.push_back(t);
        ts.n_a.push_back(obs.number_a.dot(diag));
        ts.n_b.push_back(obs.number_b.dot(diag));
        ts.norm_or_trace.push_back(trace);
        ts.parity.push_back(obs.parity.dot(diag));
        ts.energy.push_back((h * rho).eval().trace().real());
        ts.logneg.push_back(measures::log_negativity(DensityMatrix(c, rho)));
    };

    record(0);
    for (int step = 1; step <= n_steps; ++step) {
        rhs(rho, k1);
        tmp.noalias() = rho + (0.5 * cfg.dt) * k1;
        rhs(tmp, k2);
        tmp.noalias() = rho + (0.5 * cfg.dt) * k2;
        rhs(tmp, k3);
        tmp.noalias() = rho + cfg.dt * k3;
        rhs(tmp, k4);
        rho.noalias() += (cfg.dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (step % cfg.record_every == 0 || step == n_steps) record(step);
    }
    return ts;
}

} // namespace detail

// Microscopic master equation in the bare-mode frame:
//   drho/dt = -i[H, rho] + alpha_1 D[U^+AU] rho + alpha_2 D[U^+BU] rho.
inline TimeSeries evolve_master_micro(const ModelParams& p, const DensityMatrix& rho0,
                                      const EvolutionConfig& cfg) {
    return detail::evolve_master(p, rho0, cfg, micro_jump_ops(p, rho0.cutoff));
}

// Phenomenological master equation: bare-mode dissipators
//   drho/dt = -i[H, rho] + gamma_a D[a] rho + gamma_b D[b] rho.
inline TimeSeries evolve_master_phenom(const ModelParams& p, const DensityMatrix& rho0,
                                       const EvolutionConfig& cfg) {
    return detail::evolve_master(p, rho0, cfg, phenom_jump_ops(p, rho0.cutoff));
}

} // namespace usco::dynamics

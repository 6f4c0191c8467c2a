#pragma once

#include <optional>

#include "msqed/energy.hpp"

namespace msqed {

struct EigenOptions {
    double tol = 1e-8;  // ||H u - lambda u||
    int max_iter = 500;
    int block = 2;  // 2 resolves the Kramers-degenerate pair
};

struct EigenResult {
    double lambda = 0.0;
    SpinorField u;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> ritz_values;   // the block
    std::vector<SpinorField> block;    // Ritz vectors (warm-start state)
};

class EigenNonConvergence : public std::runtime_error {
  public:
    EigenNonConvergence(std::string msg, EigenResult best_iterate)
        : std::runtime_error(std::move(msg)), best(std::move(best_iterate)) {}
    EigenResult best;
};

/// Preconditioned block LOBPCG for the lowest eigenpair of the Pauli
/// operator; kinetic preconditioner (1 + |k|^2)^{-1}. Convergence is tested
/// on the lowest member; the second block vector (Kramers partner of the
/// seed unless warm-started through block_seed) resolves near-degeneracies.
/// Within a degenerate block the returned member is rotated so <u_V e1, u>
/// is real nonnegative when a reference state is supplied.
EigenResult lowest_eigenpair(const PauliOperator& H, const SpinorField& seed,
                             const EigenOptions& opt = {},
                             const RealField* phase_reference = nullptr,
                             const std::vector<SpinorField>* block_seed = nullptr);

/// Scalar electronic ground state of -Delta + V (positive, L2-normalized).
struct ElectronicGroundState {
    RealField u_V;
    double mu_V = 0.0;
    double residual = 0.0;
};
ElectronicGroundState electronic_ground_state(const SpectralBox& box, const RealField& V,
                                              double tol = 1e-9);

/// One damped Euler-Lagrange step
///   A <- Leray[(1-alpha) A + alpha RHS(A)],
/// RHS(A) = 32 pi^3 (-Delta)^{-1} g chi * [ J_u + (curl S_u)/2 - g (chi*A) rho_u ].
/// projection_effect (optional out) reports ||(1-P) RHS|| / ||RHS|| in H1dot.
VectorField update_A(const SpinorField& u, const VectorField& A_prev, const ModelConfig& cfg,
                     double alpha, std::optional<double> band_limit = std::nullopt,
                     double* projection_effect = nullptr);

struct ElResiduals {
    double residual_A = 0.0;  // ||A - P RHS(A)||_{H1dot}
    double residual_u = 0.0;  // ||H u - <u,Hu> u||_{L2}
    double phi_norm = 0.0;    // ||Pi_V^perp u||_{H1}
};
ElResiduals el_residuals(const SpinorField& u, const VectorField& A, const ModelConfig& cfg,
                         const ElectronicGroundState& gs,
                         std::optional<double> band_limit = std::nullopt);

struct SolverOptions {
    double tol_eig = 1e-8;
    double tol_A = 1e-7;       // H1dot of the EL defect
    double tol_energy = 1e-10; // relative energy stagnation
    double tol_virial = 1e-6;
    int max_outer = 500;
    int max_inner_A = 60;
    double damping = 0.5;
    int eig_max_iter = 500;
    bool throw_on_failure = true;
};

struct MinimizerResult {
    SpinorField u;
    VectorField A;
    double E = 0.0;
    double mu_V = 0.0;
    EnergyBreakdown breakdown;
    int outer_iterations = 0;
    std::vector<double> energy_history;
    double residual_A = 0.0;
    double residual_u = 0.0;
    double phi_norm = 0.0;
    std::array<double, 3> virial_vec{};
    double virial_norm = 0.0;
    double leray_effect = 0.0;  // projector effect size in the EL right-hand side
    double wall_time_s = 0.0;
    bool converged = false;
};

class MinimizeError : public std::runtime_error {
  public:
    MinimizeError(std::string msg, MinimizerResult diag)
        : std::runtime_error(std::move(msg)), diagnostics(std::move(diag)) {}
    MinimizerResult diagnostics;
};

struct MinimizeSeeds {
    std::optional<SpinorField> u0;
    std::optional<VectorField> A0;
};

/// Alternating minimization of E_V: eigen-solve in u, damped EL fixed point
/// in A, energy-backtracked for monotone descent. band_limit constrains A to
/// the class A_{<=Lambda} (the UV sweep).
MinimizerResult minimize(const ModelConfig& cfg, const SolverOptions& opt = {},
                         const MinimizeSeeds& seeds = {},
                         std::optional<double> band_limit = std::nullopt);

// --- experiment drivers (sweeps.cpp) ---------------------------------------

struct UvSweepResult {
    std::vector<double> lambdas;
    std::vector<double> energies;
    std::vector<MinimizerResult> runs;
    bool monotone = false;        // non-increasing within slack
    bool cauchy_shrinks = false;  // |E(L4) - E(L3)| < |E(L3) - E(L2)| on the last triple
};
UvSweepResult uv_sweep(const ModelConfig& cfg, const std::vector<double>& lambda_ladder,
                       const SolverOptions& opt = {});

struct ExpansionReport {
    std::vector<double> g_values;
    std::vector<double> energies;
    double mu_V = 0.0;
    double c2_fit = 0.0;        // Richardson-extrapolated coefficient of g^2
    int c2_sign = 0;
    double c2_predicted = 0.0;  // (32/3) pi^3 int (chi-hat * u_V^2)^2 per unit g^2
    double c2_response = 0.0;   // independent second-order response oracle
    double remainder_slope = 0.0;     // log-log slope of |E - mu - c2 g^2|
    double remainder_bound = 0.0;     // fitted quartic coefficient magnitude
    std::vector<double> phi_norms;
    std::vector<double> a_norms;       // ||A_gs||_{H1dot}
    std::vector<double> a1_deviation;  // ||A_gs - A^{[1]}||_{H1dot}
    std::vector<double> omega_dev;     // | |omega_gs|^2 - 1 |
    double phi_slope = 0.0;
    double a_slope = 0.0;
    double a1_slope = 0.0;
    double omega_slope = 0.0;
};
ExpansionReport expansion_fit(const ModelConfig& cfg, const std::vector<double>& g_ladder,
                              const SolverOptions& opt = {});

/// Independent second-order coefficient: exact quadratic response of the
/// discrete functional around (u_V (x) c, A = 0),
///   c2 = -8 pi^3 (2 pi)^{-3} w_k sum chi^2 |k ^ What|^2 / |k|^2,  W = u_V^2 z-hat.
double expansion_response_coefficient(const ModelConfig& cfg, const RealField& u_V);
/// The expansion statement's coefficient (32/3) pi^3 int (chi-hat*u_V^2)^2.
double expansion_predicted_coefficient(const ModelConfig& cfg, const RealField& u_V);

struct A1Comparison {
    double a_h1 = 0.0;         // ||A_gs||_{H1dot}
    double deviation_h1 = 0.0; // ||A_gs - A^{[1]}||_{H1dot}
    std::array<double, 3> omega{};
    double omega_norm_sq = 0.0;
};
A1Comparison a1_comparison(const SpinorField& u, const VectorField& A, const ModelConfig& cfg,
                           const ElectronicGroundState& gs);

struct GapCheckResult {
    double E_V = 0.0;
    double E_V1 = 0.0;
    double gap = 0.0;
    double mu_V = 0.0;
    MinimizerResult run_V;
    MinimizerResult run_V1;
    bool v2_zero = false;
};
GapCheckResult gap_check(const ModelConfig& cfg, const SolverOptions& opt = {});

struct UniquenessProbe {
    std::vector<double> pairwise_distances;  // H1dot
    double max_distance = 0.0;
    bool contraction_suspect = false;  // a fixed-point iteration failed to shrink
};
UniquenessProbe uniqueness_probe(const SpinorField& u, const ModelConfig& cfg, int n_seeds,
                                 std::uint64_t seed, double fp_tol = 1e-9);

struct DecayFit {
    double gamma = 0.0;  // exponential rate from log radial averages
    double r_lo = 0.0, r_hi = 0.0;
    int n_shells = 0;
    bool super_exponential = false;
    std::vector<double> radii;
    std::vector<double> log_means;
};
/// Least-squares slope of log <|u|>_shell over [L/8, 3L/8]; throws when the
/// dynamic range is insufficient (e.g. constant fields).
DecayFit decay_fit(const SpinorField& u);

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace msqed

#pragma once

#include <vector>

#include "msqed/quasicl.hpp"

namespace msqed {

/// Dense complex matrix, column-major; the desk-scale Fock dimensions make
/// dense storage the simplest correct choice.
struct DenseMatrix {
    int n = 0;
    std::vector<Complex> a;  // a[col * n + row]

    explicit DenseMatrix(int dim = 0) : n(dim), a(static_cast<std::size_t>(dim) * dim) {}
    Complex& at(int r, int c) { return a[static_cast<std::size_t>(c) * n + r]; }
    Complex at(int r, int c) const { return a[static_cast<std::size_t>(c) * n + r]; }
    std::vector<Complex> apply(const std::vector<Complex>& v) const;
    DenseMatrix adjoint() const;
    DenseMatrix multiply(const DenseMatrix& other) const;
};

/// Bosonic Fock space over C^M truncated at total occupation n_max.
/// Basis states are occupation tuples in graded lexicographic order.
class TruncatedFock {
  public:
    TruncatedFock(int M, int n_max);

    int modes() const { return M_; }
    int n_max() const { return n_max_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<int>& occupation(int idx) const { return basis_[idx]; }
    int total_occupation(int idx) const { return totals_[idx]; }

    // sparse actions (exact within the truncation; a* clips the top level)
    std::vector<Complex> apply_annihilate(int mode, const std::vector<Complex>& v) const;
    std::vector<Complex> apply_create(int mode, const std::vector<Complex>& v) const;
    std::vector<Complex> apply_a(const std::vector<Complex>& h,
                                 const std::vector<Complex>& v) const;  // sum conj(h_m) a_m
    std::vector<Complex> apply_a_dagger(const std::vector<Complex>& h,
                                        const std::vector<Complex>& v) const;
    std::vector<Complex> apply_dgamma(const std::vector<double>& omega,
                                      const std::vector<Complex>& v) const;

    // dense operator matrices
    DenseMatrix annihilate_matrix(int mode) const;
    DenseMatrix create_matrix(int mode) const;
    DenseMatrix a_matrix(const std::vector<Complex>& h) const;
    DenseMatrix a_dagger_matrix(const std::vector<Complex>& h) const;
    DenseMatrix field_matrix(const std::vector<Complex>& h) const;  // (a + a*)/sqrt(2)
    DenseMatrix dgamma_matrix(const std::vector<double>& omega) const;

    /// Truncated coherent vector exp(-|f|^2/2) sum f^{(x)n}/sqrt(n!).
    std::vector<Complex> coherent_vector(const std::vector<Complex>& f) const;
    /// Poisson tails: sum_{n > n_max} e^{-|f|^2} |f|^{2n}/n! and the
    /// occupation-weighted variant sum n (...).
    double coherent_tail(const std::vector<Complex>& f) const;
    double coherent_tail_weighted(const std::vector<Complex>& f) const;

    int index_of(const std::vector<int>& occ) const;  // -1 if outside truncation

  private:
    int M_;
    int n_max_;
    std::vector<std::vector<int>> basis_;
    std::vector<int> totals_;
    std::vector<std::size_t> codes_;  // sorted encodings for lookup
    std::vector<int> code_order_;
    std::size_t encode(const std::vector<int>& occ) const;
};

Complex vec_inner(const std::vector<Complex>& a, const std::vector<Complex>& b);
double vec_norm(const std::vector<Complex>& a);

// --- oracle checks ----------------------------------------------------------

struct CoherentEigenReport {
    double residual = 0.0;    // ||a(h) Psi_f - <h,f> Psi_f||
    double tail_bound = 0.0;  // computable truncation bound
    Complex eigenvalue{};     // <h,f>
};
CoherentEigenReport coherent_eigen_check(const TruncatedFock& fock, const std::vector<Complex>& f,
                                         const std::vector<Complex>& h);

struct CoherentExpectationReport {
    double phi_expectation = 0.0;     // <Psi_f, Phi(h) Psi_f>, real part
    double dgamma_expectation = 0.0;  // <Psi_f, dGamma(omega) Psi_f>
    double dgamma_analytic = 0.0;     // <f, omega f>
    double phi_two_re = 0.0;          // 2 Re<h,f>
    double phi_sqrt2_re = 0.0;        // sqrt(2) Re<h,f>
    double tail_bound = 0.0;
    /// Which prefactor the exact computation matches for Phi = (a+a*)/sqrt(2).
    bool sqrt2_factor_matches = false;
};
CoherentExpectationReport coherent_expectation_check(const TruncatedFock& fock,
                                                     const std::vector<Complex>& f,
                                                     const std::vector<Complex>& h,
                                                     const std::vector<double>& omega);

struct FieldEstimateSlack {
    double slack_annihilation = 0.0;  // ||w^{-1/2}h||^2 ||dG(w)^{1/2}Psi||^2 - ||a(h)Psi||^2
    double slack_creation = 0.0;      // ... + ||h||^2 ||Psi||^2 - ||a*(h)Psi||^2
};
/// Squared-norm forms of the standard field estimates; omega must be
/// positive (throws otherwise).
FieldEstimateSlack field_estimate_check(const TruncatedFock& fock, const std::vector<double>& omega,
                                        const std::vector<Complex>& h,
                                        const std::vector<Complex>& psi);

/// Retained photon mode for the tiny reduction: one grid wavevector.
struct RetainedMode {
    int i = 0, j = 0, l = 0;  // k-grid indices, not all zero
};

struct TinyReductionReport {
    double fock_energy = 0.0;       // <u x Psi_f, H u x Psi_f> / ||u x Psi_f||^2
    double formula_energy = 0.0;    // constant + <f-,|k|f-> + E(u, A_f)
    double discrepancy = 0.0;
    double tail_bound = 0.0;
    double constant = 0.0;          // normal-ordering constant over the retained set
};

/// Exact truncated-Fock evaluation of the full QED energy of u (x) Psi_f
/// with the coupling restricted to the retained modes (2 polarizations
/// each), compared against the coherent-state reduction formula restricted
/// to the same modes. f_amplitudes holds f_{kappa,tau} in coefficient
/// normalization, laid out mode-major: (kappa0: tau1, tau2), (kappa1: ...).
TinyReductionReport tiny_reduction_check(const SpinorField& u, const ModelConfig& cfg,
                                         const std::vector<RetainedMode>& modes,
                                         const std::vector<Complex>& f_amplitudes, int n_max);

}  // namespace msqed

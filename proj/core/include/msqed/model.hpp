#pragma once

#include <optional>
#include <string>

#include "msqed/multiplier.hpp"

namespace msqed {

enum class PotentialKind { harmonic, softened_coulomb, spectral_coulomb, gaussian_well, custom };

/// External potential with the V = V1 + V2 decomposition (V1 >= 0, V2 local).
/// Built-in kinds are sampled with the min-image radius so V(x) = V(-x) holds
/// exactly on the grid.
struct Potential {
    PotentialKind kind = PotentialKind::harmonic;
    RealField V;
    RealField V1;
    RealField V2;
    /// Candidate constants for V_- <= a sqrt(-Delta) + b (sampled, not certified).
    double a_bound = 0.0;
    double b_bound = 0.0;
    double split_radius = 0.0;  // R of the eta/eta-tilde pair; 0 means V1 = V_+

    static Potential harmonic(const SpectralBox& box, double omega0, double R = -1.0);
    static Potential softened_coulomb(const SpectralBox& box, double c, double a_soft,
                                      double R = -1.0);
    /// Coulomb sampled through the multiplier -4 pi c/|k|^2 (zero mode 0).
    static Potential spectral_coulomb(const SpectralBox& box, double c, double R = -1.0);
    static Potential gaussian_well(const SpectralBox& box, double depth, double width);
    /// Custom samples; rejected unless even on the grid.
    static Potential custom(const SpectralBox& box, RealField samples, double R = -1.0);

    double even_residual() const;
    double v1_min() const;
    double decomposition_residual() const;  // max |V1 + V2 - V|
};

enum class CutoffKind { one, sharp, gaussian, custom };

/// Even cutoff profile chi(k) with the chi = chi1 + chi2 split
/// (chi1/|k| in L^2, chi2/|k| in L^{3,inf}).
struct CutoffProfile {
    CutoffKind kind = CutoffKind::one;
    double Lambda = 0.0;  // sharp
    double sigma = 0.0;   // gaussian
    std::function<double(double)> custom_chi;   // radial
    std::function<double(double)> custom_chi1;  // L^2-tagged part

    double chi(double k) const;
    double chi1(double k) const;
    double chi2(double k) const { return chi(k) - chi1(k); }
    bool radial() const { return kind != CutoffKind::custom || custom_radial_hint; }
    bool custom_radial_hint = true;

    FourierMultiplier multiplier(const SpectralBox& box) const;
    /// ||chi1/|k|||_{L^2}: analytic for built-in kinds, grid quadrature otherwise.
    double chi1_over_k_l2(const SpectralBox& box) const;
    /// ||chi2/|k|||_{L^{3,inf}}: analytic for built-in kinds, Lorentz-lab
    /// estimate otherwise.
    double chi2_over_k_weak_l3(const SpectralBox& box) const;
    /// Sum-space estimate for ||chi/|k|||_{L^2 + L^{3,inf}} via the declared split.
    double chi_over_k_sum_norm(const SpectralBox& box) const;

    static CutoffProfile one();
    static CutoffProfile sharp(double Lambda);
    static CutoffProfile gaussian(double sigma);
};

struct CouplingConfig {
    double g = 0.0;
    std::optional<double> Lambda;  // UV parameter; must be > 0 when present

    void validate() const {
        if (Lambda && !(*Lambda > 0.0))
            throw std::invalid_argument("CouplingConfig: Lambda must be positive");
    }
};

/// Full physical configuration on a box.
struct ModelConfig {
    SpectralBox box;
    Potential potential;
    CutoffProfile cutoff;
    CouplingConfig coupling;

    double g_chi() const { return std::abs(coupling.g) * cutoff.chi_over_k_sum_norm(box); }
};

/// A in the Coulomb-gauge class: mean-zero and discretely divergence-free.
struct VectorPotential {
    VectorField A;

    VectorPotential() = default;
    explicit VectorPotential(const SpectralBox& box) : A(box) {}
    /// Leray-project arbitrary data into the class.
    static VectorPotential project(const VectorField& raw) {
        VectorPotential out;
        out.A = leray_project(raw);
        return out;
    }
    const SpectralBox& box() const { return A.box; }
};

/// Kramers conjugation (u, A) -> (sigma_2 conj(u(-x)), A(-x)).
std::pair<SpinorField, VectorField> kramers_conjugate(const SpinorField& u, const VectorField& A);
SpinorField kramers_spinor(const SpinorField& u);
RealField reflect(const RealField& f);
VectorField reflect(const VectorField& f);

struct HypothesisReport {
    double potential_even_residual = 0.0;
    double chi_even_residual = 0.0;
    double v1_min = 0.0;
    double decomposition_residual = 0.0;
    double chi1_over_k_l2 = 0.0;
    double chi2_over_k_weak_l3 = 0.0;
    double a_candidate = 0.0;
    double b_candidate = 0.0;
    double g_chi = 0.0;
    double smallness_lhs = 0.0;  // 32 pi^3 a C^2 g^2 ||chi2/|k|||^2
    bool smallness_ok = true;
    bool structural_ok = true;  // evenness + decomposition + V1 >= 0
    std::string note;
};

/// Grid-level feasibility checks for the hypotheses on V and chi. The
/// smallness check uses the empirical constant C passed in (from lorentz-lab).
HypothesisReport hypothesis_report(const ModelConfig& cfg, double empirical_C = 1.0);

/// Smooth localization pair eta^2 + eta~^2 = 1. profile = quintic C^2
/// smoothstep (potential splitting) or a Gaussian-spectrum erf ramp in r^2
/// (spectrally clean, used by the IMS identity check).
enum class LocalizationProfile { quintic, spectral };

struct Localization {
    RealField eta;
    RealField eta_tilde;
    RealField grad_sq_sum;  // |grad eta|^2 + |grad eta~|^2, spectral gradients
    double R = 0.0;

    static Localization build(const SpectralBox& box, double R,
                              LocalizationProfile profile = LocalizationProfile::quintic);
};

}  // namespace msqed

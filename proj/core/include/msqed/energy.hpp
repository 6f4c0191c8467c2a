#pragma once

#include "msqed/model.hpp"

namespace msqed {

/// Five-part split of the energy functional:
///   total = e1 + e2/(32 pi^3) - 2 g Re(e3) + g^2 e4 - g e5
/// with e1 = <u, H_V u>, e2 = ||A||^2_{H1dot}, e3 = <-i grad u, (chi*A) u>,
/// e4 = <u, (chi*A)^2 u>, e5 = <u, sigma.(chi*(curl A)) u>.
struct EnergyBreakdown {
    double e1 = 0.0;
    double e2 = 0.0;
    Complex e3{};
    double e4 = 0.0;
    double e5 = 0.0;
    double total = 0.0;
    /// Same energy through ||sigma.(-i grad - g chi*A) u||^2 + <u,Vu> + field
    /// term; an independent evaluation path kept for cross-checks.
    double pauli_total = 0.0;
};

/// H_{V,A} = (-i grad - g chi*A)^2 - g chi*sigma.(curl A) + V. The additive
/// field constant ||A||^2_{H1dot}/(32 pi^3) is tracked separately in
/// field_energy, not folded into apply().
class PauliOperator {
  public:
    PauliOperator(const ModelConfig& cfg, const VectorField& A);
    /// V-only variant (g = 0 shortcut).
    PauliOperator(const SpectralBox& box, const RealField& V);

    SpinorField apply(const SpinorField& u) const;
    const VectorField& chi_A() const { return chi_A_; }
    const VectorField& chi_B() const { return chi_B_; }
    double field_energy() const { return field_energy_; }
    double g() const { return g_; }
    const RealField& V() const { return V_; }
    const SpectralBox& box() const { return box_; }

  private:
    SpectralBox box_;
    RealField V_;
    VectorField chi_A_;  // chi-hat * A
    VectorField chi_B_;  // chi-hat * curl A
    double g_ = 0.0;
    double field_energy_ = 0.0;
};

/// Evaluate E_V(u, A) for the configuration. Throws if u is not normalized
/// or A has a divergence defect beyond tolerance.
EnergyBreakdown energy(const SpinorField& u, const VectorField& A, const ModelConfig& cfg);
/// Relaxed entry point used by samplers (no admissibility checks).
EnergyBreakdown energy_unchecked(const SpinorField& u, const VectorField& A,
                                 const ModelConfig& cfg);

/// UV-cutoff energy E_{V,Lambda}: chi replaced by chi 1_{|k|<=Lambda}.
/// Satisfies the discrete identity
///   E_Lambda(u,A) = E(u, A_{<=Lambda}) + ||A_{>Lambda}||^2_{H1dot}/(32 pi^3).
EnergyBreakdown energy_cutoff(const SpinorField& u, const VectorField& A, const ModelConfig& cfg);

/// |LHS - RHS| of the magnetic IMS localization identity for the effective
/// magnetic potential g chi*A, together with the LHS scale.
struct ImsResult {
    double residual = 0.0;
    double scale = 0.0;  // ||(-i grad - g chi*A) u||^2
};
ImsResult ims_check(const SpinorField& u, const VectorField& A, const ModelConfig& cfg, double R,
                    LocalizationProfile profile = LocalizationProfile::spectral);

/// Kinetic-momentum expectation <u, (-i grad - g chi*A) u> (a real 3-vector;
/// vanishes at minimizers).
std::array<double, 3> virial(const SpinorField& u, const VectorField& A, const ModelConfig& cfg);

}  // namespace msqed

#pragma once

#include "msqed/energy.hpp"

namespace msqed {

/// One-photon parameter: a transverse complex 3-vector function on the k
/// grid (k = 0 excluded), with the conjugate-split caches
///   f+(k) = (f(k) + conj(f(-k)))/2,   f-(k) = (f(k) - conj(f(-k)))/2.
/// Inner products are w_k-weighted sums (the dk measure).
struct PhotonParameter {
    SpectralBox box;
    std::array<ComplexField, 3> f;
    std::array<ComplexField, 3> f_plus;
    std::array<ComplexField, 3> f_minus;

    /// Projects onto k-perp at every mode, zeroes k = 0 and Nyquist, splits.
    static PhotonParameter from_components(const SpectralBox& box,
                                           const std::array<ComplexField, 3>& raw);
    static PhotonParameter zero(const SpectralBox& box);

    double transversality_defect() const;  // sup |k.f| / |k||f|
    void refresh_split();
};

/// Pairing <a, w(|k|) b> = w_k sum_k w(|k|) conj(a).b; w = 1 or |k|.
Complex photon_inner(const std::array<ComplexField, 3>& a, const std::array<ComplexField, 3>& b,
                     const std::function<double(double)>& weight);
double photon_norm_sq(const std::array<ComplexField, 3>& a);

/// A_f = 2 F(conj(f+) |k|^{-1/2}): on stored coefficients
/// Ahat(k) = 16 pi^3 |k|^{-1/2} f+(k). Real, divergence-free, mean-zero.
VectorField potential_from_parameter(const PhotonParameter& f);

/// Inverse map with f- = 0: f(k) = (16 pi^3)^{-1} |k|^{1/2} Ahat(k).
/// Throws on divergence defect. Satisfies <f+,|k| f+> = ||A||^2/(32 pi^3).
PhotonParameter parameter_from_potential(const VectorField& A);

/// Normal-ordering constant 2 g^2 ||chi_Lambda / sqrt(|k|)||^2_{L2}
/// discretized as 2 g^2 w_k sum_{0<|k|<=Lambda} chi^2/|k| (k = 0 dropped).
/// Diverges with the band when chi has no decay and no Lambda is given; the
/// flag marks that the reported value is band-limited.
struct NormalOrderingConstant {
    double value = 0.0;
    bool band_limited = false;
};
NormalOrderingConstant normal_ordering_constant(const ModelConfig& cfg);

/// Energy of the product state u (x) Psi_f:
///   constant + <f-, |k| f-> + E_V(u, A_f).
struct ProductStateEnergy {
    double constant = 0.0;
    double f_minus_energy = 0.0;
    EnergyBreakdown electron;  // E_V(u, A_f)
    double total = 0.0;
};
ProductStateEnergy product_state_energy(const SpinorField& u, const PhotonParameter& f,
                                        const ModelConfig& cfg);

/// Fixed polarization frame e1 ~ k x z-hat, e2 = k-hat x e1 (x-hat fallback
/// on the z axis); used for I/O and by the Fock-space reduction.
std::array<std::array<double, 3>, 2> polarization_frame(double kx, double ky, double kz);

}  // namespace msqed

#pragma once

#include <functional>

#include "msqed/fft.hpp"
#include "msqed/grid.hpp"

namespace msqed {

enum class Parity { even, odd, none };

/// Fourier multiplier m(k) sampled on the k grid. Application is
/// inverse(m . forward(f)); under the convolution convention of the energy
/// functional this realizes chi-hat * f for m(k) = chi(k). Every application
/// zeroes the Nyquist planes of the output so that real fields keep their
/// conjugate-symmetric pairing.
struct FourierMultiplier {
    SpectralBox box;
    std::vector<Complex> m;
    Parity parity = Parity::none;

    FourierMultiplier() = default;

    /// Sample a scalar symbol fn(kx,ky,kz). Throws if any sample is NaN.
    static FourierMultiplier from_symbol(const SpectralBox& box,
                                         const std::function<Complex(double, double, double)>& fn,
                                         Parity parity);
    static FourierMultiplier from_radial(const SpectralBox& box,
                                         const std::function<double(double)>& fn);

    static FourierMultiplier one(const SpectralBox& box);
    static FourierMultiplier band_limit(const SpectralBox& box, double Lambda);  // 1_{|k|<=Lambda}
    static FourierMultiplier band_tail(const SpectralBox& box, double Lambda);   // 1 - 1_{|k|<=Lambda}
    /// |k|^s with the k=0 sample set to 0 (torus convention for s<0, and the
    /// seminorm weight for s>0).
    static FourierMultiplier power(const SpectralBox& box, double s);
    static FourierMultiplier inverse_laplacian(const SpectralBox& box);  // |k|^{-2}, zero mode 0

    bool is_real() const;
};

FourierMultiplier operator*(const FourierMultiplier& a, const FourierMultiplier& b);

ComplexField apply_multiplier(const FourierMultiplier& m, const ComplexField& f);
/// Real fields require an even real multiplier to stay real; realness of the
/// output is taken, not checked (tests pin the imaginary residue).
RealField apply_multiplier(const FourierMultiplier& m, const RealField& f);
VectorField apply_multiplier(const FourierMultiplier& m, const VectorField& f);
SpinorField apply_multiplier(const FourierMultiplier& m, const SpinorField& f);

void zero_nyquist(ComplexField& fk);
/// Remove Nyquist-plane content from a real-space field (one transform round
/// trip). Pointwise products re-create such content; the operator algebra
/// lives on the Nyquist-free subspace.
void project_nyquist(SpinorField& u);

// --- spectral calculus ----------------------------------------------------

/// Coefficient-side derivative bundle: one forward transform, three inverse.
std::array<ComplexField, 3> gradient(const ComplexField& f);
std::array<SpinorField, 3> gradient(const SpinorField& f);
/// -i d_j u for j = 0,1,2.
std::array<SpinorField, 3> momentum(const SpinorField& f);

VectorField curl(const VectorField& A);
RealField divergence(const VectorField& A);
/// Sup_k |k . Ahat| normalized by the H^1-type size; 0 for divergence-free.
double divergence_defect(const VectorField& A);

/// Projection onto mean-zero divergence-free fields: symbol I - k k^T/|k|^2,
/// zero mode removed.
VectorField leray_project(const VectorField& A);

/// Homogeneous Sobolev norm: ||f||^2 = (2 pi)^{-3} w_k sum |k|^{2s} |fhat|^2.
/// For s < 0 the field must be mean-zero (throws otherwise).
double sobolev_norm(const ComplexField& f, double s);
double sobolev_norm(const RealField& f, double s);
double sobolev_norm(const VectorField& f, double s);
double sobolev_norm(const SpinorField& f, double s);
double sobolev_norm_sq(const VectorField& f, double s);

double h1_norm_sq(const SpinorField& u);  // ||u||^2 + ||grad u||^2

/// Iterate over all modes: fn(flat_index, kx, ky, kz, nyquist).
template <typename F>
void for_each_mode(const SpectralBox& box, F&& fn) {
    const int n = box.N;
    std::size_t q = 0;
    for (int i = 0; i < n; ++i) {
        const double kx = box.k_axis(i);
        const bool nyx = box.nyquist_index(i);
        for (int j = 0; j < n; ++j) {
            const double ky = box.k_axis(j);
            const bool nyy = nyx || box.nyquist_index(j);
            for (int l = 0; l < n; ++l, ++q) {
                fn(q, kx, ky, box.k_axis(l), nyy || box.nyquist_index(l));
            }
        }
    }
}

}  // namespace msqed

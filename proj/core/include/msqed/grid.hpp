#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace msqed {

using Real = double;
using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Periodic computational box [-L/2, L/2)^3 with N points per axis and the
/// dual wave-number grid k = 2*pi*m/L, m in [-N/2, N/2). Quadrature is the
/// rectangle rule: w_x = dx^3 in real space, w_k = (2*pi/L)^3 in k space.
struct SpectralBox {
    double L = 1.0;
    int N = 8;

    SpectralBox() = default;
    SpectralBox(double length, int points) : L(length), N(points) {
        if (!(L > 0.0)) throw std::invalid_argument("SpectralBox: L must be positive");
        if (N < 8 || N % 2 != 0) throw std::invalid_argument("SpectralBox: N must be even and >= 8");
    }

    double dx() const { return L / N; }
    double wx() const { return dx() * dx() * dx(); }
    double dk() const { return 2.0 * kPi / L; }
    double wk() const { return dk() * dk() * dk(); }
    std::size_t size() const { return static_cast<std::size_t>(N) * N * N; }
    /// Largest resolved |k| per axis (the Nyquist magnitude pi*N/L).
    double k_band() const { return kPi * N / L; }

    /// Signed integer frequency for storage index i (FFT layout); i == N/2 is
    /// the Nyquist plane and maps to -N/2.
    int mode(int i) const { return (i <= N / 2 - 1) ? i : i - N; }
    double k_axis(int i) const { return dk() * mode(i); }
    bool nyquist_index(int i) const { return i == N / 2; }
    double x_axis(int i) const { return -0.5 * L + dx() * i; }
    /// Index map realizing x -> -x (equivalently k -> -k) on the grid.
    int negate_index(int i) const { return i == 0 ? 0 : N - i; }

    std::size_t idx(int i, int j, int l) const {
        return (static_cast<std::size_t>(i) * N + j) * N + l;
    }

    bool operator==(const SpectralBox& o) const { return L == o.L && N == o.N; }
    bool operator!=(const SpectralBox& o) const { return !(*this == o); }
};

inline void require_same_box(const SpectralBox& a, const SpectralBox& b, const char* what) {
    if (a != b) throw std::invalid_argument(std::string(what) + ": mismatched SpectralBox");
}

struct RealField {
    SpectralBox box;
    std::vector<double> v;

    RealField() = default;
    explicit RealField(const SpectralBox& b, double fill = 0.0) : box(b), v(b.size(), fill) {}
    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }
    std::size_t size() const { return v.size(); }
};

/// Complex scalar samples; used both for real-space values and for spectral
/// coefficients (the owner tracks which side of the transform it is on).
struct ComplexField {
    SpectralBox box;
    std::vector<Complex> v;

    ComplexField() = default;
    explicit ComplexField(const SpectralBox& b, Complex fill = {}) : box(b), v(b.size(), fill) {}
    Complex& operator[](std::size_t i) { return v[i]; }
    const Complex& operator[](std::size_t i) const { return v[i]; }
    std::size_t size() const { return v.size(); }
};

/// Three-component real vector field (A, B, currents, ...).
struct VectorField {
    SpectralBox box;
    std::array<std::vector<double>, 3> c;

    VectorField() = default;
    explicit VectorField(const SpectralBox& b) {
        box = b;
        for (auto& comp : c) comp.assign(b.size(), 0.0);
    }
};

/// Two-component complex field: the electron state.
struct SpinorField {
    SpectralBox box;
    std::array<std::vector<Complex>, 2> c;

    SpinorField() = default;
    explicit SpinorField(const SpectralBox& b) {
        box = b;
        for (auto& comp : c) comp.assign(b.size(), Complex(0.0, 0.0));
    }
};

// --- quadrature-weighted inner products and norms ------------------------

double l2_inner_real(const RealField& a, const RealField& b);
Complex l2_inner(const ComplexField& a, const ComplexField& b);
Complex l2_inner(const SpinorField& a, const SpinorField& b);
double l2_norm_sq(const ComplexField& a);
double l2_norm_sq(const SpinorField& a);
double l2_norm_sq(const RealField& a);
double l2_norm_sq(const VectorField& a);
inline double l2_norm(const SpinorField& a) { return std::sqrt(l2_norm_sq(a)); }
inline double l2_norm(const ComplexField& a) { return std::sqrt(l2_norm_sq(a)); }
inline double l2_norm(const RealField& a) { return std::sqrt(l2_norm_sq(a)); }

/// u <- u / ||u||_{L2}; throws on the zero field.
void normalize(SpinorField& u);

// elementary linear algebra on fields
void axpy(Complex alpha, const SpinorField& x, SpinorField& y);  // y += alpha x
void scale(SpinorField& x, Complex alpha);
void scale(VectorField& x, double alpha);
void axpy(double alpha, const VectorField& x, VectorField& y);

SpinorField operator+(const SpinorField& a, const SpinorField& b);
SpinorField operator-(const SpinorField& a, const SpinorField& b);
VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);

// pointwise helpers
RealField density(const SpinorField& u);                      // <u,u>_{C^2}(x)
RealField spin_density(int m, const SpinorField& u);          // <u, sigma_m u>(x)
SpinorField sigma_apply(int m, const SpinorField& u);         // sigma_m u
void pointwise_multiply(const RealField& w, SpinorField& u);  // u <- w u
void pointwise_multiply(const RealField& w, ComplexField& u);

/// sigma . t for a triple of spinor fields t_j.
SpinorField sigma_dot(const std::array<SpinorField, 3>& t);

/// Min-image radial coordinate of grid node (i,j,l).
double min_image_radius(const SpectralBox& box, int i, int j, int l);

}  // namespace msqed

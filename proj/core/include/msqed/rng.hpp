#pragma once

#include <cstdint>
#include <random>

#include "msqed/grid.hpp"

namespace msqed {

/// Deterministic RNG: mt19937_64 with hand-rolled transforms so streams do
/// not depend on the standard library's distribution implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() {  // [0,1)
        return (eng_() >> 11) * 0x1.0p-53;
    }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        have_spare_ = true;
        spare_ = r * std::sin(2.0 * kPi * u2);
        return r * std::cos(2.0 * kPi * u2);
    }
    Complex cnormal() { return Complex(normal(), normal()); }
    std::uint64_t raw() { return eng_(); }
    int index(int n) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(n)); }

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

struct RandomFieldOptions {
    double k_smooth = 2.0;   // Gaussian spectral envelope exp(-|k|^2/(2 k_smooth^2))
    double k_cut = -1.0;     // hard band limit; <= 0 means 40% of the grid band
};

/// Smooth random fields; spectra carry a Gaussian envelope, a hard band
/// limit, and cleared Nyquist planes, so products of two of them stay exactly
/// representable on the grid.
SpinorField random_spinor(const SpectralBox& box, Rng& rng, RandomFieldOptions opt = {});
RealField random_real_field(const SpectralBox& box, Rng& rng, RandomFieldOptions opt = {});
/// Mean-zero divergence-free random field scaled to the requested H^1-dot norm.
VectorField random_vector_potential(const SpectralBox& box, Rng& rng, double h1_norm,
                                    RandomFieldOptions opt = {});

}  // namespace msqed

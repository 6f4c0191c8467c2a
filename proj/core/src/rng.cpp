#include "msqed/rng.hpp"

#include <cmath>

#include "msqed/multiplier.hpp"

namespace msqed {
namespace {

FourierMultiplier envelope(const SpectralBox& box, const RandomFieldOptions& opt) {
    const double kc = opt.k_cut > 0.0 ? opt.k_cut : 0.4 * box.k_band();
    const double ks = opt.k_smooth;
    return FourierMultiplier::from_radial(
        box, [kc, ks](double k) { return k <= kc ? std::exp(-0.5 * k * k / (ks * ks)) : 0.0; });
}

}  // namespace

SpinorField random_spinor(const SpectralBox& box, Rng& rng, RandomFieldOptions opt) {
    SpinorField u(box);
    for (int m = 0; m < 2; ++m)
        for (auto& z : u.c[m]) z = rng.cnormal();
    u = apply_multiplier(envelope(box, opt), u);
    normalize(u);
    return u;
}

RealField random_real_field(const SpectralBox& box, Rng& rng, RandomFieldOptions opt) {
    RealField f(box);
    for (auto& x : f.v) x = rng.normal();
    return apply_multiplier(envelope(box, opt), f);
}

VectorField random_vector_potential(const SpectralBox& box, Rng& rng, double h1_norm,
                                    RandomFieldOptions opt) {
    VectorField A(box);
    for (int m = 0; m < 3; ++m)
        for (auto& x : A.c[m]) x = rng.normal();
    A = leray_project(apply_multiplier(envelope(box, opt), A));
    const double n = sobolev_norm(A, 1.0);
    if (n > 0.0) scale(A, h1_norm / n);
    return A;
}

}  // namespace msqed

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "msqed/fft.hpp"
#include "msqed/multiplier.hpp"
#include "msqed/rng.hpp"

using namespace msqed;

namespace {

// O(N^6) discrete Fourier sum with the continuum normalization; the
// independent oracle for the transform tests.
ComplexField direct_forward(const ComplexField& f) {
    const SpectralBox& box = f.box;
    ComplexField out(box);
    const int n = box.N;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) {
                const double kx = box.k_axis(i), ky = box.k_axis(j), kz = box.k_axis(l);
                Complex acc{};
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        for (int c = 0; c < n; ++c) {
                            const double ph = -(kx * box.x_axis(a) + ky * box.x_axis(b) +
                                                kz * box.x_axis(c));
                            acc += f.v[box.idx(a, b, c)] * Complex(std::cos(ph), std::sin(ph));
                        }
                out.v[box.idx(i, j, l)] = acc * box.wx();
            }
    return out;
}

}  // namespace

TEST_CASE("forward transform matches the direct summation oracle on 8^3") {
    SpectralBox box(5.0, 8);
    Rng rng(1);
    ComplexField f(box);
    for (auto& z : f.v) z = rng.cnormal();
    const ComplexField fast = forward_transform(f);
    const ComplexField slow = direct_forward(f);
    double err = 0.0, scale = 0.0;
    for (std::size_t q = 0; q < f.size(); ++q) {
        err += std::norm(fast.v[q] - slow.v[q]);
        scale += std::norm(slow.v[q]);
    }
    CHECK(std::sqrt(err / scale) < 1e-12);
}

TEST_CASE("Parseval equality on a random complex field (direct oracle grid)") {
    SpectralBox box(5.0, 8);
    Rng rng(2);
    ComplexField f(box);
    for (auto& z : f.v) z = rng.cnormal();
    const ComplexField fk = forward_transform(f);
    const double side_x = l2_norm_sq(f);
    double side_k = 0.0;
    for (const auto& z : fk.v) side_k += std::norm(z);
    side_k *= box.wk() / std::pow(2.0 * kPi, 3);
    CHECK(std::abs(side_x - side_k) / side_x < 1e-12);
}

TEST_CASE("round trip is the identity to 1e-13") {
    SpectralBox box(9.0, 16);
    Rng rng(3);
    ComplexField f(box);
    for (auto& z : f.v) z = rng.cnormal();
    const ComplexField back = inverse_transform(forward_transform(f));
    double err = 0.0, scale = 0.0;
    for (std::size_t q = 0; q < f.size(); ++q) {
        err += std::norm(back.v[q] - f.v[q]);
        scale += std::norm(f.v[q]);
    }
    CHECK(std::sqrt(err / scale) < 1e-13);
}

TEST_CASE("constant field transforms to a delta at the zero mode with value c L^3") {
    SpectralBox box(7.0, 8);
    RealField c(box, -1.75);
    const ComplexField ck = forward_transform(c);
    CHECK(ck.v[0].real() == doctest::Approx(-1.75 * std::pow(box.L, 3)).epsilon(1e-13));
    double rest = 0.0;
    for (std::size_t q = 1; q < ck.size(); ++q) rest = std::max(rest, std::abs(ck.v[q]));
    CHECK(rest < 1e-10);
}

TEST_CASE("transform requires matching boxes") {
    SpectralBox a(5.0, 8), b(5.0, 16);
    RealField f(a);
    ComplexField g(b);
    CHECK_THROWS_AS(static_cast<void>(l2_inner_real(f, RealField(b))), std::invalid_argument);
    CHECK_THROWS_AS(
        static_cast<void>(apply_multiplier(FourierMultiplier::one(a), g)),
        std::invalid_argument);
}

TEST_CASE("identity multiplier is exact on Nyquist-free input") {
    SpectralBox box(6.0, 16);
    Rng rng(4);
    RealField f = random_real_field(box, rng);  // Nyquist-free by construction
    const RealField g = apply_multiplier(FourierMultiplier::one(box), f);
    double err = 0.0, scale = 0.0;
    for (std::size_t q = 0; q < f.size(); ++q) {
        err = std::max(err, std::abs(g.v[q] - f.v[q]));
        scale = std::max(scale, std::abs(f.v[q]));
    }
    CHECK(err < 1e-13 * scale);
}

TEST_CASE("band-limit projector is idempotent") {
    SpectralBox box(6.0, 16);
    Rng rng(5);
    RealField f = random_real_field(box, rng);
    const FourierMultiplier band = FourierMultiplier::band_limit(box, 0.5 * box.k_band());
    const RealField once = apply_multiplier(band, f);
    const RealField twice = apply_multiplier(band, once);
    double err = 0.0;
    for (std::size_t q = 0; q < f.size(); ++q)
        err = std::max(err, std::abs(twice.v[q] - once.v[q]));
    CHECK(err < 1e-13);
}

TEST_CASE("multipliers commute") {
    SpectralBox box(6.0, 16);
    Rng rng(6);
    RealField f = random_real_field(box, rng);
    const FourierMultiplier a =
        FourierMultiplier::from_radial(box, [](double k) { return std::exp(-0.3 * k * k); });
    const FourierMultiplier b = FourierMultiplier::power(box, -1.0);
    const RealField ab = apply_multiplier(a, apply_multiplier(b, f));
    const RealField ba = apply_multiplier(b, apply_multiplier(a, f));
    double err = 0.0;
    for (std::size_t q = 0; q < f.size(); ++q) err = std::max(err, std::abs(ab.v[q] - ba.v[q]));
    CHECK(err < 1e-12);
}

TEST_CASE("Gaussian chi multiplier matches direct real-space convolution on 8^3") {
    SpectralBox box(5.0, 8);
    Rng rng(7);
    RealField A = random_real_field(box, rng);
    const FourierMultiplier chi =
        FourierMultiplier::from_radial(box, [](double k) { return std::exp(-0.5 * k * k); });
    const RealField fast = apply_multiplier(chi, A);

    // kernel K = inverse transform of the symbol; direct periodic convolution
    ComplexField sym(box);
    for_each_mode(box, [&](std::size_t q, double kx, double ky, double kz, bool ny) {
        const double k2 = kx * kx + ky * ky + kz * kz;
        sym.v[q] = ny ? Complex(0.0, 0.0) : Complex(std::exp(-0.5 * k2), 0.0);
    });
    const RealField K = inverse_transform_real(sym);
    const int n = box.N;
    // K is sampled on the centered grid; the offset m*dx lives at index
    // (m + n/2) mod n per axis
    auto kern = [&](int mi, int mj, int ml) {
        return K.v[box.idx((mi + n / 2) % n, (mj + n / 2) % n, (ml + n / 2) % n)];
    };
    RealField slow(box);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) {
                double acc = 0.0;
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        for (int c = 0; c < n; ++c)
                            acc += kern((i - a + n) % n, (j - b + n) % n, (l - c + n) % n) *
                                   A.v[box.idx(a, b, c)];
                slow.v[box.idx(i, j, l)] = acc * box.wx();
            }
    double err = 0.0, scale = 0.0;
    for (std::size_t q = 0; q < A.size(); ++q) {
        err += std::pow(fast.v[q] - slow.v[q], 2);
        scale += std::pow(slow.v[q], 2);
    }
    CHECK(std::sqrt(err / scale) < 1e-8);
}

TEST_CASE("even real multiplier preserves realness") {
    SpectralBox box(6.0, 16);
    Rng rng(8);
    ComplexField f(box);
    RealField fr = random_real_field(box, rng);
    for (std::size_t q = 0; q < f.size(); ++q) f.v[q] = Complex(fr.v[q], 0.0);
    const FourierMultiplier m =
        FourierMultiplier::from_radial(box, [](double k) { return 1.0 / (1.0 + k); });
    const ComplexField g = apply_multiplier(m, f);
    double imag = 0.0, scale = 0.0;
    for (const auto& z : g.v) {
        imag = std::max(imag, std::abs(z.imag()));
        scale = std::max(scale, std::abs(z));
    }
    CHECK(imag <= 1e-12 * scale);
}

TEST_CASE("NaN multiplier samples are rejected") {
    SpectralBox box(5.0, 8);
    CHECK_THROWS_AS(FourierMultiplier::from_radial(
                        box, [](double k) { return k == 0.0 ? 0.0 : std::pow(-1.0, 0.5) * k; }),
                    std::invalid_argument);
}

TEST_CASE("multiplier output has exactly zero Nyquist planes") {
    SpectralBox box(6.0, 8);
    ComplexField f(box);
    Rng rng(9);
    for (auto& z : f.v) z = rng.cnormal();  // full-band content incl. Nyquist
    const ComplexField g = apply_multiplier(FourierMultiplier::one(box), f);
    const ComplexField gk = forward_transform(g);
    double ny = 0.0;
    for_each_mode(box, [&](std::size_t q, double, double, double, bool isny) {
        if (isny) ny = std::max(ny, std::abs(gk.v[q]));
    });
    CHECK(ny < 1e-12);
}

TEST_CASE("Leray projection kills gradients and fixes divergence-free fields") {
    SpectralBox box(8.0, 16);
    Rng rng(10);
    // gradient field
    RealField phi = random_real_field(box, rng);
    ComplexField pk(box);
    for (std::size_t q = 0; q < phi.size(); ++q) pk.v[q] = Complex(phi.v[q], 0.0);
    auto grad = gradient(pk);
    VectorField G(box);
    for (int d = 0; d < 3; ++d)
        for (std::size_t q = 0; q < G.c[d].size(); ++q) G.c[d][q] = grad[d].v[q].real();
    const VectorField PG = leray_project(G);
    CHECK(std::sqrt(l2_norm_sq(PG)) < 1e-12 * std::max(1.0, std::sqrt(l2_norm_sq(G))));

    VectorField A = random_vector_potential(box, rng, 1.0);
    const VectorField PA = leray_project(A);
    CHECK(std::sqrt(l2_norm_sq(PA - A)) < 1e-12);
    CHECK(divergence_defect(PA) < 1e-12);
}

TEST_CASE("Leray splitting is orthogonal: <PF, (1-P)F> = 0") {
    SpectralBox box(8.0, 16);
    Rng rng(11);
    VectorField F(box);
    for (int d = 0; d < 3; ++d)
        for (auto& x : F.c[d]) x = rng.normal();
    const VectorField PF = leray_project(F);
    const VectorField QF = F - PF;
    double mix = 0.0, scale = 0.0;
    for (int d = 0; d < 3; ++d)
        for (std::size_t q = 0; q < PF.c[d].size(); ++q) {
            mix += PF.c[d][q] * QF.c[d][q];
            scale += F.c[d][q] * F.c[d][q];
        }
    CHECK(std::abs(mix) <= 1e-12 * scale);
}

TEST_CASE("Sobolev norms: single mode, interpolation, multiplier cancellation") {
    SpectralBox box(2.0 * kPi, 16);  // integer wave numbers
    // single mode e^{i k0 x}
    ComplexField f(box);
    const double k0 = 3.0;
    for (int i = 0; i < box.N; ++i)
        for (int j = 0; j < box.N; ++j)
            for (int l = 0; l < box.N; ++l) {
                const double ph = k0 * box.x_axis(i);
                f.v[box.idx(i, j, l)] = Complex(std::cos(ph), std::sin(ph));
            }
    const double h1 = sobolev_norm(f, 1.0);
    const double l2 = l2_norm(f);
    CHECK(h1 == doctest::Approx(k0 * l2).epsilon(1e-12));

    // interpolation ||f||_{H1/2}^2 <= ||f|| ||f||_{H1} on random mean-zero fields
    Rng rng(12);
    RealField g = random_real_field(box, rng);
    double mean = 0.0;
    for (double x : g.v) mean += x;
    mean /= static_cast<double>(g.size());
    for (auto& x : g.v) x -= mean;
    const double h = sobolev_norm(g, 0.5);
    CHECK(h * h <= l2_norm(g) * sobolev_norm(g, 1.0) * (1.0 + 1e-12));

    // ||Delta phi||_{H-1} = ||phi||_{H1}
    RealField lap = apply_multiplier(FourierMultiplier::power(box, 2.0), g);
    for (auto& x : lap.v) x = -x;
    CHECK(sobolev_norm(lap, -1.0) == doctest::Approx(sobolev_norm(g, 1.0)).epsilon(1e-11));
}

TEST_CASE("negative-order Sobolev norm rejects fields with mean") {
    SpectralBox box(5.0, 8);
    RealField f(box, 1.0);
    CHECK_THROWS_AS(static_cast<void>(sobolev_norm(f, -1.0)), std::invalid_argument);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "msqed/quasicl.hpp"
#include "msqed/rng.hpp"
#include "msqed/solver.hpp"

using namespace msqed;

namespace {

ModelConfig make_cfg(double g) {
    ModelConfig cfg;
    cfg.box = SpectralBox(10.0, 16);
    cfg.potential = Potential::harmonic(cfg.box, 1.0);
    cfg.cutoff = CutoffProfile::one();
    cfg.coupling.g = g;
    return cfg;
}

PhotonParameter random_parameter(const SpectralBox& box, Rng& rng, double scale) {
    std::array<ComplexField, 3> f{ComplexField(box), ComplexField(box), ComplexField(box)};
    for (int c = 0; c < 3; ++c)
        for (auto& z : f[c].v) z = scale * rng.cnormal();
    // smooth decay so the fields are well resolved
    const FourierMultiplier env =
        FourierMultiplier::from_radial(box, [](double k) { return std::exp(-0.4 * k * k); });
    for (int c = 0; c < 3; ++c) {
        // direct coefficient-side damping (f lives on the k grid already)
        for_each_mode(box, [&](std::size_t q, double kx, double ky, double kz, bool) {
            const double k2 = kx * kx + ky * ky + kz * kz;
            f[c].v[q] *= std::exp(-0.4 * k2);
        });
    }
    (void)env;
    return PhotonParameter::from_components(box, f);
}

}  // namespace

TEST_CASE("f = 0 and f in Z^- both map to A = 0") {
    SpectralBox box(10.0, 16);
    PhotonParameter zero = PhotonParameter::zero(box);
    CHECK(std::sqrt(l2_norm_sq(potential_from_parameter(zero))) == 0.0);

    // purely odd-conjugate parameter: f(-k) = -conj(f(k)) => f+ = 0
    Rng rng(51);
    PhotonParameter f = random_parameter(box, rng, 1.0);
    std::array<ComplexField, 3> odd = f.f_minus;
    PhotonParameter fm = PhotonParameter::from_components(box, odd);
    const VectorField A = potential_from_parameter(fm);
    CHECK(std::sqrt(l2_norm_sq(A)) < 1e-13);
}

TEST_CASE("A -> f -> A is the identity on the Coulomb-gauge class") {
    SpectralBox box(10.0, 16);
    Rng rng(52);
    VectorField A = random_vector_potential(box, rng, 1.3);
    PhotonParameter f = parameter_from_potential(A);
    CHECK(f.transversality_defect() < 1e-12);
    const VectorField A2 = potential_from_parameter(f);
    CHECK(std::sqrt(l2_norm_sq(A2 - A) / l2_norm_sq(A)) < 1e-12);
    CHECK(photon_norm_sq(f.f_minus) < 1e-26);
}

TEST_CASE("<f+, |k| f+> equals the field energy ||A||^2/(32 pi^3)") {
    SpectralBox box(10.0, 16);
    Rng rng(53);
    VectorField A = random_vector_potential(box, rng, 2.1);
    PhotonParameter f = parameter_from_potential(A);
    const double lhs = photon_inner(f.f_plus, f.f_plus, [](double k) { return k; }).real();
    const double h1 = sobolev_norm(A, 1.0);
    const double rhs = h1 * h1 / (32.0 * std::pow(kPi, 3));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * rhs);
}

TEST_CASE("single transverse mode: hand-computed field energy") {
    // A = eps cos(k0 x1) e3 with k0 the first axis mode: two spectral modes
    SpectralBox box(2.0 * kPi, 16);
    const double eps = 0.37, k0 = 1.0;
    VectorField A(box);
    for (int i = 0; i < box.N; ++i)
        for (int j = 0; j < box.N; ++j)
            for (int l = 0; l < box.N; ++l)
                A.c[2][box.idx(i, j, l)] = eps * std::cos(k0 * box.x_axis(i));
    CHECK(divergence_defect(A) < 1e-13);
    PhotonParameter f = parameter_from_potential(A);
    // ||A||_{H1}^2 = k0^2 ||A||_{L2}^2 = k0^2 eps^2 L^3 / 2 for a cosine mode
    const double h1sq = k0 * k0 * eps * eps * std::pow(box.L, 3) / 2.0;
    CHECK(sobolev_norm(A, 1.0) == doctest::Approx(std::sqrt(h1sq)).epsilon(1e-12));
    const double lhs = photon_inner(f.f_plus, f.f_plus, [](double k) { return k; }).real();
    CHECK(lhs == doctest::Approx(h1sq / (32.0 * std::pow(kPi, 3))).epsilon(1e-12));
}

TEST_CASE("Re <f+, |k| f-> vanishes for any injected f-") {
    SpectralBox box(10.0, 16);
    Rng rng(54);
    PhotonParameter a = random_parameter(box, rng, 1.0);
    PhotonParameter b = random_parameter(box, rng, 0.7);
    const Complex mix =
        photon_inner(a.f_plus, b.f_minus, [](double k) { return k; });
    CHECK(std::abs(mix.real()) < 1e-13);
}

TEST_CASE("normal-ordering constant: scaling, sharp-cutoff value, band flag") {
    ModelConfig cfg = make_cfg(0.0);
    CHECK(normal_ordering_constant(cfg).value == 0.0);

    cfg.coupling.g = 0.3;
    cfg.cutoff = CutoffProfile::sharp(3.0);
    cfg.coupling.Lambda.reset();
    ModelConfig big = cfg;
    big.box = SpectralBox(14.0, 32);
    big.potential = Potential::harmonic(big.box, 1.0);
    const NormalOrderingConstant c1 = normal_ordering_constant(big);
    // continuum: 2 g^2 int_{|k|<=Lam} chi^2/|k| dk = 2 g^2 * 2 pi Lam^2
    const double cont = 4.0 * kPi * 0.3 * 0.3 * 9.0;
    CHECK(std::abs(c1.value - cont) / cont < 0.02);
    CHECK_FALSE(c1.band_limited);

    ModelConfig twog = big;
    twog.coupling.g = 0.6;
    CHECK(normal_ordering_constant(twog).value == doctest::Approx(4.0 * c1.value).epsilon(1e-13));

    ModelConfig flag = big;
    flag.cutoff = CutoffProfile::one();
    CHECK(normal_ordering_constant(flag).band_limited);
}

TEST_CASE("product-state energy bookkeeping") {
    ModelConfig cfg = make_cfg(0.15);
    Rng rng(55);
    RandomFieldOptions opt;
    opt.k_cut = (cfg.box.N / 4 - 1) * cfg.box.dk();
    SpinorField u = random_spinor(cfg.box, rng, opt);

    // f = 0: total = constant + <u, H_V u>
    PhotonParameter zero = PhotonParameter::zero(cfg.box);
    const ProductStateEnergy p0 = product_state_energy(u, zero, cfg);
    const EnergyBreakdown free = energy_unchecked(u, VectorField(cfg.box), cfg);
    CHECK(p0.total == doctest::Approx(p0.constant + free.e1).epsilon(1e-12));

    // general f: independent evaluation of the three pieces
    PhotonParameter f = random_parameter(cfg.box, rng, 0.6);
    const ProductStateEnergy ps = product_state_energy(u, f, cfg);
    const double fminus = photon_inner(f.f_minus, f.f_minus, [](double k) { return k; }).real();
    const double electron = energy_unchecked(u, potential_from_parameter(f), cfg).total;
    CHECK(std::abs(ps.total - (ps.constant + fminus + electron)) <=
          1e-12 * std::max(1.0, std::abs(ps.total)));

    // adding f- strictly increases the energy by <f-, |k| f->
    std::array<ComplexField, 3> plus_only = f.f_plus;
    PhotonParameter fp = PhotonParameter::from_components(cfg.box, plus_only);
    const ProductStateEnergy pplus = product_state_energy(u, fp, cfg);
    CHECK(ps.total - pplus.total == doctest::Approx(fminus).epsilon(1e-10));
    CHECK(fminus > 0.0);
}

TEST_CASE("solver minimizer closes the quasi-classical loop") {
    ModelConfig cfg = make_cfg(0.08);
    cfg.box = SpectralBox(12.0, 24);
    cfg.potential = Potential::harmonic(cfg.box, 1.0);
    SolverOptions opt;
    const MinimizerResult r = minimize(cfg, opt);
    PhotonParameter f = parameter_from_potential(r.A);
    const ProductStateEnergy ps = product_state_energy(r.u, f, cfg);
    CHECK(std::abs(ps.total - ps.constant - r.E) <= 1e-10 * std::max(1.0, std::abs(r.E)));
}

TEST_CASE("polarization frame is orthonormal and transverse") {
    auto check_frame = [](double kx, double ky, double kz) {
        auto fr = polarization_frame(kx, ky, kz);
        const double kmag = std::sqrt(kx * kx + ky * ky + kz * kz);
        for (int t = 0; t < 2; ++t) {
            const auto& e = fr[t];
            CHECK(std::abs(e[0] * kx + e[1] * ky + e[2] * kz) < 1e-12 * kmag);
            CHECK(std::abs(e[0] * e[0] + e[1] * e[1] + e[2] * e[2] - 1.0) < 1e-12);
        }
        CHECK(std::abs(fr[0][0] * fr[1][0] + fr[0][1] * fr[1][1] + fr[0][2] * fr[1][2]) < 1e-12);
    };
    check_frame(1.0, -2.0, 0.5);
    check_frame(0.0, 0.0, 3.0);  // z-axis fallback
}

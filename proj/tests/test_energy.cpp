#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "msqed/energy.hpp"
#include "msqed/rng.hpp"

using namespace msqed;

namespace {

ModelConfig make_cfg(double L, int N, double g) {
    ModelConfig cfg;
    cfg.box = SpectralBox(L, N);
    cfg.potential = Potential::harmonic(cfg.box, 1.0);
    cfg.cutoff = CutoffProfile::one();
    cfg.coupling.g = g;
    return cfg;
}

RandomFieldOptions band_opts(const SpectralBox& box) {
    RandomFieldOptions opt;
    opt.k_smooth = 1.2;
    opt.k_cut = (box.N / 4 - 1) * box.dk();
    return opt;
}

}  // namespace

TEST_CASE("A = 0 kills the interaction terms exactly") {
    ModelConfig cfg = make_cfg(10.0, 16, 0.4);
    Rng rng(31);
    SpinorField u = random_spinor(cfg.box, rng, band_opts(cfg.box));
    VectorField A(cfg.box);
    const EnergyBreakdown eb = energy(u, A, cfg);
    CHECK(eb.e2 == 0.0);
    CHECK(std::abs(eb.e3) == 0.0);
    CHECK(eb.e4 == 0.0);
    CHECK(eb.e5 == 0.0);
    CHECK(eb.total == doctest::Approx(eb.e1).epsilon(1e-14));
}

TEST_CASE("five-term total equals the Pauli-form route on random states") {
    ModelConfig cfg = make_cfg(10.0, 16, 0.25);
    Rng rng(32);
    for (int s = 0; s < 8; ++s) {
        SpinorField u = random_spinor(cfg.box, rng, band_opts(cfg.box));
        VectorField A = random_vector_potential(cfg.box, rng, 0.5 + rng.uniform(), band_opts(cfg.box));
        const EnergyBreakdown eb = energy(u, A, cfg);
        CHECK(std::abs(eb.total - eb.pauli_total) <= 1e-10 * std::max(1.0, std::abs(eb.total)));
        CHECK(eb.e2 >= 0.0);
        CHECK(eb.e4 >= 0.0);
        // breakdown recombines to the total by construction
        const double recon = eb.e1 + eb.e2 / (32.0 * std::pow(kPi, 3)) -
                             2.0 * cfg.coupling.g * eb.e3.real() +
                             cfg.coupling.g * cfg.coupling.g * eb.e4 - cfg.coupling.g * eb.e5;
        CHECK(std::abs(recon - eb.total) <= 1e-12 * std::max(1.0, std::abs(eb.total)));
    }
}

TEST_CASE("energy rejects unnormalized u and non-solenoidal A") {
    ModelConfig cfg = make_cfg(10.0, 16, 0.1);
    Rng rng(33);
    SpinorField u = random_spinor(cfg.box, rng);
    VectorField A = random_vector_potential(cfg.box, rng, 0.5);
    SpinorField u2 = u;
    scale(u2, Complex(2.0, 0.0));
    CHECK_THROWS_AS(static_cast<void>(energy(u2, A, cfg)), std::invalid_argument);
    VectorField bad = A;
    for (auto& x : bad.c[0]) x += 0.3;  // mean breaks nothing; add a gradient part
    Rng rng2(34);
    RealField phi = random_real_field(cfg.box, rng2);
    ComplexField pk(cfg.box);
    for (std::size_t q = 0; q < phi.size(); ++q) pk.v[q] = Complex(phi.v[q], 0.0);
    auto grad = gradient(pk);
    for (int d = 0; d < 3; ++d)
        for (std::size_t q = 0; q < bad.c[d].size(); ++q) bad.c[d][q] += grad[d].v[q].real();
    CHECK_THROWS_AS(static_cast<void>(energy(u, bad, cfg)), std::invalid_argument);
}

TEST_CASE("Pauli operator: A=0,V=0 gives the spectral Laplacian; constants map to zero") {
    SpectralBox box(10.0, 16);
    RealField zero(box, 0.0);
    PauliOperator H(box, zero);
    Rng rng(35);
    SpinorField u = random_spinor(box, rng, band_opts(box));
    const SpinorField Hu = H.apply(u);
    const SpinorField lap = apply_multiplier(FourierMultiplier::power(box, 2.0), u);
    double err = 0.0;
    for (int c = 0; c < 2; ++c)
        for (std::size_t q = 0; q < Hu.c[c].size(); ++q)
            err = std::max(err, std::abs(Hu.c[c][q] - lap.c[c][q]));
    CHECK(err < 1e-11);

    SpinorField cst(box);
    for (auto& z : cst.c[0]) z = Complex(0.7, 0.1);
    const SpinorField Hc = H.apply(cst);
    CHECK(l2_norm(Hc) < 1e-12);
}

TEST_CASE("Pauli operator is Hermitian on random pairs") {
    ModelConfig cfg = make_cfg(10.0, 16, 0.3);
    Rng rng(36);
    VectorField A = random_vector_potential(cfg.box, rng, 0.8, band_opts(cfg.box));
    PauliOperator H(cfg, A);
    SpinorField u = random_spinor(cfg.box, rng, band_opts(cfg.box));
    SpinorField v = random_spinor(cfg.box, rng, band_opts(cfg.box));
    const Complex a = l2_inner(v, H.apply(u));
    const Complex b = l2_inner(u, H.apply(v));
    CHECK(std::abs(a - std::conj(b)) <= 1e-11 * std::max(1.0, std::abs(a)));
}

TEST_CASE("<u,Hu> + field energy equals the energy total") {
    ModelConfig cfg = make_cfg(10.0, 16, 0.2);
    Rng rng(37);
    SpinorField u = random_spinor(cfg.box, rng, band_opts(cfg.box));
    VectorField A = random_vector_potential(cfg.box, rng, 0.9, band_opts(cfg.box));
    PauliOperator H(cfg, A);
    const double via_H = l2_inner(u, H.apply(u)).real() + H.field_energy();
    const double total = energy(u, A, cfg).total;
    CHECK(std::abs(via_H - total) <= 1e-10 * std::max(1.0, std::abs(total)));
}

TEST_CASE("cutoff energy: full band is the identity, band-limited A sees no cutoff") {
    ModelConfig cfg = make_cfg(10.0, 16, 0.35);
    Rng rng(38);
    SpinorField u = random_spinor(cfg.box, rng, band_opts(cfg.box));
    VectorField A = random_vector_potential(cfg.box, rng, 0.7, band_opts(cfg.box));

    ModelConfig full = cfg;
    full.coupling.Lambda = cfg.box.k_band() + 1.0;
    CHECK(std::abs(energy_cutoff(u, A, full).total - energy(u, A, cfg).total) < 1e-12);

    // A supported below Lambda/2: interaction identical with and without cutoff
    ModelConfig half = cfg;
    const double Lambda = 0.5 * cfg.box.k_band();
    half.coupling.Lambda = Lambda;
    const VectorField Alow =
        apply_multiplier(FourierMultiplier::band_limit(cfg.box, 0.5 * Lambda), A);
    const EnergyBreakdown c = energy_cutoff(u, Alow, half);
    const EnergyBreakdown p = energy_unchecked(u, Alow, cfg);
    CHECK(std::abs(c.e3 - p.e3) < 1e-12);
    CHECK(std::abs(c.e4 - p.e4) < 1e-12);
    CHECK(std::abs(c.e5 - p.e5) < 1e-12);
}

TEST_CASE("discrete cutoff identity holds to 1e-12 on random states") {
    ModelConfig cfg = make_cfg(10.0, 16, 0.35);
    Rng rng(39);
    SpinorField u = random_spinor(cfg.box, rng, band_opts(cfg.box));
    VectorField A = random_vector_potential(cfg.box, rng, 1.2, band_opts(cfg.box));
    const double Lambda = 0.4 * cfg.box.k_band();
    ModelConfig cut = cfg;
    cut.coupling.Lambda = Lambda;
    const double lhs = energy_cutoff(u, A, cut).total;
    const VectorField Alow = apply_multiplier(FourierMultiplier::band_limit(cfg.box, Lambda), A);
    const VectorField Ahigh = A - Alow;
    const double t = sobolev_norm(Ahigh, 1.0);
    const double rhs =
        energy_unchecked(u, Alow, cfg).total + t * t / (32.0 * std::pow(kPi, 3));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
}

TEST_CASE("energy_cutoff requires Lambda") {
    ModelConfig cfg = make_cfg(10.0, 16, 0.1);
    Rng rng(40);
    SpinorField u = random_spinor(cfg.box, rng);
    VectorField A(cfg.box);
    CHECK_THROWS_AS(static_cast<void>(energy_cutoff(u, A, cfg)), std::invalid_argument);
}

TEST_CASE("magnetic IMS identity: small residual, localized case, swap symmetry") {
    ModelConfig cfg = make_cfg(24.0, 64, 0.2);
    Rng rng(41);
    RandomFieldOptions opt;
    opt.k_smooth = 0.7;
    opt.k_cut = 1.4;
    SpinorField u = random_spinor(cfg.box, rng, opt);
    VectorField A = random_vector_potential(cfg.box, rng, 0.8, opt);
    const double R = cfg.box.L / 8.0;
    const ImsResult ims = ims_check(u, A, cfg, R, LocalizationProfile::spectral);
    CHECK(ims.residual <= 1e-10 * ims.scale);

    // swap eta <-> eta~: the identity is symmetric in the pair
    Localization loc = Localization::build(cfg.box, R, LocalizationProfile::spectral);
    const FourierMultiplier chi = cfg.cutoff.multiplier(cfg.box);
    const VectorField chiA = apply_multiplier(chi, A);
    auto kinetic = [&](const SpinorField& w) {
        auto t = momentum(w);
        for (int d = 0; d < 3; ++d) {
            RealField comp(cfg.box);
            comp.v = chiA.c[d];
            SpinorField au = w;
            pointwise_multiply(comp, au);
            axpy(Complex(-cfg.coupling.g, 0.0), au, t[d]);
        }
        double s = 0.0;
        for (int d = 0; d < 3; ++d) s += l2_norm_sq(t[d]);
        return s;
    };
    SpinorField eu = u, etu = u;
    pointwise_multiply(loc.eta_tilde, eu);  // swapped roles
    pointwise_multiply(loc.eta, etu);
    double grad_term = 0.0;
    for (std::size_t q = 0; q < loc.grad_sq_sum.size(); ++q)
        grad_term += loc.grad_sq_sum.v[q] * (std::norm(u.c[0][q]) + std::norm(u.c[1][q]));
    const double swapped =
        std::abs(kinetic(u) - (kinetic(eu) + kinetic(etu) - grad_term * cfg.box.wx()));
    CHECK(std::abs(swapped - ims.residual) <= 1e-12 * std::max(1.0, ims.scale));

    // u localized where eta ~ 1 (damped, then band-limited back so products
    // stay representable): residual still tiny
    SpinorField ul = u;
    for (std::size_t q = 0; q < ul.c[0].size(); ++q) {
        const double damp = loc.eta.v[q] * loc.eta.v[q];
        ul.c[0][q] *= damp;
        ul.c[1][q] *= damp;
    }
    ul = apply_multiplier(FourierMultiplier::band_limit(cfg.box, opt.k_cut), ul);
    if (l2_norm(ul) > 0.1) {
        normalize(ul);
        const ImsResult loc_ims = ims_check(ul, A, cfg, R, LocalizationProfile::spectral);
        CHECK(loc_ims.residual <= 1e-9 * std::max(loc_ims.scale, 1e-6));
    }
}

TEST_CASE("ims_check rejects R beyond the box") {
    ModelConfig cfg = make_cfg(10.0, 16, 0.0);
    Rng rng(42);
    SpinorField u = random_spinor(cfg.box, rng);
    VectorField A(cfg.box);
    CHECK_THROWS_AS(static_cast<void>(ims_check(u, A, cfg, 0.45 * cfg.box.L)),
                    std::invalid_argument);
}

TEST_CASE("virial: real state gives zero, plane wave returns its wave vector") {
    ModelConfig cfg = make_cfg(2.0 * kPi, 16, 0.0);
    // real u, A = 0
    Rng rng(43);
    RealField f = random_real_field(cfg.box, rng);
    SpinorField u(cfg.box);
    for (std::size_t q = 0; q < f.size(); ++q) u.c[0][q] = Complex(f.v[q], 0.0);
    normalize(u);
    VectorField A(cfg.box);
    auto v = virial(u, A, cfg);
    CHECK(std::abs(v[0]) < 1e-13);
    CHECK(std::abs(v[1]) < 1e-13);
    CHECK(std::abs(v[2]) < 1e-13);

    // plane wave e^{i k0 x} (1,0): momentum k0
    SpinorField pw(cfg.box);
    const double k0 = 2.0;
    for (int i = 0; i < cfg.box.N; ++i)
        for (int j = 0; j < cfg.box.N; ++j)
            for (int l = 0; l < cfg.box.N; ++l) {
                const double ph = k0 * cfg.box.x_axis(i);
                pw.c[0][cfg.box.idx(i, j, l)] = Complex(std::cos(ph), std::sin(ph));
            }
    normalize(pw);
    v = virial(pw, A, cfg);
    CHECK(v[0] == doctest::Approx(k0).epsilon(1e-12));
    CHECK(std::abs(v[1]) < 1e-12);
    CHECK(std::abs(v[2]) < 1e-12);
}

TEST_CASE("energy invariance under a global phase of u") {
    ModelConfig cfg = make_cfg(10.0, 16, 0.3);
    Rng rng(44);
    SpinorField u = random_spinor(cfg.box, rng, band_opts(cfg.box));
    VectorField A = random_vector_potential(cfg.box, rng, 0.6, band_opts(cfg.box));
    const double e0 = energy(u, A, cfg).total;
    SpinorField up = u;
    scale(up, std::polar(1.0, 1.234));
    const double e1 = energy(up, A, cfg).total;
    CHECK(std::abs(e0 - e1) <= 1e-13 * std::max(1.0, std::abs(e0)));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "msqed/energy.hpp"
#include "msqed/lorentz.hpp"
#include "msqed/rng.hpp"
#include "msqed/solver.hpp"

using namespace msqed;

TEST_CASE("indicator norms are exact: ||1_E||_{p,q} closed forms") {
    SpectralBox box(10.0, 16);
    RealField f(box);
    std::size_t count = 0;
    for (int i = 0; i < box.N; ++i)
        for (int j = 0; j < box.N; ++j)
            for (int l = 0; l < box.N; ++l)
                if (min_image_radius(box, i, j, l) < 2.5) {
                    f.v[box.idx(i, j, l)] = 1.0;
                    ++count;
                }
    const double m = count * box.wx();
    const double inf_q = std::numeric_limits<double>::infinity();
    CHECK(lorentz_norm(f, 3.0, inf_q) == doctest::Approx(std::pow(m, 1.0 / 3.0)).epsilon(1e-14));
    // finite q: ||1_E||_{p,q} = (p/q)^{1/q} m^{1/p} from the layer-cake form
    for (double p : {1.5, 2.0, 4.0})
        for (double q : {1.0, 2.0, 3.5}) {
            const double expect = std::pow(p / q, 1.0 / q) * std::pow(m, 1.0 / p);
            CHECK(lorentz_norm(f, p, q) == doctest::Approx(expect).epsilon(1e-13));
        }
}

TEST_CASE("L^{p,p} agrees with L^p to 1e-10 on random fields") {
    SpectralBox box(10.0, 16);
    Rng rng(71);
    RealField f = random_real_field(box, rng);
    for (double p : {1.0, 2.0, 3.0}) {
        double lp = 0.0;
        for (double x : f.v) lp += std::pow(std::abs(x), p);
        lp = std::pow(lp * box.wx(), 1.0 / p);
        CHECK(std::abs(lorentz_norm(f, p, p) - lp) <= 1e-10 * lp);
    }
}

TEST_CASE("embedding in q on simple functions: indicator ratios") {
    SpectralBox box(10.0, 16);
    RealField f(box);
    for (int i = 0; i < box.N; ++i) f.v[box.idx(i, 0, 0)] = 2.0;
    // for an indicator: ||f||_{p,q} = (p/q)^{1/q} m^{1/p} t, decreasing ratios
    const double n1 = lorentz_norm(f, 2.0, 1.0);
    const double n2 = lorentz_norm(f, 2.0, 2.0);
    const double ninf = lorentz_norm(f, 2.0, std::numeric_limits<double>::infinity());
    CHECK(n1 >= n2);
    CHECK(n2 >= ninf);
}

TEST_CASE("empty support is an error for finite q and zero for weak norms") {
    SpectralBox box(10.0, 16);
    RealField f(box, 0.0);
    CHECK_THROWS_AS(static_cast<void>(lorentz_norm(f, 2.0, 2.0)), std::invalid_argument);
    CHECK(lorentz_norm(f, 2.0, std::numeric_limits<double>::infinity()) == 0.0);
}

TEST_CASE("|k|^{-1/2} weak-L6 estimate lands within 3% of (4 pi/3)^{1/6}") {
    SpectralBox box(14.0, 64);
    const double analytic = std::pow(4.0 * kPi / 3.0, 1.0 / 6.0);
    const double est = lorentz_power_symbol_norm(box, 0.5, box.k_band(), 6.0,
                                                 std::numeric_limits<double>::infinity());
    CHECK(std::abs(est - analytic) / analytic < 0.03);
}

TEST_CASE("||1/|k|||_{L^{3,inf}} estimate approaches (4 pi/3)^{1/3}") {
    SpectralBox box(14.0, 48);
    const double analytic = std::pow(4.0 * kPi / 3.0, 1.0 / 3.0);
    const double est = lorentz_power_symbol_norm(box, 1.0, box.k_band(), 3.0,
                                                 std::numeric_limits<double>::infinity());
    CHECK(std::abs(est - analytic) / analytic < 0.05);
}

TEST_CASE("Holder sampler: precondition rejection and degenerate product") {
    SpectralBox box(8.0, 16);
    CHECK_THROWS_AS(holder_young_sampler(box, ProductKind::holder, 2.0, 2.0,
                                         std::numeric_limits<double>::infinity(), 2.0, 4, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(holder_young_sampler(box, ProductKind::young, 4.0, 2.0, 4.0, 2.0, 4, 1),
                    std::invalid_argument);  // 1/p1+1/p2-1 <= 0

    // disjoint supports: product vanishes, ratio 0
    RealField f1(box), f2(box);
    for (int i = 0; i < box.N / 2; ++i) f1.v[box.idx(i, 0, 0)] = 1.0;
    for (int i = box.N / 2; i < box.N; ++i) f2.v[box.idx(i, 0, 0)] = 1.0;
    RealField prod(box);
    for (std::size_t q = 0; q < prod.size(); ++q) prod.v[q] = f1.v[q] * f2.v[q];
    CHECK(lorentz_norm(prod, 2.0, std::numeric_limits<double>::infinity()) == 0.0);
}

TEST_CASE("Holder ratios are finite and stable under refinement (N in 32/48/64)") {
    // the power-law pair pattern of the chi-A-u estimate: p1 = 3, p2 = 6
    double prev = -1.0;
    for (int N : {32, 48, 64}) {
        SpectralBox box(10.0, N);
        const SamplerReport rep =
            holder_young_sampler(box, ProductKind::holder, 3.0, 2.0, 6.0, 2.0, 24, 77);
        CHECK(rep.worst_ratio > 0.0);
        CHECK(std::isfinite(rep.worst_ratio));
        if (prev > 0.0) CHECK(std::abs(rep.worst_ratio - prev) / prev < 0.10);
        prev = rep.worst_ratio;
    }
}

TEST_CASE("Lemma 2.4 estimator: zero-A excluded, one-mode closed form") {
    SpectralBox box(2.0 * kPi, 16);
    const CutoffProfile chi = CutoffProfile::one();

    // single-mode A = eps cos(k0 x) e3 and constant u: with chi = 1,
    // ||A u||/(||A||_{H1} ||u||) = 1/k0 for the weak part denominators
    VectorField A(box);
    const double eps = 0.8;
    for (int i = 0; i < box.N; ++i)
        for (int j = 0; j < box.N; ++j)
            for (int l = 0; l < box.N; ++l)
                A.c[2][box.idx(i, j, l)] = eps * std::cos(box.x_axis(i));
    SpinorField u(box);
    for (auto& z : u.c[0]) z = Complex(1.0, 0.0);
    normalize(u);
    double num = 0.0;
    {
        const VectorField cA = apply_multiplier(chi.multiplier(box), A);
        for (int d = 0; d < 3; ++d) {
            SpinorField t = u;
            RealField comp(box);
            comp.v = cA.c[d];
            pointwise_multiply(comp, t);
            num += l2_norm_sq(t);
        }
        num = std::sqrt(num);
    }
    // ||A u||_{L2} = ||A||_{L2} |u| -> eps sqrt(L^3/2) * L^{-3/2}; H1 norm = k0 ||A||_{L2}
    const double c2 = chi.chi2_over_k_weak_l3(box);
    const double uh = sobolev_norm(u, 0.5);  // 0 for the constant spinor
    const double den = sobolev_norm(A, 1.0) * (0.0 + c2 * uh);
    CHECK(uh < 1e-12);   // constant state has no H^{1/2} content
    CHECK(den < 1e-10);  // the one-mode ratio is excluded as degenerate
    CHECK(num == doctest::Approx(eps * std::pow(box.L, 3.0 / 2.0) / std::sqrt(2.0) *
                                 std::pow(box.L, -1.5))
                     .epsilon(1e-12));

    const Lemma24Estimate est = estimate_lemma24_constant(box, chi, 40, 78);
    CHECK(est.C > 0.0);
    double min_slack = 1e300;
    for (double r : est.ratios) min_slack = std::min(min_slack, est.C - r);
    CHECK(min_slack >= -1e-12);
}

TEST_CASE("Lemma 2.5: slack nonnegative with empirical constants, mode decay -1") {
    SpectralBox box(10.0, 24);
    const CutoffProfile chi = CutoffProfile::one();
    const Lemma25Constants cs = estimate_lemma25_constants(box, chi, 30, 79);
    CHECK(cs.C_convolution > 0.0);
    CHECK(cs.C_product > 0.0);

    Rng rng(80);
    RealField w = random_real_field(box, rng);
    double mean = 0.0;
    for (double x : w.v) mean += x;
    mean /= static_cast<double>(w.size());
    for (auto& x : w.v) x -= mean;
    SpinorField s1 = random_spinor(box, rng), s2 = random_spinor(box, rng);
    ComplexField u1(box), u2(box);
    u1.v = s1.c[0];
    u2.v = s2.c[0];
    const Lemma25Slack sl = lemma25_check(chi, w, u1, u2, 0.8 * box.k_band(), cs);
    CHECK(sl.slack_convolution >= -1e-10);
    CHECK(sl.slack_product >= -1e-10);

    // single high-|k| mode: ||chi-hat * w||_{H-1} = |w| scales as 1/|k|
    std::vector<double> ks, vals;
    for (int m : {2, 3, 4, 5, 6}) {
        RealField mode(box);
        const double k0 = m * box.dk();
        for (int i = 0; i < box.N; ++i)
            for (int j = 0; j < box.N; ++j)
                for (int l = 0; l < box.N; ++l)
                    mode.v[box.idx(i, j, l)] = std::cos(k0 * box.x_axis(i));
        const RealField cm = apply_multiplier(chi.multiplier(box), mode);
        ks.push_back(k0);
        vals.push_back(sobolev_norm(cm, -1.0));
    }
    CHECK(std::abs(loglog_slope(ks, vals) + 1.0) < 1e-6);
}

TEST_CASE("coercivity certificate: g = 0 formulas, spot checks, refusal") {
    ModelConfig cfg;
    cfg.box = SpectralBox(12.0, 16);
    cfg.potential = Potential::harmonic(cfg.box, 1.0);
    cfg.cutoff = CutoffProfile::one();
    cfg.coupling.g = 0.0;

    CoercivityInputs in;
    in.a = 0.0;
    in.b = 0.0;
    in.C = 1.0;
    in.g = 0.0;
    in.chi1_l2 = 0.0;
    in.chi2_weak = cfg.cutoff.chi2_over_k_weak_l3(cfg.box);
    in.chi_sum = in.chi2_weak;
    const CoercivityCertificate cert = coercivity_certificate(in);
    CHECK(cert.granted);
    CHECK(cert.eps == doctest::Approx(1.0 / (64.0 * std::pow(kPi, 3))).epsilon(1e-14));
    CHECK(cert.C1 == doctest::Approx(cert.eps / 4.0).epsilon(1e-14));
    CHECK(cert.C2 == 0.0);
    CHECK(cert.threshold == doctest::Approx(64.0).epsilon(1e-14));

    const SpotCheckReport rep = coercivity_spot_check(cert, cfg, 25, 81);
    CHECK(rep.n_total > 0);
    CHECK(rep.n_pass == rep.n_total);

    CoercivityInputs bad = in;
    bad.a = 3.0;
    bad.g = 40.0;
    const CoercivityCertificate refused = coercivity_certificate(bad);
    CHECK_FALSE(refused.granted);
    CHECK(refused.refusal.find("smallness") != std::string::npos);
}

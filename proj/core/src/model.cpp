#include "msqed/model.hpp"

#include <cmath>

#include "msqed/lorentz.hpp"
#include "msqed/rng.hpp"

namespace msqed {
namespace {

double quintic_step(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

RealField sample_radial(const SpectralBox& box, const std::function<double(double)>& f) {
    RealField out(box);
    const int n = box.N;
    std::size_t q = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l, ++q) out.v[q] = f(min_image_radius(box, i, j, l));
    return out;
}

/// Default split V1 = V_+ eta~_R^2, V2 = V - V1 with the quintic pair.
void apply_split(Potential& p, double R) {
    const SpectralBox& box = p.V.box;
    if (R < 0.0) R = box.L / 4.0;
    p.split_radius = R;
    Localization loc = Localization::build(box, R, LocalizationProfile::quintic);
    p.V1 = RealField(box);
    p.V2 = RealField(box);
    for (std::size_t q = 0; q < p.V.size(); ++q) {
        const double vp = std::max(p.V.v[q], 0.0);
        p.V1.v[q] = vp * loc.eta_tilde.v[q] * loc.eta_tilde.v[q];
        p.V2.v[q] = p.V.v[q] - p.V1.v[q];
    }
}

}  // namespace

Potential Potential::harmonic(const SpectralBox& box, double omega0, double R) {
    if (!(omega0 > 0.0)) throw std::invalid_argument("harmonic: omega0 must be positive");
    Potential p;
    p.kind = PotentialKind::harmonic;
    p.V = sample_radial(box, [omega0](double r) { return omega0 * omega0 * r * r; });
    p.a_bound = 0.0;
    p.b_bound = 0.0;
    apply_split(p, R);
    return p;
}

Potential Potential::softened_coulomb(const SpectralBox& box, double c, double a_soft, double R) {
    if (!(c > 0.0) || a_soft < 0.0)
        throw std::invalid_argument("softened_coulomb: need c > 0, a_soft >= 0");
    if (a_soft == 0.0) a_soft = box.dx();
    Potential p;
    p.kind = PotentialKind::softened_coulomb;
    p.V = sample_radial(box, [c, a_soft](double r) { return -c / std::sqrt(r * r + a_soft * a_soft); });
    // Kato: 1/|x| <= (pi/2) sqrt(-Delta)
    p.a_bound = 0.5 * kPi * c;
    p.b_bound = 0.0;
    apply_split(p, R);
    return p;
}

Potential Potential::spectral_coulomb(const SpectralBox& box, double c, double R) {
    if (!(c > 0.0)) throw std::invalid_argument("spectral_coulomb: need c > 0");
    Potential p;
    p.kind = PotentialKind::spectral_coulomb;
    ComplexField vk(box);
    for_each_mode(box, [&](std::size_t q, double kx, double ky, double kz, bool ny) {
        const double k2 = kx * kx + ky * ky + kz * kz;
        vk.v[q] = (ny || k2 == 0.0) ? Complex(0.0, 0.0) : Complex(-4.0 * kPi * c / k2, 0.0);
    });
    p.V = inverse_transform_real(vk);
    p.a_bound = 0.5 * kPi * c;
    p.b_bound = 0.0;
    apply_split(p, R);
    return p;
}

Potential Potential::gaussian_well(const SpectralBox& box, double depth, double width) {
    if (!(depth > 0.0) || !(width > 0.0))
        throw std::invalid_argument("gaussian_well: need depth, width > 0");
    Potential p;
    p.kind = PotentialKind::gaussian_well;
    p.V = sample_radial(box,
                        [depth, width](double r) { return -depth * std::exp(-r * r / (width * width)); });
    // V2 = V is already local and vanishing; V1 = 0.
    p.V1 = RealField(box, 0.0);
    p.V2 = p.V;
    p.split_radius = 0.0;
    p.a_bound = 0.0;
    p.b_bound = depth;
    return p;
}

Potential Potential::custom(const SpectralBox& box, RealField samples, double R) {
    require_same_box(box, samples.box, "Potential::custom");
    Potential p;
    p.kind = PotentialKind::custom;
    p.V = std::move(samples);
    if (p.even_residual() > 1e-12) {
        throw std::invalid_argument("Potential::custom: samples are not even on the grid");
    }
    // Sampled candidate (a, b): b from max V_-, a from Rayleigh quotients of
    // V_- against sqrt(-Delta) over a small smooth ensemble.
    double vminus_max = 0.0;
    for (double v : p.V.v) vminus_max = std::max(vminus_max, -v);
    Rng rng(12021);
    double a_est = 0.0;
    FourierMultiplier half = FourierMultiplier::power(box, 1.0);
    for (int s = 0; s < 20; ++s) {
        SpinorField phi = random_spinor(box, rng);
        double num = 0.0;
        for (std::size_t q = 0; q < p.V.size(); ++q) {
            const double vm = std::max(-p.V.v[q], 0.0);
            num += vm * (std::norm(phi.c[0][q]) + std::norm(phi.c[1][q]));
        }
        num *= box.wx();
        const SpinorField hphi = apply_multiplier(half, phi);
        const double den = std::real(l2_inner(phi, hphi));
        if (den > 1e-12) a_est = std::max(a_est, num / den);
    }
    p.a_bound = a_est;
    p.b_bound = vminus_max;
    apply_split(p, R);
    return p;
}

double Potential::even_residual() const {
    const SpectralBox& box = V.box;
    double r = 0.0;
    const int n = box.N;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) {
                const double a = V.v[box.idx(i, j, l)];
                const double b =
                    V.v[box.idx(box.negate_index(i), box.negate_index(j), box.negate_index(l))];
                r = std::max(r, std::abs(a - b));
            }
    return r;
}

double Potential::v1_min() const {
    double m = 0.0;
    for (double v : V1.v) m = std::min(m, v);
    return m;
}

double Potential::decomposition_residual() const {
    double r = 0.0;
    for (std::size_t q = 0; q < V.size(); ++q)
        r = std::max(r, std::abs(V1.v[q] + V2.v[q] - V.v[q]));
    return r;
}

double CutoffProfile::chi(double k) const {
    switch (kind) {
        case CutoffKind::one: return 1.0;
        case CutoffKind::sharp: return k <= Lambda ? 1.0 : 0.0;
        case CutoffKind::gaussian: return std::exp(-0.5 * k * k / (sigma * sigma));
        case CutoffKind::custom: return custom_chi(k);
    }
    return 1.0;
}

double CutoffProfile::chi1(double k) const {
    switch (kind) {
        case CutoffKind::one: return 0.0;  // all of chi is the weak part
        case CutoffKind::sharp: return chi(k);
        case CutoffKind::gaussian: return chi(k);
        case CutoffKind::custom: return custom_chi1 ? custom_chi1(k) : 0.0;
    }
    return 0.0;
}

FourierMultiplier CutoffProfile::multiplier(const SpectralBox& box) const {
    return FourierMultiplier::from_radial(box, [this](double k) { return chi(k); });
}

double CutoffProfile::chi1_over_k_l2(const SpectralBox& box) const {
    switch (kind) {
        case CutoffKind::one: return 0.0;
        case CutoffKind::sharp: return std::sqrt(4.0 * kPi * Lambda);
        case CutoffKind::gaussian: return std::sqrt(2.0 * std::pow(kPi, 1.5) * sigma);
        case CutoffKind::custom: {
            double acc = 0.0;
            for_each_mode(box, [&](std::size_t, double kx, double ky, double kz, bool ny) {
                const double k2 = kx * kx + ky * ky + kz * kz;
                if (ny || k2 == 0.0) return;
                const double c1 = chi1(std::sqrt(k2));
                acc += c1 * c1 / k2;
            });
            return std::sqrt(acc * box.wk());
        }
    }
    return 0.0;
}

double CutoffProfile::chi2_over_k_weak_l3(const SpectralBox& box) const {
    switch (kind) {
        case CutoffKind::one: return std::pow(4.0 * kPi / 3.0, 1.0 / 3.0);  // ||1/|k|||_{3,w}
        case CutoffKind::sharp: return 0.0;
        case CutoffKind::gaussian: return 0.0;
        case CutoffKind::custom:
            return lorentz_symbol_norm(box, [this](double k) { return chi2(k) / k; }, 3.0,
                                       std::numeric_limits<double>::infinity());
    }
    return 0.0;
}

double CutoffProfile::chi_over_k_sum_norm(const SpectralBox& box) const {
    return chi1_over_k_l2(box) + chi2_over_k_weak_l3(box);
}

CutoffProfile CutoffProfile::one() { return CutoffProfile{}; }

CutoffProfile CutoffProfile::sharp(double Lambda) {
    if (!(Lambda > 0.0)) throw std::invalid_argument("CutoffProfile::sharp: Lambda must be > 0");
    CutoffProfile c;
    c.kind = CutoffKind::sharp;
    c.Lambda = Lambda;
    return c;
}

CutoffProfile CutoffProfile::gaussian(double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("CutoffProfile::gaussian: sigma must be > 0");
    CutoffProfile c;
    c.kind = CutoffKind::gaussian;
    c.sigma = sigma;
    return c;
}

RealField reflect(const RealField& f) {
    RealField out(f.box);
    const int n = f.box.N;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l)
                out.v[f.box.idx(i, j, l)] =
                    f.v[f.box.idx(f.box.negate_index(i), f.box.negate_index(j),
                                  f.box.negate_index(l))];
    return out;
}

VectorField reflect(const VectorField& f) {
    VectorField out(f.box);
    for (int c = 0; c < 3; ++c) {
        RealField tmp(f.box);
        tmp.v = f.c[c];
        out.c[c] = reflect(tmp).v;
    }
    return out;
}

SpinorField kramers_spinor(const SpinorField& u) {
    SpinorField out(u.box);
    const int n = u.box.N;
    const Complex I(0.0, 1.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) {
                const std::size_t q = u.box.idx(i, j, l);
                const std::size_t qr = u.box.idx(u.box.negate_index(i), u.box.negate_index(j),
                                                 u.box.negate_index(l));
                // sigma_2 conj(u(-x)) with sigma_2 = ((0,-i),(i,0))
                out.c[0][q] = -I * std::conj(u.c[1][qr]);
                out.c[1][q] = I * std::conj(u.c[0][qr]);
            }
    return out;
}

std::pair<SpinorField, VectorField> kramers_conjugate(const SpinorField& u, const VectorField& A) {
    return {kramers_spinor(u), reflect(A)};
}

HypothesisReport hypothesis_report(const ModelConfig& cfg, double empirical_C) {
    HypothesisReport rep;
    rep.potential_even_residual = cfg.potential.even_residual();
    rep.v1_min = cfg.potential.v1_min();
    rep.decomposition_residual = cfg.potential.decomposition_residual();

    double chi_even = 0.0;  // radial profiles are even by construction
    if (cfg.cutoff.kind == CutoffKind::custom && !cfg.cutoff.radial()) chi_even = 1.0;
    rep.chi_even_residual = chi_even;

    rep.chi1_over_k_l2 = cfg.cutoff.chi1_over_k_l2(cfg.box);
    rep.chi2_over_k_weak_l3 = cfg.cutoff.chi2_over_k_weak_l3(cfg.box);
    rep.a_candidate = cfg.potential.a_bound;
    rep.b_candidate = cfg.potential.b_bound;
    rep.g_chi = std::abs(cfg.coupling.g) * (rep.chi1_over_k_l2 + rep.chi2_over_k_weak_l3);

    const double g = cfg.coupling.g;
    rep.smallness_lhs = 32.0 * std::pow(kPi, 3) * rep.a_candidate * empirical_C * empirical_C *
                        g * g * rep.chi2_over_k_weak_l3 * rep.chi2_over_k_weak_l3;
    rep.smallness_ok = rep.smallness_lhs < 1.0;

    const double vscale = std::max(1.0, l2_norm(cfg.potential.V));
    rep.structural_ok = rep.potential_even_residual <= 1e-10 * vscale &&
                        rep.v1_min >= -1e-12 && rep.decomposition_residual <= 1e-10 * vscale &&
                        rep.chi_even_residual == 0.0;
    if (!rep.smallness_ok) rep.note = "smallness condition violated (warning only)";
    return rep;
}

Localization Localization::build(const SpectralBox& box, double R, LocalizationProfile profile) {
    if (!(R > 0.0)) throw std::invalid_argument("Localization: R must be positive");
    Localization loc;
    loc.R = R;

    if (profile == LocalizationProfile::quintic) {
        if (2.0 * R > 0.5 * box.L + 1e-12)
            throw std::invalid_argument("Localization: 2R exceeds the box half-width");
        loc.eta = RealField(box);
        loc.eta_tilde = RealField(box);
        const int n = box.N;
        std::size_t q = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l, ++q) {
                    const double t = min_image_radius(box, i, j, l) / R;
                    const double phi = 0.5 * kPi * quintic_step(t - 1.0);
                    loc.eta.v[q] = std::cos(phi);
                    loc.eta_tilde.v[q] = std::sin(phi);
                }
    } else {
        // Gaussian-mollified ball indicator built directly from analytic
        // spectral samples, then lifted to an exact complementary pair via
        // cos/sin. Keeps both spectra decaying fast so the discrete IMS
        // defect stays at roundoff level.
        const double r0 = 1.5 * R;
        const double sig = 0.30 * R;
        if (2.0 * R + 3.0 * sig > 0.49 * box.L)
            throw std::invalid_argument("Localization: transition does not fit the box");
        ComplexField ek(box);
        for_each_mode(box, [&](std::size_t q, double kx, double ky, double kz, bool ny) {
            if (ny) return;
            const double k = std::sqrt(kx * kx + ky * ky + kz * kz);
            double ball;  // F(1_{B_{r0}})(k)
            if (k < 1e-12) {
                ball = 4.0 * kPi / 3.0 * r0 * r0 * r0;
            } else {
                ball = 4.0 * kPi * (std::sin(k * r0) - k * r0 * std::cos(k * r0)) / (k * k * k);
            }
            ek.v[q] = Complex(std::exp(-0.5 * sig * sig * k * k) * ball, 0.0);
        });
        RealField eta0 = inverse_transform_real(ek);
        loc.eta = RealField(box);
        loc.eta_tilde = RealField(box);
        for (std::size_t q = 0; q < eta0.size(); ++q) {
            const double phi = 0.5 * kPi * (1.0 - eta0.v[q]);
            loc.eta.v[q] = std::cos(phi);
            loc.eta_tilde.v[q] = std::sin(phi);
        }
    }

    // |grad eta|^2 + |grad eta~|^2 with spectral gradients
    loc.grad_sq_sum = RealField(box, 0.0);
    for (const RealField* f : {&loc.eta, &loc.eta_tilde}) {
        ComplexField tmp(box);
        for (std::size_t q = 0; q < f->size(); ++q) tmp.v[q] = Complex(f->v[q], 0.0);
        auto g = gradient(tmp);
        for (int d = 0; d < 3; ++d)
            for (std::size_t q = 0; q < f->size(); ++q)
                loc.grad_sq_sum.v[q] += std::norm(g[d].v[q]);
    }
    return loc;
}

}  // namespace msqed

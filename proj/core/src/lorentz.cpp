#include "msqed/lorentz.hpp"

#include <algorithm>
#include <cmath>

#include "msqed/energy.hpp"
#include "msqed/fft.hpp"
#include "msqed/multiplier.hpp"
#include "msqed/rng.hpp"

namespace msqed {

double lorentz_norm_samples(std::vector<std::pair<double, double>> vm, double p, double q) {
    if (!(p >= 1.0)) throw std::invalid_argument("lorentz_norm: p must be >= 1");
    // keep positive values only
    std::vector<std::pair<double, double>> pos;
    pos.reserve(vm.size());
    for (auto& [v, m] : vm)
        if (v > 0.0 && m > 0.0) pos.emplace_back(v, m);
    if (pos.empty()) {
        if (std::isinf(q)) return 0.0;
        throw std::invalid_argument("lorentz_norm: empty support with finite q");
    }
    std::sort(pos.begin(), pos.end(), [](auto& a, auto& b) { return a.first > b.first; });
    // merge equal values
    std::vector<double> vals, meas;
    for (auto& [v, m] : pos) {
        if (!vals.empty() && vals.back() == v) meas.back() += m;
        else {
            vals.push_back(v);
            meas.push_back(m);
        }
    }
    const std::size_t n = vals.size();
    if (std::isinf(q)) {
        double cum = 0.0, best = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cum += meas[i];
            best = std::max(best, std::pow(cum, 1.0 / p) * vals[i]);
        }
        return best;
    }
    // ||f||^q = (p/q) sum_i M_i^{q/p} (v_i^q - v_{i+1}^q), exact for simple functions
    double cum = 0.0, acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cum += meas[i];
        const double vq = std::pow(vals[i], q);
        const double vq1 = (i + 1 < n) ? std::pow(vals[i + 1], q) : 0.0;
        acc += std::pow(cum, q / p) * (vq - vq1);
    }
    return std::pow(acc * p / q, 1.0 / q);
}

double lorentz_norm(const RealField& f, double p, double q) {
    std::vector<std::pair<double, double>> vm;
    vm.reserve(f.size());
    const double w = f.box.wx();
    for (double x : f.v) vm.emplace_back(std::abs(x), w);
    return lorentz_norm_samples(std::move(vm), p, q);
}

double lorentz_norm_k(const SpectralBox& box, const std::function<double(double)>& radial_abs,
                      double p, double q) {
    std::vector<std::pair<double, double>> vm;
    vm.reserve(box.size());
    const double w = box.wk();
    for_each_mode(box, [&](std::size_t, double kx, double ky, double kz, bool ny) {
        const double k2 = kx * kx + ky * ky + kz * kz;
        if (ny || k2 == 0.0) return;
        vm.emplace_back(std::abs(radial_abs(std::sqrt(k2))), w);
    });
    return lorentz_norm_samples(std::move(vm), p, q);
}

double lorentz_power_symbol_norm(const SpectralBox& box, double alpha, double K, double p,
                                 double q) {
    if (!(alpha > 0.0)) throw std::invalid_argument("power symbol: alpha must be > 0");
    if (!std::isinf(q))
        throw std::invalid_argument("power symbol correction implemented for q = inf only");
    const double band = std::min(K, box.k_band());
    // Analytic regime |k| < r_c (small-ball correction): lambda({|k|^-a > t}) =
    // (4 pi/3) t^{-3/a}, so lambda^{1/p} t = (4 pi/3)^{1/p} t^{1 - 3/(a p)}.
    const double rc = std::min(4.5 * box.dk(), band);
    const double t_at_rc = std::pow(rc, -alpha);
    const double t_max = 1e6 * t_at_rc;  // effectively t -> inf
    const double e = 1.0 - 3.0 / (alpha * p);
    double best = 0.0;
    auto cont = [&](double t) { return std::pow(4.0 * kPi / 3.0, 1.0 / p) * std::pow(t, e); };
    best = std::max(cont(t_at_rc), cont(t_max));
    // Grid regime: count whole cells with |k| >= rc, plus the analytic ball.
    std::vector<double> kmags;
    for_each_mode(box, [&](std::size_t, double kx, double ky, double kz, bool ny) {
        const double k = std::sqrt(kx * kx + ky * ky + kz * kz);
        if (ny || k == 0.0 || k < rc || k > band) return;
        kmags.push_back(k);
    });
    std::sort(kmags.begin(), kmags.end());
    const double wk = box.wk();
    const double ball = 4.0 * kPi / 3.0 * rc * rc * rc;
    // jumps of the distribution function occur at t = k^-alpha
    for (std::size_t i = 0; i < kmags.size(); ++i) {
        // t just below kmags[i]^-alpha: set {|k| <= kmags[i]} counted
        const double t = std::pow(kmags[i], -alpha);
        const double lam = ball + wk * static_cast<double>(i + 1);
        best = std::max(best, std::pow(lam, 1.0 / p) * t);
    }
    return best;
}

SymbolNormEstimate lorentz_symbol_norm_est(const SpectralBox& box,
                                           const std::function<double(double)>& radial_abs,
                                           double p, double q) {
    SymbolNormEstimate est;
    est.value = lorentz_norm_k(box, radial_abs, p, q);
    est.band_only_caveat = true;
    return est;
}

double lorentz_symbol_norm(const SpectralBox& box, const std::function<double(double)>& radial_abs,
                           double p, double q) {
    return lorentz_symbol_norm_est(box, radial_abs, p, q).value;
}

double linf_l62_norm(const ComplexField& coeffs) {
    double sup = 0.0;
    std::vector<std::pair<double, double>> vm;
    vm.reserve(coeffs.size());
    const double w = coeffs.box.wk();
    for (const auto& z : coeffs.v) {
        const double a = std::abs(z);
        sup = std::max(sup, a);
        vm.emplace_back(a, w);
    }
    double l62 = 0.0;
    try {
        l62 = lorentz_norm_samples(std::move(vm), 6.0, 2.0);
    } catch (const std::invalid_argument&) {
        l62 = 0.0;  // zero field
    }
    return std::max(sup, l62);
}

namespace {

RealField structured_sample(const SpectralBox& box, Rng& rng) {
    const int family = rng.index(3);
    const double amp = std::exp(rng.uniform(-1.0, 2.0));
    RealField f(box);
    const int n = box.N;
    if (family == 0) {  // ball indicator
        const double r0 = rng.uniform(0.08, 0.45) * box.L * 0.5;
        std::size_t q = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l, ++q)
                    f.v[q] = min_image_radius(box, i, j, l) <= r0 ? amp : 0.0;
    } else if (family == 1) {  // capped power law
        const double beta = rng.uniform(0.3, 1.4);
        const double cap = box.dx();
        std::size_t q = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l, ++q) {
                    const double r = std::max(min_image_radius(box, i, j, l), cap);
                    f.v[q] = amp * std::pow(r, -beta);
                }
    } else {  // Gaussian
        const double w = rng.uniform(0.3, 0.2 * box.L);
        std::size_t q = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l, ++q) {
                    const double r = min_image_radius(box, i, j, l);
                    f.v[q] = amp * std::exp(-r * r / (2.0 * w * w));
                }
    }
    return f;
}

}  // namespace

SamplerReport holder_young_sampler(const SpectralBox& box, ProductKind kind, double p1, double q1,
                                   double p2, double q2, int n_samples, std::uint64_t seed) {
    if (!(p1 >= 1.0) || !(p2 >= 1.0) || std::isinf(p1) || std::isinf(p2))
        throw std::invalid_argument("sampler: need 1 <= p1, p2 < inf");
    double p, q;
    if (kind == ProductKind::holder) {
        p = 1.0 / (1.0 / p1 + 1.0 / p2);
    } else {
        const double ip = 1.0 / p1 + 1.0 / p2 - 1.0;
        if (!(ip > 0.0) || !(p1 > 1.0) || !(p2 > 1.0))
            throw std::invalid_argument("sampler: Young exponent relation violated");
        p = 1.0 / ip;
        if (p <= 1.0 || std::isinf(p)) throw std::invalid_argument("sampler: Young needs 1 < p < inf");
    }
    const double iq = (std::isinf(q1) ? 0.0 : 1.0 / q1) + (std::isinf(q2) ? 0.0 : 1.0 / q2);
    q = iq == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / iq;

    SamplerReport rep;
    rep.n_samples = n_samples;
    Rng rng(seed);
    for (int s = 0; s < n_samples; ++s) {
        RealField f1 = structured_sample(box, rng);
        RealField f2 = structured_sample(box, rng);
        const double n1 = lorentz_norm(f1, p1, q1);
        const double n2 = lorentz_norm(f2, p2, q2);
        if (n1 <= 0.0 || n2 <= 0.0) {
            ++rep.n_degenerate;
            continue;
        }
        RealField prod(box);
        if (kind == ProductKind::holder) {
            for (std::size_t x = 0; x < prod.size(); ++x) prod.v[x] = f1.v[x] * f2.v[x];
        } else {
            ComplexField a = forward_transform(f1);
            ComplexField b = forward_transform(f2);
            for (std::size_t x = 0; x < a.size(); ++x) a.v[x] *= b.v[x];
            prod = inverse_transform_real(a);
        }
        double np;
        try {
            np = lorentz_norm(prod, p, q);
        } catch (const std::invalid_argument&) {
            np = 0.0;  // disjoint supports
        }
        const double ratio = np / (n1 * n2);
        rep.ratios.push_back(ratio);
        rep.worst_ratio = std::max(rep.worst_ratio, ratio);
    }
    return rep;
}

Lemma24Estimate estimate_lemma24_constant(const SpectralBox& box, const CutoffProfile& cutoff,
                                          int n_samples, std::uint64_t seed) {
    Lemma24Estimate est;
    est.n_samples = n_samples;
    Rng rng(seed);
    const FourierMultiplier chi = cutoff.multiplier(box);
    const double c1 = cutoff.chi1_over_k_l2(box);
    const double c2 = cutoff.chi2_over_k_weak_l3(box);
    for (int s = 0; s < n_samples; ++s) {
        RandomFieldOptions opt;
        opt.k_smooth = rng.uniform(0.5, 0.5 * box.k_band());  // includes concentrated samples
        SpinorField u = random_spinor(box, rng, opt);
        VectorField A = random_vector_potential(box, rng, 1.0, opt);
        const VectorField chiA = apply_multiplier(chi, A);
        double num_sq = 0.0;  // ||(chi*A) u||^2 summed over vector components
        for (int d = 0; d < 3; ++d) {
            SpinorField t = u;
            RealField comp(box);
            comp.v = chiA.c[d];
            pointwise_multiply(comp, t);
            num_sq += l2_norm_sq(t);
        }
        const double uh = sobolev_norm(u, 0.5);
        const double den = sobolev_norm(A, 1.0) * (c1 * std::sqrt(l2_norm_sq(u)) + c2 * uh);
        if (den <= 1e-14) continue;
        const double ratio = std::sqrt(num_sq) / den;
        est.ratios.push_back(ratio);
        est.C = std::max(est.C, ratio);
    }
    return est;
}

Lemma25Constants estimate_lemma25_constants(const SpectralBox& box, const CutoffProfile& cutoff,
                                            int n_samples, std::uint64_t seed) {
    Lemma25Constants cs;
    cs.n_samples = n_samples;
    Rng rng(seed);
    const FourierMultiplier chi = cutoff.multiplier(box);
    const double chi_sum = cutoff.chi_over_k_sum_norm(box);
    for (int s = 0; s < n_samples; ++s) {
        // eq 27 with mean-zero w
        RealField w = random_real_field(box, rng);
        double mean = 0.0;
        for (double x : w.v) mean += x;
        mean /= static_cast<double>(w.size());
        for (auto& x : w.v) x -= mean;
        const RealField cw = apply_multiplier(chi, w);
        const double lhs27 = sobolev_norm(cw, -1.0);
        const double rhs27 = chi_sum * linf_l62_norm(forward_transform(w));
        if (rhs27 > 1e-14) cs.C_convolution = std::max(cs.C_convolution, lhs27 / rhs27);

        // eq 28
        SpinorField s1 = random_spinor(box, rng);
        SpinorField s2 = random_spinor(box, rng);
        ComplexField u1(box), u2(box);
        u1.v = s1.c[0];
        u2.v = s2.c[0];
        ComplexField prod(box);
        for (std::size_t x = 0; x < prod.size(); ++x) prod.v[x] = u1.v[x] * u2.v[x];
        ComplexField pk = forward_transform(prod);
        const double Lambda = rng.uniform(0.25, 1.0) * box.k_band();
        for_each_mode(box, [&](std::size_t q, double kx, double ky, double kz, bool) {
            if (kx * kx + ky * ky + kz * kz > Lambda * Lambda) pk.v[q] = 0.0;
        });
        const double lhs28 = linf_l62_norm(pk);
        const double h1 = std::sqrt(l2_norm_sq(u2) + std::pow(sobolev_norm(u2, 1.0), 2));
        const double rhs28 = std::sqrt(l2_norm_sq(u1)) * h1;
        if (rhs28 > 1e-14) cs.C_product = std::max(cs.C_product, lhs28 / rhs28);
    }
    return cs;
}

Lemma25Slack lemma25_check(const CutoffProfile& cutoff, const RealField& w, const ComplexField& u1,
                           const ComplexField& u2, double Lambda, const Lemma25Constants& C) {
    const SpectralBox& box = w.box;
    const FourierMultiplier chi = cutoff.multiplier(box);
    Lemma25Slack out;
    const RealField cw = apply_multiplier(chi, w);
    const double lhs27 = sobolev_norm(cw, -1.0);
    out.slack_convolution =
        C.C_convolution * cutoff.chi_over_k_sum_norm(box) * linf_l62_norm(forward_transform(w)) -
        lhs27;
    ComplexField prod(box);
    for (std::size_t x = 0; x < prod.size(); ++x) prod.v[x] = u1.v[x] * u2.v[x];
    ComplexField pk = forward_transform(prod);
    for_each_mode(box, [&](std::size_t q, double kx, double ky, double kz, bool) {
        if (kx * kx + ky * ky + kz * kz > Lambda * Lambda) pk.v[q] = 0.0;
    });
    const double h1 = std::sqrt(l2_norm_sq(u2) + std::pow(sobolev_norm(u2, 1.0), 2));
    out.slack_product =
        C.C_product * std::sqrt(l2_norm_sq(u1)) * h1 - linf_l62_norm(pk);
    return out;
}

CoercivityCertificate coercivity_certificate(const CoercivityInputs& in) {
    CoercivityCertificate cert;
    cert.in = in;
    const double inv32 = 1.0 / (32.0 * std::pow(kPi, 3));
    const double twoeps =
        inv32 - in.C * in.C * in.a * in.g * in.g * in.chi2_weak * in.chi2_weak;
    cert.threshold = 16.0 * (2.0 + in.a) * (2.0 + in.a);
    if (twoeps <= 0.0) {
        cert.granted = false;
        cert.refusal = "smallness condition violated: 32 pi^3 a C^2 g^2 ||chi2/|k|||^2 >= 1";
        return cert;
    }
    cert.eps = 0.5 * twoeps;
    const double denom =
        std::max(4.0, 32.0 * in.g * in.g * in.C * in.C * in.chi_sum * in.chi_sum);
    cert.C1 = cert.eps / denom;
    cert.C2 = in.b + in.a * in.a *
                         (1.0 + in.C * in.C * in.g * in.g * in.chi1_l2 * in.chi1_l2 / cert.eps);
    cert.granted = true;
    return cert;
}

SpotCheckReport coercivity_spot_check(const CoercivityCertificate& cert, const ModelConfig& cfg,
                                      int n_samples, std::uint64_t seed) {
    SpotCheckReport rep;
    if (!cert.granted) return rep;
    Rng rng(seed);
    for (int s = 0; s < n_samples; ++s) {
        SpinorField u = random_spinor(cfg.box, rng);
        const double uh1 = h1_norm_sq(u);
        double uv = 0.0;
        for (std::size_t q = 0; q < cfg.potential.V.size(); ++q) {
            const double vp = std::max(cfg.potential.V.v[q], 0.0);
            uv += vp * (std::norm(u.c[0][q]) + std::norm(u.c[1][q]));
        }
        uv *= cfg.box.wx();
        const double target = cert.threshold * rng.uniform(1.0, 4.0);
        const double need = target * target - uh1 - uv;
        const double anorm = need > 0.0 ? std::sqrt(need) : 1.0;
        VectorField A = random_vector_potential(cfg.box, rng, anorm);
        const double total_norm = std::sqrt(uh1 + uv + std::pow(sobolev_norm(A, 1.0), 2));
        if (total_norm < cert.threshold) continue;  // could not reach the radius; skip
        ++rep.n_total;
        const EnergyBreakdown eb = energy(u, A, cfg);
        const double margin = eb.total - (cert.C1 * total_norm - cert.C2);
        rep.min_margin = std::min(rep.min_margin, margin);
        if (margin >= -1e-9 * std::max(1.0, std::abs(eb.total))) ++rep.n_pass;
    }
    return rep;
}

}  // namespace msqed

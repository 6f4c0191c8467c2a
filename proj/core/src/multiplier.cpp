#include "msqed/multiplier.hpp"

#include <cmath>

namespace msqed {

FourierMultiplier FourierMultiplier::from_symbol(
    const SpectralBox& box, const std::function<Complex(double, double, double)>& fn,
    Parity parity) {
    FourierMultiplier out;
    out.box = box;
    out.parity = parity;
    out.m.resize(box.size());
    bool bad = false;
    for_each_mode(box, [&](std::size_t q, double kx, double ky, double kz, bool) {
        const Complex z = fn(kx, ky, kz);
        if (std::isnan(z.real()) || std::isnan(z.imag())) bad = true;
        out.m[q] = z;
    });
    if (bad) throw std::invalid_argument("FourierMultiplier: NaN in multiplier samples");
    return out;
}

FourierMultiplier FourierMultiplier::from_radial(const SpectralBox& box,
                                                 const std::function<double(double)>& fn) {
    return from_symbol(
        box,
        [&](double kx, double ky, double kz) {
            return Complex(fn(std::sqrt(kx * kx + ky * ky + kz * kz)), 0.0);
        },
        Parity::even);
}

FourierMultiplier FourierMultiplier::one(const SpectralBox& box) {
    return from_radial(box, [](double) { return 1.0; });
}

FourierMultiplier FourierMultiplier::band_limit(const SpectralBox& box, double Lambda) {
    return from_radial(box, [Lambda](double k) { return k <= Lambda ? 1.0 : 0.0; });
}

FourierMultiplier FourierMultiplier::band_tail(const SpectralBox& box, double Lambda) {
    return from_radial(box, [Lambda](double k) { return k <= Lambda ? 0.0 : 1.0; });
}

FourierMultiplier FourierMultiplier::power(const SpectralBox& box, double s) {
    return from_radial(box, [s](double k) { return k == 0.0 ? 0.0 : std::pow(k, s); });
}

FourierMultiplier FourierMultiplier::inverse_laplacian(const SpectralBox& box) {
    return power(box, -2.0);
}

bool FourierMultiplier::is_real() const {
    for (const auto& z : m)
        if (z.imag() != 0.0) return false;
    return true;
}

FourierMultiplier operator*(const FourierMultiplier& a, const FourierMultiplier& b) {
    require_same_box(a.box, b.box, "multiplier product");
    FourierMultiplier out = a;
    for (std::size_t q = 0; q < out.m.size(); ++q) out.m[q] *= b.m[q];
    if (a.parity == Parity::even && b.parity == Parity::even) out.parity = Parity::even;
    else if (a.parity == Parity::none || b.parity == Parity::none) out.parity = Parity::none;
    else out.parity = (a.parity == b.parity) ? Parity::even : Parity::odd;
    return out;
}

void zero_nyquist(ComplexField& fk) {
    for_each_mode(fk.box, [&](std::size_t q, double, double, double, bool ny) {
        if (ny) fk.v[q] = Complex(0.0, 0.0);
    });
}

void project_nyquist(SpinorField& u) {
    for (int comp = 0; comp < 2; ++comp) {
        ComplexField tmp(u.box);
        tmp.v = std::move(u.c[comp]);
        ComplexField fk = forward_transform(tmp);
        zero_nyquist(fk);
        u.c[comp] = inverse_transform(fk).v;
    }
}

ComplexField apply_multiplier(const FourierMultiplier& m, const ComplexField& f) {
    require_same_box(m.box, f.box, "apply_multiplier");
    ComplexField fk = forward_transform(f);
    for (std::size_t q = 0; q < fk.size(); ++q) fk.v[q] *= m.m[q];
    zero_nyquist(fk);
    return inverse_transform(fk);
}

RealField apply_multiplier(const FourierMultiplier& m, const RealField& f) {
    require_same_box(m.box, f.box, "apply_multiplier");
    ComplexField fk = forward_transform(f);
    for (std::size_t q = 0; q < fk.size(); ++q) fk.v[q] *= m.m[q];
    zero_nyquist(fk);
    return inverse_transform_real(fk);
}

VectorField apply_multiplier(const FourierMultiplier& m, const VectorField& f) {
    require_same_box(m.box, f.box, "apply_multiplier");
    VectorField out(f.box);
    for (int comp = 0; comp < 3; ++comp) {
        RealField tmp(f.box);
        tmp.v = f.c[comp];
        out.c[comp] = apply_multiplier(m, tmp).v;
    }
    return out;
}

SpinorField apply_multiplier(const FourierMultiplier& m, const SpinorField& f) {
    require_same_box(m.box, f.box, "apply_multiplier");
    SpinorField out(f.box);
    for (int comp = 0; comp < 2; ++comp) {
        ComplexField tmp(f.box);
        tmp.v = f.c[comp];
        out.c[comp] = apply_multiplier(m, tmp).v;
    }
    return out;
}

std::array<ComplexField, 3> gradient(const ComplexField& f) {
    ComplexField fk = forward_transform(f);
    zero_nyquist(fk);
    std::array<ComplexField, 3> out{ComplexField(f.box), ComplexField(f.box), ComplexField(f.box)};
    const Complex I(0.0, 1.0);
    for (int d = 0; d < 3; ++d) {
        ComplexField gk(f.box);
        for_each_mode(f.box, [&](std::size_t q, double kx, double ky, double kz, bool) {
            const double kd = d == 0 ? kx : (d == 1 ? ky : kz);
            gk.v[q] = I * kd * fk.v[q];
        });
        out[d] = inverse_transform(gk);
    }
    return out;
}

std::array<SpinorField, 3> gradient(const SpinorField& f) {
    std::array<SpinorField, 3> out{SpinorField(f.box), SpinorField(f.box), SpinorField(f.box)};
    for (int comp = 0; comp < 2; ++comp) {
        ComplexField tmp(f.box);
        tmp.v = f.c[comp];
        auto g = gradient(tmp);
        for (int d = 0; d < 3; ++d) out[d].c[comp] = std::move(g[d].v);
    }
    return out;
}

std::array<SpinorField, 3> momentum(const SpinorField& f) {
    auto g = gradient(f);
    const Complex mi(0.0, -1.0);
    for (int d = 0; d < 3; ++d) scale(g[d], mi);
    return g;
}

VectorField curl(const VectorField& A) {
    std::array<ComplexField, 3> ak;
    for (int c = 0; c < 3; ++c) {
        RealField tmp(A.box);
        tmp.v = A.c[c];
        ak[c] = forward_transform(tmp);
        zero_nyquist(ak[c]);
    }
    VectorField out(A.box);
    const Complex I(0.0, 1.0);
    for (int c = 0; c < 3; ++c) {
        const int a = (c + 1) % 3, b = (c + 2) % 3;
        ComplexField bk(A.box);
        for_each_mode(A.box, [&](std::size_t q, double kx, double ky, double kz, bool) {
            const double k[3] = {kx, ky, kz};
            bk.v[q] = I * (k[a] * ak[b].v[q] - k[b] * ak[a].v[q]);
        });
        out.c[c] = inverse_transform_real(bk).v;
    }
    return out;
}

RealField divergence(const VectorField& A) {
    ComplexField dk(A.box);
    const Complex I(0.0, 1.0);
    for (int c = 0; c < 3; ++c) {
        RealField tmp(A.box);
        tmp.v = A.c[c];
        ComplexField ak = forward_transform(tmp);
        zero_nyquist(ak);
        for_each_mode(A.box, [&](std::size_t q, double kx, double ky, double kz, bool) {
            const double k[3] = {kx, ky, kz};
            dk.v[q] += I * k[c] * ak.v[q];
        });
    }
    return inverse_transform_real(dk);
}

double divergence_defect(const VectorField& A) {
    std::array<ComplexField, 3> ak;
    for (int c = 0; c < 3; ++c) {
        RealField tmp(A.box);
        tmp.v = A.c[c];
        ak[c] = forward_transform(tmp);
    }
    double dot = 0.0, tot = 0.0;
    for_each_mode(A.box, [&](std::size_t q, double kx, double ky, double kz, bool ny) {
        if (ny) return;
        const Complex d = kx * ak[0].v[q] + ky * ak[1].v[q] + kz * ak[2].v[q];
        dot += std::norm(d);
        tot += (kx * kx + ky * ky + kz * kz) *
               (std::norm(ak[0].v[q]) + std::norm(ak[1].v[q]) + std::norm(ak[2].v[q]));
    });
    if (tot == 0.0) return 0.0;
    return std::sqrt(dot / tot);
}

VectorField leray_project(const VectorField& A) {
    std::array<ComplexField, 3> ak;
    for (int c = 0; c < 3; ++c) {
        RealField tmp(A.box);
        tmp.v = A.c[c];
        ak[c] = forward_transform(tmp);
    }
    std::array<ComplexField, 3> pk{ComplexField(A.box), ComplexField(A.box), ComplexField(A.box)};
    for_each_mode(A.box, [&](std::size_t q, double kx, double ky, double kz, bool ny) {
        const double k2 = kx * kx + ky * ky + kz * kz;
        if (ny || k2 == 0.0) return;  // zero mode and Nyquist are dropped
        const double k[3] = {kx, ky, kz};
        const Complex kdot = (kx * ak[0].v[q] + ky * ak[1].v[q] + kz * ak[2].v[q]) / k2;
        for (int c = 0; c < 3; ++c) pk[c].v[q] = ak[c].v[q] - k[c] * kdot;
    });
    VectorField out(A.box);
    for (int c = 0; c < 3; ++c) out.c[c] = inverse_transform_real(pk[c]).v;
    return out;
}

namespace {

double sobolev_from_coeffs(const std::vector<const ComplexField*>& comps, double s) {
    const SpectralBox& box = comps.front()->box;
    if (s < 0.0) {
        double zero = 0.0, tot = 0.0;
        for (const auto* f : comps) {
            zero += std::norm(f->v[0]);
            tot += l2_norm_sq(*f);
        }
        // fhat(0) = mean * L^3; compare against the field size
        if (tot > 0.0 && std::sqrt(zero) > 1e-10 * std::sqrt(tot) * box.L * box.L * box.L) {
            throw std::invalid_argument("sobolev_norm: nonzero mean with s < 0");
        }
    }
    double acc = 0.0;
    for (const auto* f : comps) {
        for_each_mode(box, [&](std::size_t q, double kx, double ky, double kz, bool) {
            const double k2 = kx * kx + ky * ky + kz * kz;
            if (k2 == 0.0) return;
            acc += std::pow(k2, s) * std::norm(f->v[q]);
        });
    }
    const double c = box.wk() / std::pow(2.0 * kPi, 3);
    return acc * c;
}

}  // namespace

double sobolev_norm(const ComplexField& f, double s) {
    ComplexField fk = forward_transform(f);
    return std::sqrt(sobolev_from_coeffs({&fk}, s));
}

double sobolev_norm(const RealField& f, double s) {
    ComplexField fk = forward_transform(f);
    return std::sqrt(sobolev_from_coeffs({&fk}, s));
}

double sobolev_norm_sq(const VectorField& f, double s) {
    std::array<ComplexField, 3> fk;
    for (int c = 0; c < 3; ++c) {
        RealField tmp(f.box);
        tmp.v = f.c[c];
        fk[c] = forward_transform(tmp);
    }
    return sobolev_from_coeffs({&fk[0], &fk[1], &fk[2]}, s);
}

double sobolev_norm(const VectorField& f, double s) { return std::sqrt(sobolev_norm_sq(f, s)); }

double sobolev_norm(const SpinorField& f, double s) {
    std::array<ComplexField, 2> fk;
    for (int c = 0; c < 2; ++c) {
        ComplexField tmp(f.box);
        tmp.v = f.c[c];
        fk[c] = forward_transform(tmp);
    }
    return std::sqrt(sobolev_from_coeffs({&fk[0], &fk[1]}, s));
}

double h1_norm_sq(const SpinorField& u) {
    const double s1 = sobolev_norm(u, 1.0);
    return l2_norm_sq(u) + s1 * s1;
}

}  // namespace msqed

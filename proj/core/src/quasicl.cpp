#include "msqed/quasicl.hpp"

#include <cmath>

#include "msqed/fft.hpp"

namespace msqed {
namespace {

constexpr double k16pi3 = 16.0 * kPi * kPi * kPi;

std::size_t negated_flat(const SpectralBox& box, int i, int j, int l) {
    return box.idx(box.negate_index(i), box.negate_index(j), box.negate_index(l));
}

}  // namespace

PhotonParameter PhotonParameter::from_components(const SpectralBox& box,
                                                 const std::array<ComplexField, 3>& raw) {
    PhotonParameter p;
    p.box = box;
    for (int c = 0; c < 3; ++c) {
        require_same_box(box, raw[c].box, "PhotonParameter");
        p.f[c] = raw[c];
    }
    for_each_mode(box, [&](std::size_t q, double kx, double ky, double kz, bool ny) {
        const double k2 = kx * kx + ky * ky + kz * kz;
        if (ny || k2 == 0.0) {
            for (int c = 0; c < 3; ++c) p.f[c].v[q] = Complex(0.0, 0.0);
            return;
        }
        const Complex kdot = (kx * p.f[0].v[q] + ky * p.f[1].v[q] + kz * p.f[2].v[q]) / k2;
        p.f[0].v[q] -= kx * kdot;
        p.f[1].v[q] -= ky * kdot;
        p.f[2].v[q] -= kz * kdot;
    });
    p.refresh_split();
    return p;
}

PhotonParameter PhotonParameter::zero(const SpectralBox& box) {
    std::array<ComplexField, 3> z{ComplexField(box), ComplexField(box), ComplexField(box)};
    return from_components(box, z);
}

void PhotonParameter::refresh_split() {
    const int n = box.N;
    for (int c = 0; c < 3; ++c) {
        f_plus[c] = ComplexField(box);
        f_minus[c] = ComplexField(box);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) {
                const std::size_t q = box.idx(i, j, l);
                const std::size_t qn = negated_flat(box, i, j, l);
                for (int c = 0; c < 3; ++c) {
                    const Complex a = f[c].v[q];
                    const Complex b = std::conj(f[c].v[qn]);
                    f_plus[c].v[q] = 0.5 * (a + b);
                    f_minus[c].v[q] = 0.5 * (a - b);
                }
            }
}

double PhotonParameter::transversality_defect() const {
    double worst = 0.0;
    for_each_mode(box, [&](std::size_t q, double kx, double ky, double kz, bool ny) {
        const double k2 = kx * kx + ky * ky + kz * kz;
        if (ny || k2 == 0.0) return;
        const Complex kdot = kx * f[0].v[q] + ky * f[1].v[q] + kz * f[2].v[q];
        const double fmag = std::sqrt(std::norm(f[0].v[q]) + std::norm(f[1].v[q]) +
                                      std::norm(f[2].v[q]));
        if (fmag > 0.0) worst = std::max(worst, std::abs(kdot) / (std::sqrt(k2) * fmag));
    });
    return worst;
}

Complex photon_inner(const std::array<ComplexField, 3>& a, const std::array<ComplexField, 3>& b,
                     const std::function<double(double)>& weight) {
    const SpectralBox& box = a[0].box;
    Complex acc{};
    for_each_mode(box, [&](std::size_t q, double kx, double ky, double kz, bool) {
        const double k = std::sqrt(kx * kx + ky * ky + kz * kz);
        const double w = weight(k);
        for (int c = 0; c < 3; ++c) acc += w * std::conj(a[c].v[q]) * b[c].v[q];
    });
    return acc * box.wk();
}

double photon_norm_sq(const std::array<ComplexField, 3>& a) {
    return photon_inner(a, a, [](double) { return 1.0; }).real();
}

VectorField potential_from_parameter(const PhotonParameter& f) {
    if (f.transversality_defect() > 1e-10)
        throw std::invalid_argument("potential_from_parameter: transversality violation");
    VectorField A(f.box);
    for (int c = 0; c < 3; ++c) {
        ComplexField ak(f.box);
        for_each_mode(f.box, [&](std::size_t q, double kx, double ky, double kz, bool ny) {
            const double k2 = kx * kx + ky * ky + kz * kz;
            if (ny || k2 == 0.0) return;
            ak.v[q] = 2.0 * 8.0 * kPi * kPi * kPi * f.f_plus[c].v[q] / std::pow(k2, 0.25);
        });
        A.c[c] = inverse_transform_real(ak).v;
    }
    return A;
}

PhotonParameter parameter_from_potential(const VectorField& A) {
    if (divergence_defect(A) > 1e-8)
        throw std::invalid_argument("parameter_from_potential: divergence violation");
    std::array<ComplexField, 3> f{ComplexField(A.box), ComplexField(A.box), ComplexField(A.box)};
    for (int c = 0; c < 3; ++c) {
        RealField tmp(A.box);
        tmp.v = A.c[c];
        ComplexField ak = forward_transform(tmp);
        for_each_mode(A.box, [&](std::size_t q, double kx, double ky, double kz, bool ny) {
            const double k2 = kx * kx + ky * ky + kz * kz;
            if (ny || k2 == 0.0) {
                f[c].v[q] = Complex(0.0, 0.0);
                return;
            }
            f[c].v[q] = std::pow(k2, 0.25) * ak.v[q] / k16pi3;
        });
    }
    return PhotonParameter::from_components(A.box, f);
}

NormalOrderingConstant normal_ordering_constant(const ModelConfig& cfg) {
    NormalOrderingConstant out;
    const double g = cfg.coupling.g;
    const double Lambda =
        cfg.coupling.Lambda ? *cfg.coupling.Lambda : std::numeric_limits<double>::infinity();
    double acc = 0.0;
    for_each_mode(cfg.box, [&](std::size_t, double kx, double ky, double kz, bool ny) {
        const double k = std::sqrt(kx * kx + ky * ky + kz * kz);
        if (ny || k == 0.0 || k > Lambda) return;
        const double chi = cfg.cutoff.chi(k);
        acc += chi * chi / k;
    });
    out.value = 2.0 * g * g * acc * cfg.box.wk();
    // With no UV parameter and a non-decaying profile the continuum constant
    // diverges; the grid band then acts as the cutoff.
    out.band_limited = !cfg.coupling.Lambda &&
                       (cfg.cutoff.kind == CutoffKind::one || cfg.cutoff.kind == CutoffKind::custom);
    return out;
}

ProductStateEnergy product_state_energy(const SpinorField& u, const PhotonParameter& f,
                                        const ModelConfig& cfg) {
    ProductStateEnergy out;
    out.constant = normal_ordering_constant(cfg).value;
    out.f_minus_energy =
        photon_inner(f.f_minus, f.f_minus, [](double k) { return k; }).real();
    const VectorField A = potential_from_parameter(f);
    out.electron = cfg.coupling.Lambda ? energy_cutoff(u, A, cfg) : energy_unchecked(u, A, cfg);
    out.total = out.constant + out.f_minus_energy + out.electron.total;
    return out;
}

std::array<std::array<double, 3>, 2> polarization_frame(double kx, double ky, double kz) {
    const double kmag = std::sqrt(kx * kx + ky * ky + kz * kz);
    if (kmag == 0.0) throw std::invalid_argument("polarization_frame: k = 0");
    const double kh[3] = {kx / kmag, ky / kmag, kz / kmag};
    // e1 ~ k x z-hat unless k is along z, then x-hat fallback
    double e1[3] = {ky, -kx, 0.0};
    const double n1 = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1]);
    if (n1 < 1e-12 * kmag) {
        e1[0] = 1.0;
        e1[1] = 0.0;
        e1[2] = 0.0;
    } else {
        e1[0] /= n1;
        e1[1] /= n1;
    }
    std::array<std::array<double, 3>, 2> frame{};
    frame[0] = {e1[0], e1[1], e1[2]};
    frame[1] = {kh[1] * e1[2] - kh[2] * e1[1], kh[2] * e1[0] - kh[0] * e1[2],
                kh[0] * e1[1] - kh[1] * e1[0]};
    return frame;
}

}  // namespace msqed

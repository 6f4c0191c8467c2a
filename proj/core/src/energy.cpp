#include "msqed/energy.hpp"

#include <cmath>

namespace msqed {
namespace {

constexpr double k32pi3 = 32.0 * kPi * kPi * kPi;

/// t_j = (-i d_j - g (chi*A)_j) u for j = 0,1,2.
std::array<SpinorField, 3> covariant_momentum(const SpinorField& u, const VectorField& chiA,
                                              double g) {
    auto t = momentum(u);
    if (g != 0.0) {
        for (int d = 0; d < 3; ++d) {
            RealField comp(chiA.box);
            comp.v = chiA.c[d];
            SpinorField au = u;
            pointwise_multiply(comp, au);
            axpy(Complex(-g, 0.0), au, t[d]);
        }
    }
    return t;
}

}  // namespace

PauliOperator::PauliOperator(const ModelConfig& cfg, const VectorField& A)
    : box_(cfg.box), V_(cfg.potential.V), g_(cfg.coupling.g) {
    require_same_box(cfg.box, A.box, "PauliOperator");
    const FourierMultiplier chi = cfg.cutoff.multiplier(box_);
    chi_A_ = apply_multiplier(chi, A);
    chi_B_ = apply_multiplier(chi, curl(A));
    const double h1 = sobolev_norm(A, 1.0);
    field_energy_ = h1 * h1 / k32pi3;
}

PauliOperator::PauliOperator(const SpectralBox& box, const RealField& V)
    : box_(box), V_(V), chi_A_(box), chi_B_(box), g_(0.0), field_energy_(0.0) {}

SpinorField PauliOperator::apply(const SpinorField& u) const {
    require_same_box(box_, u.box, "PauliOperator::apply");
    auto t = covariant_momentum(u, chi_A_, g_);
    // (-i d_j - g A_j) t_j summed over j
    SpinorField out(box_);
    for (int d = 0; d < 3; ++d) {
        auto dt = momentum(t[d]);
        axpy(Complex(1.0, 0.0), dt[d], out);
        if (g_ != 0.0) {
            RealField comp(box_);
            comp.v = chi_A_.c[d];
            SpinorField at = t[d];
            pointwise_multiply(comp, at);
            axpy(Complex(-g_, 0.0), at, out);
        }
    }
    if (g_ != 0.0) {
        // -g sigma.(chi*B) u
        std::array<SpinorField, 3> su{sigma_apply(0, u), sigma_apply(1, u), sigma_apply(2, u)};
        for (int d = 0; d < 3; ++d) {
            RealField comp(box_);
            comp.v = chi_B_.c[d];
            pointwise_multiply(comp, su[d]);
            axpy(Complex(-g_, 0.0), su[d], out);
        }
    }
    SpinorField vu = u;
    pointwise_multiply(V_, vu);
    axpy(Complex(1.0, 0.0), vu, out);
    // restrict to the Nyquist-free subspace: pointwise products (V u, A u)
    // repopulate the planes every multiplier zeroes
    project_nyquist(out);
    return out;
}

EnergyBreakdown energy_unchecked(const SpinorField& u, const VectorField& A,
                                 const ModelConfig& cfg) {
    require_same_box(u.box, A.box, "energy");
    require_same_box(u.box, cfg.box, "energy");
    const double g = cfg.coupling.g;
    const FourierMultiplier chi = cfg.cutoff.multiplier(cfg.box);
    const VectorField chiA = apply_multiplier(chi, A);

    EnergyBreakdown eb;
    const auto grad = gradient(u);

    // e1 = ||grad u||^2 + <u, V u>
    double kin = 0.0;
    for (int d = 0; d < 3; ++d) kin += l2_norm_sq(grad[d]);
    double pot = 0.0;
    for (std::size_t q = 0; q < cfg.potential.V.size(); ++q)
        pot += cfg.potential.V.v[q] * (std::norm(u.c[0][q]) + std::norm(u.c[1][q]));
    pot *= cfg.box.wx();
    eb.e1 = kin + pot;

    const double h1A = sobolev_norm(A, 1.0);
    eb.e2 = h1A * h1A;

    // e3 = sum_j <-i d_j u, (chi*A)_j u>
    for (int d = 0; d < 3; ++d) {
        RealField comp(cfg.box);
        comp.v = chiA.c[d];
        SpinorField au = u;
        pointwise_multiply(comp, au);
        SpinorField mg = grad[d];
        scale(mg, Complex(0.0, -1.0));
        eb.e3 += l2_inner(mg, au);
    }

    // e4 = sum_j ||(chi*A)_j u||^2
    for (int d = 0; d < 3; ++d) {
        RealField comp(cfg.box);
        comp.v = chiA.c[d];
        SpinorField au = u;
        pointwise_multiply(comp, au);
        eb.e4 += l2_norm_sq(au);
    }

    // e5 = <u, sigma.(chi * curl A) u> through the integration-by-parts form
    // 2 Re sum_m <(grad wedge sigma u)_m, (chi*A)_m u>, avoiding derivatives
    // of A. (grad wedge sigma u)_m = eps_{mlj} sigma_j d_l u.
    {
        Complex acc{};
        for (int m = 0; m < 3; ++m) {
            const int l1 = (m + 1) % 3, j1 = (m + 2) % 3;
            SpinorField y = sigma_apply(j1, grad[l1]);
            axpy(Complex(-1.0, 0.0), sigma_apply(l1, grad[j1]), y);
            RealField comp(cfg.box);
            comp.v = chiA.c[m];
            SpinorField au = u;
            pointwise_multiply(comp, au);
            acc += l2_inner(y, au);
        }
        eb.e5 = 2.0 * acc.real();
    }

    eb.total = eb.e1 + eb.e2 / k32pi3 - 2.0 * g * eb.e3.real() + g * g * eb.e4 - g * eb.e5;

    // independent route: || sigma . (-i grad - g chi*A) u ||^2 + <u,Vu> + field
    {
        auto t = covariant_momentum(u, chiA, g);
        SpinorField st = sigma_dot(t);
        eb.pauli_total = l2_norm_sq(st) + pot + eb.e2 / k32pi3;
    }
    return eb;
}

EnergyBreakdown energy(const SpinorField& u, const VectorField& A, const ModelConfig& cfg) {
    const double nrm = l2_norm(u);
    if (std::abs(nrm - 1.0) > 1e-8)
        throw std::invalid_argument("energy: u is not normalized");
    if (divergence_defect(A) > 1e-8)
        throw std::invalid_argument("energy: A is not divergence-free");
    return energy_unchecked(u, A, cfg);
}

EnergyBreakdown energy_cutoff(const SpinorField& u, const VectorField& A, const ModelConfig& cfg) {
    if (!cfg.coupling.Lambda)
        throw std::invalid_argument("energy_cutoff: Lambda is not set");
    ModelConfig cut = cfg;
    const double Lambda = *cfg.coupling.Lambda;
    CutoffProfile base = cfg.cutoff;
    CutoffProfile chil;
    chil.kind = CutoffKind::custom;
    chil.custom_chi = [base, Lambda](double k) { return k <= Lambda ? base.chi(k) : 0.0; };
    chil.custom_chi1 = [base, Lambda](double k) { return k <= Lambda ? base.chi1(k) : 0.0; };
    cut.cutoff = chil;
    return energy_unchecked(u, A, cut);
}

ImsResult ims_check(const SpinorField& u, const VectorField& A, const ModelConfig& cfg, double R,
                    LocalizationProfile profile) {
    Localization loc = Localization::build(cfg.box, R, profile);
    const FourierMultiplier chi = cfg.cutoff.multiplier(cfg.box);
    const VectorField chiA = apply_multiplier(chi, A);
    const double g = cfg.coupling.g;

    auto kinetic = [&](const SpinorField& w) {
        auto t = covariant_momentum(w, chiA, g);
        double s = 0.0;
        for (int d = 0; d < 3; ++d) s += l2_norm_sq(t[d]);
        return s;
    };

    const double lhs = kinetic(u);
    SpinorField eu = u, etu = u;
    pointwise_multiply(loc.eta, eu);
    pointwise_multiply(loc.eta_tilde, etu);
    // localization costs energy: the localized sum exceeds the full kinetic
    // term by <u, (|grad eta|^2 + |grad eta~|^2) u>
    double rhs = kinetic(eu) + kinetic(etu);
    double grad_term = 0.0;
    for (std::size_t q = 0; q < loc.grad_sq_sum.size(); ++q)
        grad_term += loc.grad_sq_sum.v[q] * (std::norm(u.c[0][q]) + std::norm(u.c[1][q]));
    rhs -= grad_term * cfg.box.wx();

    return ImsResult{std::abs(lhs - rhs), lhs};
}

std::array<double, 3> virial(const SpinorField& u, const VectorField& A, const ModelConfig& cfg) {
    const FourierMultiplier chi = cfg.cutoff.multiplier(cfg.box);
    const VectorField chiA = apply_multiplier(chi, A);
    auto t = covariant_momentum(u, chiA, cfg.coupling.g);
    std::array<double, 3> v{};
    for (int d = 0; d < 3; ++d) v[d] = l2_inner(u, t[d]).real();
    return v;
}

}  // namespace msqed

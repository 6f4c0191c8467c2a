#include "msqed/fock.hpp"

#include <algorithm>
#include <cmath>

#include "msqed/fft.hpp"

namespace msqed {

std::vector<Complex> DenseMatrix::apply(const std::vector<Complex>& v) const {
    std::vector<Complex> out(n, Complex(0.0, 0.0));
    for (int c = 0; c < n; ++c) {
        const Complex vc = v[c];
        if (vc == Complex(0.0, 0.0)) continue;
        const Complex* col = a.data() + static_cast<std::size_t>(c) * n;
        for (int r = 0; r < n; ++r) out[r] += col[r] * vc;
    }
    return out;
}

DenseMatrix DenseMatrix::adjoint() const {
    DenseMatrix out(n);
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) out.at(c, r) = std::conj(at(r, c));
    return out;
}

DenseMatrix DenseMatrix::multiply(const DenseMatrix& other) const {
    DenseMatrix out(n);
    for (int c = 0; c < n; ++c)
        for (int m = 0; m < n; ++m) {
            const Complex omc = other.at(m, c);
            if (omc == Complex(0.0, 0.0)) continue;
            const Complex* col = a.data() + static_cast<std::size_t>(m) * n;
            Complex* ocol = out.a.data() + static_cast<std::size_t>(c) * n;
            for (int r = 0; r < n; ++r) ocol[r] += col[r] * omc;
        }
    return out;
}

namespace {

void enumerate_basis(int M, int n_max, std::vector<int>& cur, int remaining,
                     std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == M) {
        out.push_back(cur);
        return;
    }
    for (int n = 0; n <= remaining; ++n) {
        cur.push_back(n);
        enumerate_basis(M, n_max, cur, remaining - n, out);
        cur.pop_back();
    }
}

}  // namespace

TruncatedFock::TruncatedFock(int M, int n_max) : M_(M), n_max_(n_max) {
    if (M < 1 || n_max < 0) throw std::invalid_argument("TruncatedFock: bad dimensions");
    std::vector<int> cur;
    enumerate_basis(M, n_max, cur, n_max, basis_);
    if (basis_.size() > 20000) throw std::invalid_argument("TruncatedFock: dimension too large");
    totals_.resize(basis_.size());
    codes_.resize(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        int t = 0;
        for (int n : basis_[i]) t += n;
        totals_[i] = t;
        codes_[i] = encode(basis_[i]);
    }
    code_order_.resize(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) code_order_[i] = static_cast<int>(i);
    std::sort(code_order_.begin(), code_order_.end(),
              [&](int a, int b) { return codes_[a] < codes_[b]; });
}

std::size_t TruncatedFock::encode(const std::vector<int>& occ) const {
    std::size_t code = 0;
    const std::size_t base = static_cast<std::size_t>(n_max_) + 1;
    for (int n : occ) code = code * base + static_cast<std::size_t>(n);
    return code;
}

int TruncatedFock::index_of(const std::vector<int>& occ) const {
    int total = 0;
    for (int n : occ) {
        if (n < 0) return -1;
        total += n;
    }
    if (total > n_max_) return -1;
    const std::size_t code = encode(occ);
    auto it = std::lower_bound(code_order_.begin(), code_order_.end(), code,
                               [&](int idx, std::size_t c) { return codes_[idx] < c; });
    if (it == code_order_.end() || codes_[*it] != code) return -1;
    return *it;
}

std::vector<Complex> TruncatedFock::apply_annihilate(int mode, const std::vector<Complex>& v) const {
    std::vector<Complex> out(dim(), Complex(0.0, 0.0));
    std::vector<int> occ;
    for (int idx = 0; idx < dim(); ++idx) {
        if (v[idx] == Complex(0.0, 0.0)) continue;
        if (basis_[idx][mode] == 0) continue;
        occ = basis_[idx];
        const double amp = std::sqrt(static_cast<double>(occ[mode]));
        occ[mode] -= 1;
        const int tgt = index_of(occ);
        if (tgt >= 0) out[tgt] += amp * v[idx];
    }
    return out;
}

std::vector<Complex> TruncatedFock::apply_create(int mode, const std::vector<Complex>& v) const {
    std::vector<Complex> out(dim(), Complex(0.0, 0.0));
    std::vector<int> occ;
    for (int idx = 0; idx < dim(); ++idx) {
        if (v[idx] == Complex(0.0, 0.0)) continue;
        if (totals_[idx] + 1 > n_max_) continue;  // truncation clips the top level
        occ = basis_[idx];
        occ[mode] += 1;
        const double amp = std::sqrt(static_cast<double>(occ[mode]));
        const int tgt = index_of(occ);
        if (tgt >= 0) out[tgt] += amp * v[idx];
    }
    return out;
}

std::vector<Complex> TruncatedFock::apply_a(const std::vector<Complex>& h,
                                            const std::vector<Complex>& v) const {
    std::vector<Complex> out(dim(), Complex(0.0, 0.0));
    for (int m = 0; m < M_; ++m) {
        if (h[m] == Complex(0.0, 0.0)) continue;
        auto t = apply_annihilate(m, v);
        const Complex c = std::conj(h[m]);
        for (int i = 0; i < dim(); ++i) out[i] += c * t[i];
    }
    return out;
}

std::vector<Complex> TruncatedFock::apply_a_dagger(const std::vector<Complex>& h,
                                                   const std::vector<Complex>& v) const {
    std::vector<Complex> out(dim(), Complex(0.0, 0.0));
    for (int m = 0; m < M_; ++m) {
        if (h[m] == Complex(0.0, 0.0)) continue;
        auto t = apply_create(m, v);
        for (int i = 0; i < dim(); ++i) out[i] += h[m] * t[i];
    }
    return out;
}

std::vector<Complex> TruncatedFock::apply_dgamma(const std::vector<double>& omega,
                                                 const std::vector<Complex>& v) const {
    std::vector<Complex> out(dim());
    for (int i = 0; i < dim(); ++i) {
        double w = 0.0;
        for (int m = 0; m < M_; ++m) w += omega[m] * basis_[i][m];
        out[i] = w * v[i];
    }
    return out;
}

namespace {

DenseMatrix matrix_from_action(
    int dim, const std::function<std::vector<Complex>(const std::vector<Complex>&)>& action) {
    DenseMatrix out(dim);
    std::vector<Complex> e(dim, Complex(0.0, 0.0));
    for (int c = 0; c < dim; ++c) {
        e.assign(dim, Complex(0.0, 0.0));
        e[c] = Complex(1.0, 0.0);
        auto col = action(e);
        for (int r = 0; r < dim; ++r) out.at(r, c) = col[r];
    }
    return out;
}

}  // namespace

DenseMatrix TruncatedFock::annihilate_matrix(int mode) const {
    return matrix_from_action(dim(), [&](const std::vector<Complex>& v) {
        return apply_annihilate(mode, v);
    });
}

DenseMatrix TruncatedFock::create_matrix(int mode) const {
    return matrix_from_action(dim(),
                              [&](const std::vector<Complex>& v) { return apply_create(mode, v); });
}

DenseMatrix TruncatedFock::a_matrix(const std::vector<Complex>& h) const {
    return matrix_from_action(dim(),
                              [&](const std::vector<Complex>& v) { return apply_a(h, v); });
}

DenseMatrix TruncatedFock::a_dagger_matrix(const std::vector<Complex>& h) const {
    return matrix_from_action(dim(),
                              [&](const std::vector<Complex>& v) { return apply_a_dagger(h, v); });
}

DenseMatrix TruncatedFock::field_matrix(const std::vector<Complex>& h) const {
    DenseMatrix out = a_matrix(h);
    DenseMatrix ad = a_dagger_matrix(h);
    const double inv = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] = (out.a[i] + ad.a[i]) * inv;
    return out;
}

DenseMatrix TruncatedFock::dgamma_matrix(const std::vector<double>& omega) const {
    return matrix_from_action(dim(),
                              [&](const std::vector<Complex>& v) { return apply_dgamma(omega, v); });
}

std::vector<Complex> TruncatedFock::coherent_vector(const std::vector<Complex>& f) const {
    double norm2 = 0.0;
    for (const auto& z : f) norm2 += std::norm(z);
    const double pref = std::exp(-0.5 * norm2);
    std::vector<Complex> out(dim());
    for (int i = 0; i < dim(); ++i) {
        Complex amp(pref, 0.0);
        for (int m = 0; m < M_; ++m) {
            const int n = basis_[i][m];
            for (int r = 1; r <= n; ++r) amp *= f[m] / std::sqrt(static_cast<double>(r));
        }
        out[i] = amp;
    }
    return out;
}

double TruncatedFock::coherent_tail(const std::vector<Complex>& f) const {
    double lam = 0.0;
    for (const auto& z : f) lam += std::norm(z);
    double term = std::exp(-lam), cum = term;
    for (int n = 1; n <= n_max_; ++n) {
        term *= lam / n;
        cum += term;
    }
    return std::max(0.0, 1.0 - cum);
}

double TruncatedFock::coherent_tail_weighted(const std::vector<Complex>& f) const {
    double lam = 0.0;
    for (const auto& z : f) lam += std::norm(z);
    // sum_{n > n_max} n e^-lam lam^n/n! = lam * P(N >= n_max) for N ~ Poisson(lam)
    double term = std::exp(-lam), cum = term;
    for (int n = 1; n <= n_max_ - 1; ++n) {
        term *= lam / n;
        cum += term;
    }
    return lam * std::max(0.0, 1.0 - cum);
}

Complex vec_inner(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    Complex s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

double vec_norm(const std::vector<Complex>& a) {
    double s = 0.0;
    for (const auto& z : a) s += std::norm(z);
    return std::sqrt(s);
}

CoherentEigenReport coherent_eigen_check(const TruncatedFock& fock, const std::vector<Complex>& f,
                                         const std::vector<Complex>& h) {
    CoherentEigenReport rep;
    const auto psi = fock.coherent_vector(f);
    rep.eigenvalue = vec_inner(h, f);
    auto lhs = fock.apply_a(h, psi);
    for (int i = 0; i < fock.dim(); ++i) lhs[i] -= rep.eigenvalue * psi[i];
    rep.residual = vec_norm(lhs);
    // visible residual is the top coherent layer pulled down by a(h)
    double lam = 0.0, hn = 0.0;
    for (const auto& z : f) lam += std::norm(z);
    for (const auto& z : h) hn += std::norm(z);
    double top = std::exp(-lam);
    for (int n = 1; n <= fock.n_max() + 1; ++n) top *= lam / n;
    rep.tail_bound = std::sqrt(hn * (fock.n_max() + 1) * top) + 1e-13 * (1.0 + std::abs(rep.eigenvalue));
    return rep;
}

CoherentExpectationReport coherent_expectation_check(const TruncatedFock& fock,
                                                     const std::vector<Complex>& f,
                                                     const std::vector<Complex>& h,
                                                     const std::vector<double>& omega) {
    CoherentExpectationReport rep;
    const auto psi = fock.coherent_vector(f);
    const double rho = std::pow(vec_norm(psi), 2);
    const DenseMatrix phi = fock.field_matrix(h);
    rep.phi_expectation = vec_inner(psi, phi.apply(psi)).real() / rho;
    rep.dgamma_expectation = vec_inner(psi, fock.apply_dgamma(omega, psi)).real() / rho;
    Complex hf = vec_inner(h, f);
    rep.phi_two_re = 2.0 * hf.real();
    rep.phi_sqrt2_re = std::sqrt(2.0) * hf.real();
    rep.dgamma_analytic = 0.0;
    for (int m = 0; m < fock.modes(); ++m) rep.dgamma_analytic += omega[m] * std::norm(f[m]);

    double lam = 0.0, hn = 0.0, wmax = 0.0;
    for (const auto& z : f) lam += std::norm(z);
    for (const auto& z : h) hn += std::norm(z);
    for (double w : omega) wmax = std::max(wmax, std::abs(w));
    const double t0 = fock.coherent_tail(f);
    const double t1 = fock.coherent_tail_weighted(f);
    rep.tail_bound = 10.0 * (std::sqrt(hn) * std::sqrt(lam + fock.n_max() + 1.0) + wmax) *
                         (t0 + std::sqrt(t0) + t1) +
                     1e-12 * (1.0 + std::abs(rep.dgamma_analytic));

    const double d2 = std::abs(rep.phi_expectation - rep.phi_two_re);
    const double ds = std::abs(rep.phi_expectation - rep.phi_sqrt2_re);
    rep.sqrt2_factor_matches = ds <= d2;
    return rep;
}

FieldEstimateSlack field_estimate_check(const TruncatedFock& fock, const std::vector<double>& omega,
                                        const std::vector<Complex>& h,
                                        const std::vector<Complex>& psi) {
    for (double w : omega)
        if (!(w > 0.0)) throw std::invalid_argument("field_estimate_check: omega must be positive");
    double hw = 0.0, hn = 0.0;
    for (int m = 0; m < fock.modes(); ++m) {
        hw += std::norm(h[m]) / omega[m];
        hn += std::norm(h[m]);
    }
    const double psin2 = std::pow(vec_norm(psi), 2);
    double dgam = 0.0;
    {
        auto t = fock.apply_dgamma(omega, psi);
        dgam = vec_inner(psi, t).real();
    }
    FieldEstimateSlack out;
    const double an = std::pow(vec_norm(fock.apply_a(h, psi)), 2);
    out.slack_annihilation = hw * dgam - an;
    const double cn = std::pow(vec_norm(fock.apply_a_dagger(h, psi)), 2);
    out.slack_creation = hw * dgam + hn * psin2 - cn;
    return out;
}

namespace {

struct ModeData {
    double kx, ky, kz;      // wavevector
    double chi_over_sqrtk;  // chi(|k|)/sqrt(|k|)
    std::array<double, 3> pol;
};

}  // namespace

TinyReductionReport tiny_reduction_check(const SpinorField& u, const ModelConfig& cfg,
                                         const std::vector<RetainedMode>& modes,
                                         const std::vector<Complex>& f_amplitudes, int n_max) {
    const SpectralBox& box = cfg.box;
    require_same_box(box, u.box, "tiny_reduction_check");
    if (std::abs(l2_norm(u) - 1.0) > 1e-10)
        throw std::invalid_argument("tiny_reduction_check: u not normalized");
    const int S = static_cast<int>(modes.size());
    if (S < 1 || S > 3) throw std::invalid_argument("tiny_reduction_check: 1..3 retained modes");
    const int MF = 2 * S;
    if (static_cast<int>(f_amplitudes.size()) != MF)
        throw std::invalid_argument("tiny_reduction_check: need 2 amplitudes per mode");

    const double g = cfg.coupling.g;
    const double sqrt_wk = std::sqrt(box.wk());

    std::vector<ModeData> md(MF);
    for (int s = 0; s < S; ++s) {
        const auto& rm = modes[s];
        const double kx = box.k_axis(rm.i), ky = box.k_axis(rm.j), kz = box.k_axis(rm.l);
        const double kmag = std::sqrt(kx * kx + ky * ky + kz * kz);
        if (kmag == 0.0 || box.nyquist_index(rm.i) || box.nyquist_index(rm.j) ||
            box.nyquist_index(rm.l))
            throw std::invalid_argument("tiny_reduction_check: retained mode at k=0 or Nyquist");
        const auto frame = polarization_frame(kx, ky, kz);
        for (int tau = 0; tau < 2; ++tau) {
            ModeData& m = md[2 * s + tau];
            m.kx = kx;
            m.ky = ky;
            m.kz = kz;
            m.chi_over_sqrtk = cfg.cutoff.chi(kmag) / std::sqrt(kmag);
            m.pol = frame[tau];
        }
    }

    TruncatedFock fock(MF, n_max);
    const int dim = fock.dim();
    const auto psi = fock.coherent_vector(f_amplitudes);

    // full tensor T[s][x][fk] = u_s(x) psi_fk
    const std::size_t ng = box.size();
    std::vector<Complex> T(2 * ng * dim);
    for (int s = 0; s < 2; ++s)
        for (std::size_t q = 0; q < ng; ++q) {
            const Complex us = u.c[s][q];
            Complex* row = T.data() + (s * ng + q) * dim;
            for (int fk = 0; fk < dim; ++fk) row[fk] = us * psi[fk];
        }

    // coupling coefficients phi_{mu,j}(x) = sqrt(w_k) g chi/sqrt|k| e^{-ik.x} pol_j
    // evaluated on the centered grid
    std::vector<std::vector<Complex>> phase(MF, std::vector<Complex>(ng));
    {
        const int n = box.N;
        for (int m = 0; m < MF; ++m) {
            std::size_t q = 0;
            for (int i = 0; i < n; ++i) {
                const double x = box.x_axis(i);
                for (int j = 0; j < n; ++j) {
                    const double y = box.x_axis(j);
                    for (int l = 0; l < n; ++l, ++q) {
                        const double z = box.x_axis(l);
                        const double ph = -(md[m].kx * x + md[m].ky * y + md[m].kz * z);
                        phase[m][q] = sqrt_wk * g * md[m].chi_over_sqrtk *
                                      Complex(std::cos(ph), std::sin(ph));
                    }
                }
            }
        }
    }

    // W_j = (D_j - A_j) T
    auto apply_Dj = [&](const std::vector<Complex>& src, int d) {
        std::vector<Complex> out(src.size());
        ComplexField col(box);
        for (int s = 0; s < 2; ++s)
            for (int fk = 0; fk < dim; ++fk) {
                for (std::size_t q = 0; q < ng; ++q) col.v[q] = src[(s * ng + q) * dim + fk];
                ComplexField ck = forward_transform(col);
                for_each_mode(box, [&](std::size_t q, double kx, double ky, double kz, bool ny) {
                    const double kd = d == 0 ? kx : (d == 1 ? ky : kz);
                    ck.v[q] = ny ? Complex(0.0, 0.0) : kd * ck.v[q];
                });
                ComplexField res = inverse_transform(ck);
                for (std::size_t q = 0; q < ng; ++q) out[(s * ng + q) * dim + fk] = res.v[q];
            }
        return out;
    };

    // per-mode annihilation/creation tables on the Fock index
    std::vector<std::vector<std::pair<int, double>>> lower(MF);  // (target, amp) for a_m column
    for (int m = 0; m < MF; ++m) {
        lower[m].assign(dim, {-1, 0.0});
        for (int idx = 0; idx < dim; ++idx) {
            auto occ = fock.occupation(idx);
            if (occ[m] == 0) continue;
            const double amp = std::sqrt(static_cast<double>(occ[m]));
            occ[m] -= 1;
            lower[m][idx] = {fock.index_of(occ), amp};
        }
    }

    auto apply_Aj = [&](const std::vector<Complex>& src, int d) {
        std::vector<Complex> out(src.size(), Complex(0.0, 0.0));
        std::vector<Complex> slice(dim), acc(dim);
        for (int s = 0; s < 2; ++s)
            for (std::size_t q = 0; q < ng; ++q) {
                const Complex* row = src.data() + (s * ng + q) * dim;
                std::fill(acc.begin(), acc.end(), Complex(0.0, 0.0));
                for (int m = 0; m < MF; ++m) {
                    const Complex cm = std::conj(phase[m][q]) * md[m].pol[d];  // a coefficient
                    const Complex dm = phase[m][q] * md[m].pol[d];             // a* coefficient
                    for (int idx = 0; idx < dim; ++idx) {
                        const auto& [tgt, amp] = lower[m][idx];
                        if (tgt < 0) continue;
                        // a_m : idx -> tgt ; a*_m : tgt -> idx
                        acc[tgt] += cm * amp * row[idx];
                        acc[idx] += dm * amp * row[tgt];
                    }
                }
                Complex* orow = out.data() + (s * ng + q) * dim;
                for (int fk = 0; fk < dim; ++fk) orow[fk] = acc[fk];
            }
        return out;
    };

    std::array<std::vector<Complex>, 3> W;
    for (int d = 0; d < 3; ++d) {
        W[d] = apply_Dj(T, d);
        auto AT = apply_Aj(T, d);
        for (std::size_t i = 0; i < W[d].size(); ++i) W[d][i] -= AT[i];
    }

    // sigma . W
    std::vector<Complex> SW(T.size());
    {
        const Complex I(0.0, 1.0);
        for (std::size_t q = 0; q < ng; ++q)
            for (int fk = 0; fk < dim; ++fk) {
                const std::size_t up = (0 * ng + q) * dim + fk;
                const std::size_t dn = (1 * ng + q) * dim + fk;
                SW[up] = W[0][dn] - I * W[1][dn] + W[2][up];
                SW[dn] = W[0][up] + I * W[1][up] - W[2][dn];
            }
    }

    const double wx = box.wx();
    auto tensor_norm_sq = [&](const std::vector<Complex>& t) {
        double s = 0.0;
        for (const auto& z : t) s += std::norm(z);
        return s * wx;
    };

    double e_kin = tensor_norm_sq(SW);
    double e_pot = 0.0;
    for (int s = 0; s < 2; ++s)
        for (std::size_t q = 0; q < ng; ++q) {
            const Complex* row = T.data() + (s * ng + q) * dim;
            double r = 0.0;
            for (int fk = 0; fk < dim; ++fk) r += std::norm(row[fk]);
            e_pot += cfg.potential.V.v[q] * r;
        }
    e_pot *= wx;

    std::vector<double> omegas(MF);
    for (int m = 0; m < MF; ++m)
        omegas[m] = std::sqrt(md[m].kx * md[m].kx + md[m].ky * md[m].ky + md[m].kz * md[m].kz);
    double e_field = 0.0;
    for (int s = 0; s < 2; ++s)
        for (std::size_t q = 0; q < ng; ++q) {
            const Complex* row = T.data() + (s * ng + q) * dim;
            for (int fk = 0; fk < dim; ++fk) {
                double w = 0.0;
                for (int m = 0; m < MF; ++m) w += omegas[m] * fock.occupation(fk)[m];
                e_field += w * std::norm(row[fk]);
            }
        }
    e_field *= wx;

    const double rho = tensor_norm_sq(T);

    TinyReductionReport rep;
    rep.fock_energy = (e_kin + e_pot + e_field) / rho;

    // reduction formula over the same retained set
    double constant = 0.0;
    for (int s = 0; s < S; ++s) {
        const ModeData& m = md[2 * s];
        const double kmag = std::sqrt(m.kx * m.kx + m.ky * m.ky + m.kz * m.kz);
        const double chi = cfg.cutoff.chi(kmag);
        constant += chi * chi / kmag;
    }
    constant *= 2.0 * g * g * box.wk();
    rep.constant = constant;

    // photon parameter supported on the retained modes
    std::array<ComplexField, 3> fgrid{ComplexField(box), ComplexField(box), ComplexField(box)};
    for (int s = 0; s < S; ++s) {
        const std::size_t q = box.idx(modes[s].i, modes[s].j, modes[s].l);
        for (int tau = 0; tau < 2; ++tau) {
            const ModeData& m = md[2 * s + tau];
            const Complex amp = f_amplitudes[2 * s + tau] / sqrt_wk;
            for (int c = 0; c < 3; ++c) fgrid[c].v[q] += amp * m.pol[c];
        }
    }
    PhotonParameter fparam = PhotonParameter::from_components(box, fgrid);
    const double fminus =
        photon_inner(fparam.f_minus, fparam.f_minus, [](double k) { return k; }).real();
    const VectorField Af = potential_from_parameter(fparam);
    ModelConfig plain = cfg;
    plain.coupling.Lambda.reset();
    const EnergyBreakdown eb = energy_unchecked(u, Af, plain);
    rep.formula_energy = constant + fminus + eb.total;
    rep.discrepancy = std::abs(rep.fock_energy - rep.formula_energy);

    const double t0 = fock.coherent_tail(f_amplitudes);
    const double t1 = fock.coherent_tail_weighted(f_amplitudes);
    double coupling_scale = 0.0;
    for (int m = 0; m < MF; ++m) coupling_scale += std::norm(phase[m][0]);
    rep.tail_bound = 100.0 * (1.0 + std::abs(rep.fock_energy)) * (t0 + std::sqrt(t0) + t1) +
                     50.0 * coupling_scale * (std::sqrt(t0) + t0) + 1e-10;
    return rep;
}

}  // namespace msqed

#include <cmath>

#include "msqed/rng.hpp"
#include "msqed/solver.hpp"

namespace msqed {

UvSweepResult uv_sweep(const ModelConfig& cfg, const std::vector<double>& lambda_ladder,
                       const SolverOptions& opt) {
    if (lambda_ladder.empty()) throw std::invalid_argument("uv_sweep: empty ladder");
    for (std::size_t i = 1; i < lambda_ladder.size(); ++i)
        if (lambda_ladder[i] <= lambda_ladder[i - 1])
            throw std::invalid_argument("uv_sweep: ladder must be increasing");
    UvSweepResult out;
    MinimizeSeeds seeds;
    for (double L : lambda_ladder) {
        MinimizerResult r = minimize(cfg, opt, seeds, L);
        seeds.u0 = r.u;
        seeds.A0 = r.A;
        out.lambdas.push_back(L);
        out.energies.push_back(r.E);
        out.runs.push_back(std::move(r));
    }
    out.monotone = true;
    for (std::size_t i = 1; i < out.energies.size(); ++i)
        if (out.energies[i] > out.energies[i - 1] + 1e-8) out.monotone = false;
    const std::size_t n = out.energies.size();
    if (n >= 3) {
        out.cauchy_shrinks = std::abs(out.energies[n - 1] - out.energies[n - 2]) <
                             std::abs(out.energies[n - 2] - out.energies[n - 3]);
    }
    return out;
}

double expansion_predicted_coefficient(const ModelConfig& cfg, const RealField& u_V) {
    RealField w(cfg.box);
    for (std::size_t q = 0; q < w.size(); ++q) w.v[q] = u_V.v[q] * u_V.v[q];
    const RealField cw = apply_multiplier(cfg.cutoff.multiplier(cfg.box), w);
    return 32.0 / 3.0 * std::pow(kPi, 3) * l2_norm_sq(cw);
}

double expansion_response_coefficient(const ModelConfig& cfg, const RealField& u_V) {
    RealField w(cfg.box);
    for (std::size_t q = 0; q < w.size(); ++q) w.v[q] = u_V.v[q] * u_V.v[q];
    const ComplexField wk = forward_transform(w);
    double acc = 0.0;
    for_each_mode(cfg.box, [&](std::size_t q, double kx, double ky, double kz, bool ny) {
        const double k2 = kx * kx + ky * ky + kz * kz;
        if (ny || k2 == 0.0) return;
        const double chi = cfg.cutoff.chi(std::sqrt(k2));
        // |k ^ z-hat|^2 = kx^2 + ky^2
        acc += chi * chi * (kx * kx + ky * ky) * std::norm(wk.v[q]) / k2;
    });
    const double c = cfg.box.wk() / std::pow(2.0 * kPi, 3);
    return -8.0 * std::pow(kPi, 3) * acc * c;
}

A1Comparison a1_comparison(const SpinorField& u, const VectorField& A, const ModelConfig& cfg,
                           const ElectronicGroundState& gs) {
    A1Comparison out;
    out.a_h1 = sobolev_norm(A, 1.0);

    ComplexField uv(cfg.box);
    for (std::size_t q = 0; q < uv.size(); ++q) uv.v[q] = Complex(gs.u_V.v[q], 0.0);
    std::array<Complex, 2> c;
    for (int comp = 0; comp < 2; ++comp) {
        ComplexField cc(cfg.box);
        cc.v = u.c[comp];
        c[comp] = l2_inner(uv, cc);
    }
    // omega from u_V^2 omega = <Pi_V u, sigma Pi_V u>
    out.omega[0] = 2.0 * std::real(std::conj(c[0]) * c[1]);
    out.omega[1] = 2.0 * std::imag(std::conj(c[0]) * c[1]);
    out.omega[2] = std::norm(c[0]) - std::norm(c[1]);
    out.omega_norm_sq =
        out.omega[0] * out.omega[0] + out.omega[1] * out.omega[1] + out.omega[2] * out.omega[2];

    // A[1] = 16 pi^3 (-Delta)^{-1} g chi * curl(u_V^2 omega)
    RealField w(cfg.box);
    for (std::size_t q = 0; q < w.size(); ++q) w.v[q] = gs.u_V.v[q] * gs.u_V.v[q];
    const ComplexField wk = forward_transform(w);
    std::array<ComplexField, 3> a1k{ComplexField(cfg.box), ComplexField(cfg.box),
                                    ComplexField(cfg.box)};
    const double pref = 16.0 * std::pow(kPi, 3) * cfg.coupling.g;
    const Complex I(0.0, 1.0);
    for_each_mode(cfg.box, [&](std::size_t q, double kx, double ky, double kz, bool ny) {
        const double k2 = kx * kx + ky * ky + kz * kz;
        if (ny || k2 == 0.0) return;
        const double chi = cfg.cutoff.chi(std::sqrt(k2));
        const double k[3] = {kx, ky, kz};
        // (i k ^ W-hat), W-hat = omega w-hat(k)
        for (int d = 0; d < 3; ++d) {
            const int a = (d + 1) % 3, b = (d + 2) % 3;
            const Complex curld = I * (k[a] * out.omega[b] - k[b] * out.omega[a]) * wk.v[q];
            a1k[d].v[q] = pref * chi * curld / k2;
        }
    });
    VectorField A1(cfg.box);
    for (int d = 0; d < 3; ++d) A1.c[d] = inverse_transform_real(a1k[d]).v;
    out.deviation_h1 = sobolev_norm(A - A1, 1.0);
    return out;
}

ExpansionReport expansion_fit(const ModelConfig& cfg, const std::vector<double>& g_ladder,
                              const SolverOptions& opt) {
    if (g_ladder.size() < 2) throw std::invalid_argument("expansion_fit: need >= 2 g values");
    if (!cfg.cutoff.radial())
        throw std::invalid_argument("expansion_fit: radial chi required");
    ExpansionReport rep;
    const ElectronicGroundState gs =
        electronic_ground_state(cfg.box, cfg.potential.V, std::min(1e-10, opt.tol_eig));
    rep.mu_V = gs.mu_V;
    rep.c2_predicted = expansion_predicted_coefficient(cfg, gs.u_V);
    rep.c2_response = expansion_response_coefficient(cfg, gs.u_V);

    MinimizeSeeds seeds;
    double g_prev = 0.0;
    for (double g : g_ladder) {
        ModelConfig c = cfg;
        c.coupling.g = g;
        if (seeds.A0 && g_prev > 0.0) {
            VectorField scaled = *seeds.A0;
            scale(scaled, g / g_prev);
            seeds.A0 = scaled;
        }
        MinimizerResult r = minimize(c, opt, seeds);
        seeds.u0 = r.u;
        seeds.A0 = r.A;
        g_prev = g;
        rep.g_values.push_back(g);
        rep.energies.push_back(r.E);
        rep.phi_norms.push_back(r.phi_norm);
        const A1Comparison a1 = a1_comparison(r.u, r.A, c, gs);
        rep.a_norms.push_back(a1.a_h1);
        rep.a1_deviation.push_back(a1.deviation_h1);
        rep.omega_dev.push_back(std::abs(a1.omega_norm_sq - 1.0));
    }

    // Richardson extrapolation of delta/g^2 over the doubling ladder
    std::vector<double> c2est;
    for (std::size_t i = 0; i < rep.g_values.size(); ++i)
        c2est.push_back((rep.energies[i] - rep.mu_V) / (rep.g_values[i] * rep.g_values[i]));
    double c2 = c2est[0];
    if (rep.g_values.size() >= 2) {
        const double ratio = rep.g_values[1] / rep.g_values[0];
        const double r2 = ratio * ratio;
        c2 = (r2 * c2est[0] - c2est[1]) / (r2 - 1.0);
    }
    rep.c2_fit = c2;
    rep.c2_sign = c2 > 0.0 ? 1 : (c2 < 0.0 ? -1 : 0);

    // remainder |E - mu - c2 g^2| ~ g^4
    std::vector<double> rems;
    for (std::size_t i = 0; i < rep.g_values.size(); ++i) {
        const double g2 = rep.g_values[i] * rep.g_values[i];
        rems.push_back(std::abs(rep.energies[i] - rep.mu_V - rep.c2_fit * g2));
    }
    rep.remainder_slope = loglog_slope(rep.g_values, rems);
    double c4 = 0.0;
    for (std::size_t i = 0; i < rems.size(); ++i)
        c4 = std::max(c4, rems[i] / std::pow(rep.g_values[i], 4));
    rep.remainder_bound = c4;

    rep.phi_slope = loglog_slope(rep.g_values, rep.phi_norms);
    rep.a_slope = loglog_slope(rep.g_values, rep.a_norms);
    rep.a1_slope = loglog_slope(rep.g_values, rep.a1_deviation);
    rep.omega_slope = loglog_slope(rep.g_values, rep.omega_dev);
    return rep;
}

GapCheckResult gap_check(const ModelConfig& cfg, const SolverOptions& opt) {
    GapCheckResult out;
    double v2max = 0.0;
    for (double v : cfg.potential.V2.v) v2max = std::max(v2max, std::abs(v));
    out.v2_zero = v2max <= 1e-14;

    out.run_V = minimize(cfg, opt);
    out.E_V = out.run_V.E;
    out.mu_V = out.run_V.mu_V;
    if (out.v2_zero) {
        out.run_V1 = out.run_V;
        out.E_V1 = out.E_V;
        out.gap = 0.0;
        return out;
    }
    ModelConfig cfg1 = cfg;
    cfg1.potential.V = cfg.potential.V1;
    cfg1.potential.V2 = RealField(cfg.box, 0.0);
    // V1 >= 0 keeps its own trivial decomposition
    out.run_V1 = minimize(cfg1, opt);
    out.E_V1 = out.run_V1.E;
    out.gap = out.E_V1 - out.E_V;
    return out;
}

UniquenessProbe uniqueness_probe(const SpinorField& u, const ModelConfig& cfg, int n_seeds,
                                 std::uint64_t seed, double fp_tol) {
    UniquenessProbe out;
    Rng rng(seed);
    std::vector<VectorField> fixed_points;
    for (int s = 0; s < n_seeds; ++s) {
        VectorField A = random_vector_potential(cfg.box, rng, 0.5);
        double prev_step = std::numeric_limits<double>::infinity();
        int grow_streak = 0;
        for (int it = 0; it < 800; ++it) {
            const VectorField next = update_A(u, A, cfg, 1.0);
            const double step = sobolev_norm(next - A, 1.0);
            A = next;
            if (step <= fp_tol) break;
            if (step > prev_step * (1.0 + 1e-12)) {
                if (++grow_streak >= 5) {
                    out.contraction_suspect = true;
                    break;
                }
            } else {
                grow_streak = 0;
            }
            prev_step = step;
        }
        fixed_points.push_back(std::move(A));
    }
    for (std::size_t i = 0; i < fixed_points.size(); ++i)
        for (std::size_t j = i + 1; j < fixed_points.size(); ++j) {
            const double d = sobolev_norm(fixed_points[i] - fixed_points[j], 1.0);
            out.pairwise_distances.push_back(d);
            out.max_distance = std::max(out.max_distance, d);
        }
    return out;
}

}  // namespace msqed

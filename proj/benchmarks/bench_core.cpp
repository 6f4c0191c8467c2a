#include <benchmark/benchmark.h>

#include "msqed/energy.hpp"
#include "msqed/lorentz.hpp"
#include "msqed/rng.hpp"
#include "msqed/solver.hpp"

using namespace msqed;

namespace {

ModelConfig make_cfg(int N) {
    ModelConfig cfg;
    cfg.box = SpectralBox(12.0, N);
    cfg.potential = Potential::harmonic(cfg.box, 1.0);
    cfg.cutoff = CutoffProfile::one();
    cfg.coupling.g = 0.1;
    return cfg;
}

void bm_forward_transform(benchmark::State& state) {
    SpectralBox box(12.0, static_cast<int>(state.range(0)));
    Rng rng(1);
    ComplexField f(box);
    for (auto& z : f.v) z = rng.cnormal();
    for (auto _ : state) {
        benchmark::DoNotOptimize(forward_transform(f));
    }
}
BENCHMARK(bm_forward_transform)->Arg(32)->Arg(48)->Arg(64);

void bm_apply_multiplier(benchmark::State& state) {
    SpectralBox box(12.0, static_cast<int>(state.range(0)));
    Rng rng(2);
    RealField f = random_real_field(box, rng);
    const FourierMultiplier m = FourierMultiplier::power(box, -2.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_multiplier(m, f));
    }
}
BENCHMARK(bm_apply_multiplier)->Arg(32)->Arg(64);

void bm_leray_project(benchmark::State& state) {
    SpectralBox box(12.0, static_cast<int>(state.range(0)));
    Rng rng(3);
    VectorField A(box);
    for (int d = 0; d < 3; ++d)
        for (auto& x : A.c[d]) x = rng.normal();
    for (auto _ : state) {
        benchmark::DoNotOptimize(leray_project(A));
    }
}
BENCHMARK(bm_leray_project)->Arg(32)->Arg(64);

void bm_energy(benchmark::State& state) {
    ModelConfig cfg = make_cfg(static_cast<int>(state.range(0)));
    Rng rng(4);
    SpinorField u = random_spinor(cfg.box, rng);
    VectorField A = random_vector_potential(cfg.box, rng, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(energy_unchecked(u, A, cfg));
    }
}
BENCHMARK(bm_energy)->Arg(32)->Arg(48);

void bm_pauli_apply(benchmark::State& state) {
    ModelConfig cfg = make_cfg(static_cast<int>(state.range(0)));
    Rng rng(5);
    SpinorField u = random_spinor(cfg.box, rng);
    VectorField A = random_vector_potential(cfg.box, rng, 1.0);
    PauliOperator H(cfg, A);
    for (auto _ : state) {
        benchmark::DoNotOptimize(H.apply(u));
    }
}
BENCHMARK(bm_pauli_apply)->Arg(32)->Arg(48)->Arg(64);

void bm_update_A(benchmark::State& state) {
    ModelConfig cfg = make_cfg(static_cast<int>(state.range(0)));
    Rng rng(6);
    SpinorField u = random_spinor(cfg.box, rng);
    VectorField A = random_vector_potential(cfg.box, rng, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(update_A(u, A, cfg, 0.5));
    }
}
BENCHMARK(bm_update_A)->Arg(32)->Arg(48);

void bm_lorentz_norm(benchmark::State& state) {
    SpectralBox box(12.0, static_cast<int>(state.range(0)));
    Rng rng(7);
    RealField f = random_real_field(box, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lorentz_norm(f, 3.0, 2.0));
    }
}
BENCHMARK(bm_lorentz_norm)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();

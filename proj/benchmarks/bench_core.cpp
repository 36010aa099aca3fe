#include <benchmark/benchmark.h>

#include "entlab/cnot.hpp"
#include "entlab/measures.hpp"
#include "entlab/mems.hpp"
#include "entlab/orbit.hpp"
#include "entlab/rng.hpp"

using namespace entlab;

namespace {

DensityMatrix fixture_state() {
    RngStream rng(1234, 0);
    return sample_density(rng, Spectrum(0.55, 0.25, 0.15, 0.05));
}

void BM_HermitianEigensystem(benchmark::State& state) {
    const DensityMatrix rho = fixture_state();
    for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigensystem(rho.mat()));
}
BENCHMARK(BM_HermitianEigensystem);

void BM_Concurrence(benchmark::State& state) {
    const DensityMatrix rho = fixture_state();
    for (auto _ : state) benchmark::DoNotOptimize(concurrence(rho));
}
BENCHMARK(BM_Concurrence);

void BM_Negativity(benchmark::State& state) {
    const DensityMatrix rho = fixture_state();
    for (auto _ : state) benchmark::DoNotOptimize(negativity(rho));
}
BENCHMARK(BM_Negativity);

void BM_SampleCue(benchmark::State& state) {
    RngStream rng(99, 0);
    for (auto _ : state) benchmark::DoNotOptimize(sample_cue(rng));
}
BENCHMARK(BM_SampleCue);

void BM_SampleSpectrum(benchmark::State& state) {
    RngStream rng(99, 1);
    for (auto _ : state) benchmark::DoNotOptimize(sample_spectrum(rng));
}
BENCHMARK(BM_SampleSpectrum);

void BM_OrbitPoint(benchmark::State& state) {
    RngStream rng(99, 2);
    const Spectrum p(0.55, 0.25, 0.15, 0.05);
    for (auto _ : state) {
        benchmark::DoNotOptimize(orbit_measure(MeasureKind::Concurrence, sample_density(rng, p)));
    }
}
BENCHMARK(BM_OrbitPoint);

void BM_BuildMems(benchmark::State& state) {
    const Spectrum p(0.55, 0.25, 0.15, 0.05);
    for (auto _ : state) benchmark::DoNotOptimize(build_mems(p));
}
BENCHMARK(BM_BuildMems);

void BM_EvolveColdBath(benchmark::State& state) {
    const GateSpec gate(1.0);
    BathSpec bath;
    bath.coupling_k = 0.3;
    bath.cutoff = 1.0;
    bath.inverse_temperature = std::numeric_limits<double>::infinity();
    const DensityMatrix rho0(projector(initial_state()));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            evolve(rho0, CouplingKind::GateAxisDephasing, gate, bath, gate.gate_time()));
    }
}
BENCHMARK(BM_EvolveColdBath);

void BM_DecoherenceQuadrature(benchmark::State& state) {
    BathSpec bath;
    bath.coupling_k = 0.3;
    bath.cutoff = 1.0;
    bath.inverse_temperature = 10.0;
    for (auto _ : state) benchmark::DoNotOptimize(decoherence_functions(3.14159, bath));
}
BENCHMARK(BM_DecoherenceQuadrature);

} // namespace

BENCHMARK_MAIN();

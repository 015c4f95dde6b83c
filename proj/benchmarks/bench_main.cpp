#include <benchmark/benchmark.h>

#include "critsqueeze/coherence.hpp"
#include "critsqueeze/gaussian_dynamics.hpp"
#include "critsqueeze/ising_tfim.hpp"
#include "critsqueeze/squeezed_overlap.hpp"
#include "critsqueeze/work_statistics.hpp"

using namespace critsqueeze;

namespace {

RampSpec ramp(double r, double tau) {
    RampSpec s;
    s.exponent = r;
    s.tau = tau;
    return s;
}

void BM_EvolveCycle(benchmark::State& state) {
    const auto spec = ramp(static_cast<double>(state.range(0)), 20.0);
    const auto thermal = ThermalSpec::from_occupation(1.0);
    for (auto _ : state) benchmark::DoNotOptimize(evolve_cycle(spec, thermal));
}
BENCHMARK(BM_EvolveCycle)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SqueezedNumberColumn(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(squeezed_number_column(n, 1.0));
}
BENCHMARK(BM_SqueezedNumberColumn)->Arg(0)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_WorkDistribution(benchmark::State& state) {
    const auto thermal = ThermalSpec::from_occupation(static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(work_distribution(thermal, 0.88));
}
BENCHMARK(BM_WorkDistribution)->Arg(0)->Arg(1)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_CoherenceSplit(benchmark::State& state) {
    const auto thermal = ThermalSpec::from_occupation(1.0);
    for (auto _ : state) benchmark::DoNotOptimize(coherence_split(thermal, 0.88));
}
BENCHMARK(BM_CoherenceSplit)->Unit(benchmark::kMillisecond);

void BM_TfimModes(benchmark::State& state) {
    TFIMSpec spec;
    spec.n_spins = static_cast<std::size_t>(state.range(0));
    spec.ramp = ramp(1.0, 10.0);
    for (auto _ : state) benchmark::DoNotOptimize(tfim_w_irr(spec, IntegratorOptions{}, 1));
}
BENCHMARK(BM_TfimModes)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();

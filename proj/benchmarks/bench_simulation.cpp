#include <benchmark/benchmark.h>

#include <string>

#include "easl/simulation.hpp"

#ifndef EASL_SCENARIO_DIR
#define EASL_SCENARIO_DIR "scenarios"
#endif

namespace {

void BM_bundled_run(benchmark::State& state) {
    std::string dir = EASL_SCENARIO_DIR;
    auto cfg = easl::load_simulation(dir + "/slap.emas", dir + "/slap.scn");
    for (auto _ : state) {
        easl::NullSink sink;
        easl::Simulation sim(cfg, sink);
        sim.run(10);
        benchmark::DoNotOptimize(sim.tick());
    }
}
BENCHMARK(BM_bundled_run);

void BM_step_tick(benchmark::State& state) {
    std::string dir = EASL_SCENARIO_DIR;
    auto cfg = easl::load_simulation(dir + "/slap.emas", dir + "/slap.scn");
    easl::NullSink sink;
    easl::Simulation sim(std::move(cfg), sink);
    for (auto _ : state) sim.step_tick();
}
BENCHMARK(BM_step_tick);

} // namespace

BENCHMARK_MAIN();

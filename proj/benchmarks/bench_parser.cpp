#include <benchmark/benchmark.h>

#include <string>

#include "easl/parser.hpp"

namespace {

std::string agent_source(int plans) {
    std::string src =
        "concern__: slap : -0.8.\n"
        "personality__: { [ extraversion: 0.9, neuroticism: 0.1 ], 0.5, [] }.\n"
        "others__: [ marshall: [ affective_link: 0.5 ], barney: [ affective_link: 0.3 ] ].\n";
    for (int i = 0; i < plans; ++i)
        src += "+!goal" + std::to_string(i) +
               "(X) : ready & X > 0 <- +done(X); .print(\"step\", X); !goal" +
               std::to_string((i + 1) % plans) + "(X).\n";
    return src;
}

void BM_parse_agent(benchmark::State& state) {
    std::string src = agent_source(int(state.range(0)));
    for (auto _ : state) {
        auto program = easl::parse_agent(src);
        benchmark::DoNotOptimize(program);
    }
    state.SetBytesProcessed(int64_t(state.iterations()) * int64_t(src.size()));
}
BENCHMARK(BM_parse_agent)->Arg(8)->Arg(64)->Arg(256);

} // namespace

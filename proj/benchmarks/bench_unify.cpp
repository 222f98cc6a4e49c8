#include <benchmark/benchmark.h>

#include "easl/parser.hpp"
#include "easl/term.hpp"

namespace {

easl::TermPtr deep_term(int depth) {
    easl::TermPtr t = easl::Term::make_atom("leaf");
    for (int i = 0; i < depth; ++i)
        t = easl::Term::make_compound(easl::Atom::intern("f"),
                                      {t, easl::Term::make_number(i)});
    return t;
}

easl::TermPtr deep_pattern(int depth) {
    easl::TermPtr t = easl::Term::make_variable("X");
    for (int i = 0; i < depth; ++i)
        t = easl::Term::make_compound(easl::Atom::intern("f"),
                                      {t, easl::Term::make_variable("V" + std::to_string(i))});
    return t;
}

void BM_unify_deep(benchmark::State& state) {
    auto ground = deep_term(int(state.range(0)));
    auto pattern = deep_pattern(int(state.range(0)));
    for (auto _ : state) {
        auto theta = easl::unify(pattern, ground);
        benchmark::DoNotOptimize(theta);
    }
}
BENCHMARK(BM_unify_deep)->Arg(4)->Arg(16)->Arg(64);

void BM_event_accessors(benchmark::State& state) {
    easl::TriggeringEvent te{easl::EventOp::add, easl::EventType::belief,
                             easl::parse_ground_term(
                                 "slap[subject(marshall),target(barney),affective_relevant,"
                                 "interaction_value(-0.5)]")};
    easl::Atom self = easl::Atom::intern("lily");
    for (auto _ : state) {
        benchmark::DoNotOptimize(easl::get_subject(te, self));
        benchmark::DoNotOptimize(easl::get_target(te));
        benchmark::DoNotOptimize(easl::get_iv(te));
        benchmark::DoNotOptimize(easl::aff_rel_ev(te));
    }
}
BENCHMARK(BM_event_accessors);

} // namespace

// Acceptance suite: one check per release criterion, one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "easl/affective.hpp"
#include "easl/diagnostics.hpp"
#include "easl/check.hpp"
#include "easl/default_design.hpp"
#include "easl/parser.hpp"
#include "easl/rational.hpp"
#include "easl/simulation.hpp"

#ifndef EASL_SCENARIO_DIR
#define EASL_SCENARIO_DIR "scenarios"
#endif
#ifndef EASL_FIXTURE_DIR
#define EASL_FIXTURE_DIR "tests/fixtures"
#endif

using namespace easl;

namespace {

int failures = 0;
std::vector<std::string> notes;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        notes.push_back(what);
    }
}

void criterion(int n, const std::string& title, const std::function<void()>& body) {
    int before = failures;
    notes.clear();
    try {
        body();
    } catch (const std::exception& e) {
        ++failures;
        notes.push_back(std::string("exception: ") + e.what());
    }
    bool ok = failures == before;
    std::printf("%s criterion %2d: %s\n", ok ? "PASS" : "FAIL", n, title.c_str());
    if (!ok)
        for (const auto& note : notes) std::printf("       - %s\n", note.c_str());
}

std::string scenario_dir() { return EASL_SCENARIO_DIR; }
std::string fixture_dir() { return EASL_FIXTURE_DIR; }

struct BundledRun {
    MemorySink sink;
    std::unique_ptr<Simulation> sim;
    double seconds = 0.0;

    BundledRun() {
        auto cfg = load_simulation(scenario_dir() + "/slap.emas", scenario_dir() + "/slap.scn");
        sim = std::make_unique<Simulation>(std::move(cfg), sink);
        auto start = std::chrono::steady_clock::now();
        sim->run(10);
        seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }

    // Affective-cycle steps of one agent, in emission order.
    std::vector<const TraceRecord*> affective(const std::string& agent) const {
        std::vector<const TraceRecord*> out;
        for (const TraceRecord& r : sink.records)
            if (r.agent == agent && r.cycle == "affective" && r.step != "AsDecay")
                out.push_back(&r);
        return out;
    }
};

const BundledRun& bundled() {
    static BundledRun run;
    return run;
}

double emotion_intensity(const nlohmann::json& emotion) {
    return emotion.at("intensity").get<double>();
}

} // namespace

// 1. Empathic path: EvClass3 -> EmphAppr1 -> EmphReg1 -> EmSel1 -> AffAd1 with
//flag sorry_for selected and regulation strictly reducing the intensity.
static void criterion1() {
    const BundledRun& run = bundled();
    expect(run.seconds < 1.0, "bundled run took " + std::to_string(run.seconds) + "s");
    auto steps = run.affective("lily");
    size_t i = 0;
    while (i < steps.size() && steps[i]->step != "EvClass3") ++i;
    expect(i < steps.size(), "no EvClass3 record for lily");
    if (i >= steps.size()) return;
    const char* expected[] = {"EvClass3", "EmphAppr1", "EmphReg1", "EmSel1", "AffAd1"};
    for (size_t k = 0; k < 5; ++k) {
        bool ok = i + k < steps.size() && steps[i + k]->step == expected[k];
        expect(ok, std::string("expected ") + expected[k] + " at position " + std::to_string(k));
        if (!ok) return;
    }
    const TraceRecord& reg = *steps[i + 2];
    double before = emotion_intensity(reg.payload.at("before").at(0));
    double after = emotion_intensity(reg.payload.at("after").at(0));
    expect(after < before, "regulation did not reduce the intensity");
    const TraceRecord& sel = *steps[i + 3];
    expect(sel.payload.at("selected").at("label") == "sorry_for",
           "final emotion is not sorry_for");
}

// 2. Self path: EvClass4 -> Appr1 -> EmReg1 -> EmSel1 -> AffAd1, sadness
// dominating fear, and the post-AffAd mood labeled sadness from the
// low-intensity-happiness starting mood.
static void criterion2() {
    const BundledRun& run = bundled();
    auto steps = run.affective("lily");
    size_t i = 0;
    while (i < steps.size() && steps[i]->step != "EvClass4") ++i;
    expect(i < steps.size(), "no EvClass4 record for lily");
    if (i >= steps.size()) return;
    const char* expected[] = {"EvClass4", "Appr1", "EmReg1", "EmSel1", "AffAd1"};
    for (size_t k = 0; k < 5; ++k) {
        bool ok = i + k < steps.size() && steps[i + k]->step == expected[k];
        expect(ok, std::string("expected ") + expected[k] + " at position " + std::to_string(k));
        if (!ok) return;
    }
    const TraceRecord& appr = *steps[i + 1];
    double sadness = -1.0, fear = -1.0;
    for (const auto& em : appr.payload.at("emotions")) {
        if (em.at("label") == "sadness") sadness = emotion_intensity(em);
        if (em.at("label") == "fear") fear = emotion_intensity(em);
    }
    expect(sadness > 0, "no sadness appraised");
    expect(fear > 0, "no fear appraised");
    expect(sadness > fear, "delta(sadness) does not dominate delta(fear)");
    const TraceRecord& sel = *steps[i + 3];
    expect(sel.payload.at("selected").at("label") == "sadness", "selected label is not sadness");
    const TraceRecord& adapt = *steps[i + 4];
    expect(adapt.payload.at("label_before") == "joy",
           "starting mood is not low-intensity happiness");
    expect(adapt.payload.at("label_after") == "sadness", "post-AffAd mood label is not sadness");
}

// 3. Affective-link dynamics.
static void criterion3() {
    const BundledRun& run = bundled();
    bool found = false;
    for (const TraceRecord& r : run.sink.records) {
        if (r.agent == "lily" && r.step == "EvClass2" && r.tick == 1) {
            found = true;
            expect(std::fabs(r.payload.at("al_before").get<double>() - 0.5) < 1e-9,
                   "al before Example 1 is not 0.5");
            expect(std::fabs(r.payload.at("al_after").get<double>() - 0.6) < 1e-9,
                   "al after Example 1 is not 0.6");
        }
    }
    expect(found, "Example 1 EvClass2 record missing");
    expect(std::fabs(update_al(0.5, 0.2, 0.5) - 0.6) < 1e-9, "update_al(0.5, 0.2) != 0.6");

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    double al = 0.37;
    for (int i = 0; i < 50; ++i) {
        double v = dist(rng);
        expect(update_al(v, 0.0, 0.5) == v, "iv = 0 must leave al bit-identical");
    }
    for (int i = 0; i < 1000; ++i) {
        al = update_al(al, dist(rng), 0.5);
        expect(al >= -1.0 && al <= 1.0, "al escaped [-1,1]");
    }
}

// 4. EvClass exhaustiveness over the discretized premise grid.
static void criterion4() {
    for (bool rel : {false, true}) {
        for (int tg = 0; tg < 3; ++tg) {       // self, other, null
            for (int sbj = 0; sbj < 3; ++sbj) { // self, other, null
                AffectModel model;
                Atom t = Atom::intern("extraversion");
                for (const auto& [label, proto] : model.prototypes.entries())
                    model.omega.set(label, t, 1.0);
                EmotionTable table = EmotionTable::builtin_default();
                MemorySink sink;
                CycleContext ctx;
                ctx.model = &model;
                ctx.emotions = &table;
                ctx.trace = &sink;
                AgentState st;
                st.id = Atom::intern("lily");
                st.program = std::make_shared<AgentProgram>();
                st.traits = {{t, 0.5}};

                std::string annots;
                auto add = [&](const std::string& piece) {
                    if (!annots.empty()) annots += ",";
                    annots += piece;
                };
                if (tg == 0) add("target(lily)");
                if (tg == 1) add("target(other)");
                if (sbj == 0) add("subject(lily)");
                if (sbj == 1) add("subject(someone)");
                if (rel) add("affective_relevant");
                std::string text = annots.empty() ? "ev" : "ev[" + annots + "]";
                Event ev{TriggeringEvent{EventOp::add, EventType::belief,
                                         parse_ground_term(text)},
                         -1};
                classify_event(st, ctx, ev);
                size_t fired = 0;
                std::string name;
                for (const auto& r : sink.records)
                    if (r.step.rfind("EvClass", 0) == 0) {
                        ++fired;
                        name = r.step;
                    }
                expect(fired == 1, "exactly one rule must fire for " + text);
                bool gap = rel && tg == 2;
                if (gap) {
                    expect(name == "EvClass1" && sink.records[0].payload.contains("warning"),
                           "gap case must warn and idle: " + text);
                } else if (!rel && tg == 0 && sbj == 1) {
                    expect(name == "EvClass2", text + " -> " + name + ", want EvClass2");
                } else if (!rel) {
                    expect(name == "EvClass1", text + " -> " + name + ", want EvClass1");
                } else if (tg == 0) {
                    expect(name == "EvClass4", text + " -> " + name + ", want EvClass4");
                } else {
                    expect(name == "EvClass3", text + " -> " + name + ", want EvClass3");
                }
            }
        }
    }
}

// 5. psi against the hand-derived Table-1 values.
static void criterion5() {
    SimulationConfig cfg = load_simulation(fixture_dir() + "/table1.emas");
    Traits tr = {{Atom::intern("extraversion"), 0.9}, {Atom::intern("neuroticism"), 0.1}};
    const AffectVector& sad = *cfg.model.prototypes.find(Atom::intern("sadness"));
    const AffectVector& anger = *cfg.model.prototypes.find(Atom::intern("anger"));
    expect(std::fabs(cfg.model.psi(tr, sad) - 0.469231) < 1e-6,
           "psi(sadness) != 0.469231 +- 1e-6");
    expect(std::fabs(cfg.model.psi(tr, anger) - 0.407692) < 1e-6,
           "psi(anger) != 0.407692 +- 1e-6");
}

// 6. Plan-choice extremes and priority scale invariance, 10,000 random cases.
static void criterion6() {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> count(1, 10);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> grid(0, 40);
    std::uniform_real_distribution<double> rl_dist(0.0, 1.0);
    std::vector<PlanDef> defs(10);
    for (int iter = 0; iter < 10000; ++iter) {
        int n = count(rng);
        std::vector<RationalTransient::Match> c;
        bool r_positive = false, a_positive = false;
        for (int i = 0; i < n; ++i) {
            defs[i].priority = grid(rng) * 0.25; // exact under *2 / *0.5
            RationalTransient::Match m;
            m.plan = &defs[i];
            m.in_r = coin(rng);
            m.in_a = !m.in_r;
            if (m.in_r && defs[i].priority > 0) r_positive = true;
            if (!m.in_r && defs[i].priority > 0) a_positive = true;
            c.push_back(m);
        }
        auto one = select_applicable_plan(c, 1.0);
        if (r_positive) expect(c[*one].in_r, "rl=1 selected an A-only plan");
        auto zero = select_applicable_plan(c, 0.0);
        if (a_positive) expect(!c[*zero].in_r, "rl=0 selected an R plan");

        double rl = rl_dist(rng);
        auto base = select_applicable_plan(c, rl);
        std::vector<double> saved;
        for (int i = 0; i < n; ++i) saved.push_back(defs[i].priority);
        for (double k : {0.5, 2.0}) {
            for (int i = 0; i < n; ++i) defs[i].priority = saved[i] * k;
            auto scaled = select_applicable_plan(c, rl);
            expect(*scaled == *base, "priority scaling changed the argmax");
        }
        for (int i = 0; i < n; ++i) defs[i].priority = saved[i];
    }
}

// 7. phi2 nullity at al = 0 and linearity in al on interior points.
static void criterion7() {
    Traits traits;
    AffectModel model;
    Atom t = Atom::intern("extraversion");
    for (const auto& [label, proto] : model.prototypes.entries()) model.omega.set(label, t, 1.0);
    traits[t] = 0.7;
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> comp(-0.4, 0.4);
    std::uniform_real_distribution<double> link(-1.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        AffectVector mood{comp(rng), comp(rng), comp(rng)};
        AffectVector e{comp(rng), comp(rng), comp(rng)};
        AffectVector nul = phi2(model, traits, 0.0, mood, e);
        expect(nul.intensity() == 0.0, "al = 0 must produce a zero-intensity emotion");
        double al = link(rng);
        AffectVector full = phi2(model, traits, al, mood, e);
        AffectVector half = phi2(model, traits, al / 2.0, mood, e);
        for (size_t cidx = 0; cidx < full.size(); ++cidx)
            expect(std::fabs(half[cidx] - full[cidx] / 2.0) < 1e-9,
                   "halving al must halve every component");
    }
}

// 8. Decay convergence within the geometric bound.
static void criterion8() {
    std::mt19937 rng(88);
    std::uniform_real_distribution<double> comp(-1.0, 1.0);
    std::uniform_real_distribution<double> rate_dist(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        AffectVector mood{comp(rng), comp(rng), comp(rng)};
        AffectVector eq{comp(rng), comp(rng), comp(rng)};
        double rate = 1.0 - rate_dist(rng) * 0.999; // (0.001, 1]
        double d0 = (mood - eq).magnitude();
        long bound;
        if (d0 <= 1e-6)
            bound = 1;
        else if (rate == 1.0)
            bound = 1;
        else
            bound = static_cast<long>(std::ceil(std::log(1e-6 / d0) / std::log(1.0 - rate))) + 1;
        double dist = d0;
        long steps = 0;
        while (dist > 1e-6 && steps <= bound) {
            mood = decay(mood, eq, rate);
            double next = (mood - eq).magnitude();
            expect(next <= dist + 1e-12, "distance to equilibrium increased");
            dist = next;
            ++steps;
        }
        expect(dist <= 1e-6, "decay missed the convergence bound");
        expect(steps <= bound, "decay exceeded the step bound");
    }
}

// 9. Byte-identical traces for identical inputs.
static void criterion9() {
    auto run_once = [] {
        std::ostringstream out;
        JsonLinesSink sink(out);
        Simulation sim(load_simulation(scenario_dir() + "/slap.emas", scenario_dir() + "/slap.scn"),
                       sink);
        sim.run(10);
        return out.str();
    };
    std::string a = run_once();
    std::string b = run_once();
    expect(!a.empty(), "empty trace");
    expect(a == b, "traces differ between identical runs");
}

// 10. |Mem| equals the number of EmSel passes that produced an emotion, and
// stored entries match the traced selections.
static void criterion10() {
    const BundledRun& run = bundled();
    for (const auto& [id, state] : run.sim->agents()) {
        size_t selected = 0;
        std::vector<const nlohmann::json*> chosen;
        for (const TraceRecord& r : run.sink.records) {
            if (r.agent != id.str() || r.step != "EmSel1") continue;
            if (!r.payload.at("selected").is_null()) {
                ++selected;
                chosen.push_back(&r.payload.at("selected"));
            }
        }
        expect(state.memory.size() == selected,
               id.str() + ": |Mem| = " + std::to_string(state.memory.size()) + " but " +
                   std::to_string(selected) + " EmSel selections were traced");
        if (state.memory.size() != selected) continue;
        for (size_t i = 0; i < chosen.size(); ++i) {
            const AffectiveMemoryEntry& entry = state.memory[i];
            expect(chosen[i]->at("label") == entry.emotion.label.str(),
                   id.str() + ": memory entry " + std::to_string(i) +
                       " label differs from the traced Fe");
            for (size_t cdx = 0; cdx < entry.emotion.vector.size(); ++cdx) {
                double traced = chosen[i]->at("vector").at(cdx).get<double>();
                expect(std::fabs(traced - entry.emotion.vector[cdx]) < 5e-7,
                       id.str() + ": memory vector component differs from the trace");
            }
        }
    }
}

// 11. Round-trip of every bundled fixture plus the parser fuzz suite.
static void criterion11() {
    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    for (const char* name : {"lily.easl", "marshall.easl", "barney.easl"}) {
        std::string path = scenario_dir() + "/" + name;
        AgentProgram first = parse_agent(slurp(path), path);
        std::string printed = to_source(first);
        AgentProgram second = parse_agent(printed, path + "<reprint>");
        expect(to_source(second) == printed, std::string(name) + " does not round-trip");
    }
    const std::string mas_fixtures[] = {scenario_dir() + "/slap.emas",
                                        fixture_dir() + "/table1.emas"};
    for (const std::string& path : mas_fixtures) {
        MasProject first = parse_mas(slurp(path), path);
        std::string printed = to_source(first);
        MasProject second = parse_mas(printed, path + "<reprint>");
        expect(to_source(second) == printed, path + " does not round-trip");
    }

    std::mt19937 rng(20240101);
    std::uniform_int_distribution<int> len(0, 64);
    std::uniform_int_distribution<int> byte(0, 255);
    long crashes = 0;
    for (int i = 0; i < 100000; ++i) {
        std::string junk;
        int n = len(rng);
        junk.reserve(n);
        for (int k = 0; k < n; ++k) junk += char(byte(rng));
        try {
            switch (i % 3) {
            case 0: parse_agent(junk, "<fuzz>"); break;
            case 1: parse_mas(junk, "<fuzz>"); break;
            default: parse_scenario(junk, "<fuzz>"); break;
            }
        } catch (const parse_error&) {
            // a diagnostic is the expected outcome
        } catch (...) {
            ++crashes;
        }
    }
    expect(crashes == 0, std::to_string(crashes) + " fuzz inputs escaped the diagnostic path");
}

int main() {
    criterion(1, "empathic path reproduces the slap narrative", criterion1);
    criterion(2, "self path elicits and keeps sadness", criterion2);
    criterion(3, "affective-link dynamics", criterion3);
    criterion(4, "event classification is exhaustive", criterion4);
    criterion(5, "psi matches the Table-1 hand values", criterion5);
    criterion(6, "plan-choice extremes and scale invariance", criterion6);
    criterion(7, "empathic regulation nullity and linearity", criterion7);
    criterion(8, "mood decay convergence", criterion8);
    criterion(9, "byte-identical deterministic traces", criterion9);
    criterion(10, "affective memory matches the traced selections", criterion10);
    criterion(11, "fixture round-trips and parser fuzzing", criterion11);
    if (failures) std::printf("%d criterion check(s) failed\n", failures);
    return failures;
}

#ifndef EASL_TESTS_HELPERS_HPP
#define EASL_TESTS_HELPERS_HPP

#include <memory>
#include <string>

#include "easl/parser.hpp"
#include "easl/state.hpp"
#include "easl/trace.hpp"

namespace easl::testing {

// omega with positive rows for every built-in prototype label over E/N, so
// psi is defined whatever label comes up.
inline AffectModel full_model() {
    AffectModel m;
    Atom e = Atom::intern("extraversion");
    Atom n = Atom::intern("neuroticism");
    auto row = [&](const char* label, double we, double wn) {
        m.omega.set(Atom::intern(label), e, we);
        m.omega.set(Atom::intern(label), n, wn);
    };
    row("joy", 0.6, 0.2);
    row("happy_for", 0.7, 0.2);
    row("hope", 0.5, 0.3);
    row("anger", 0.5, 0.8);
    row("fear", 0.2, 0.8);
    row("sadness", 0.6, 0.7);
    row("guilt", 0.3, 0.7);
    row("sorry_for", 0.5, 0.6);
    return m;
}

struct TestWorld {
    AffectModel model = full_model();
    EmotionTable emotions = EmotionTable::builtin_default();
    MemorySink sink;
    CycleContext ctx;

    TestWorld() {
        ctx.model = &model;
        ctx.emotions = &emotions;
        ctx.trace = &sink;
    }

    AgentState make_agent(const std::string& id, const std::string& source = "") {
        AgentState st;
        st.id = Atom::intern(id);
        auto program = std::make_shared<AgentProgram>(parse_agent(source, id + ".easl"));
        st.traits = program->personality.traits;
        if (st.traits.empty())
            st.traits = {{Atom::intern("extraversion"), 0.9},
                         {Atom::intern("neuroticism"), 0.1}};
        st.rationality = program->personality.rationality.value_or(0.5);
        st.coping = program->personality.coping;
        for (const TermPtr& b : program->init_beliefs) st.beliefs.add(b);
        for (const OtherAgentDef& other : program->others) {
            OtherAgentInfo info;
            info.id = other.id;
            info.affective_link = other.affective_link().value_or(0.0);
            st.others.emplace(other.id, info);
        }
        for (const TermPtr& g : program->init_goals)
            st.circ.events.push_back(
                Event{TriggeringEvent{EventOp::add, EventType::achievement, g}, -1});
        st.program = std::move(program);
        return st;
    }

    // Steps traced for one agent, in order.
    std::vector<std::string> steps(const std::string& agent = "") const {
        std::vector<std::string> out;
        for (const TraceRecord& r : sink.records)
            if (agent.empty() || r.agent == agent) out.push_back(r.step);
        return out;
    }
};

inline Event percept(const std::string& text) {
    return Event{TriggeringEvent{EventOp::add, EventType::belief, parse_ground_term(text)}, -1};
}

} // namespace easl::testing

#endif

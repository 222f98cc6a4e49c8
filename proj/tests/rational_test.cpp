#include <doctest.h>

#include <random>

#include "easl/rational.hpp"
#include "helpers.hpp"

using namespace easl;
using namespace easl::testing;

namespace {

RationalTransient::Match match_for(const PlanDef* plan, bool in_r, bool in_a) {
    RationalTransient::Match m;
    m.plan = plan;
    m.in_r = in_r;
    m.in_a = in_a;
    return m;
}

} // namespace

TEST_CASE("proc_msg: tell adds an annotated belief, achieve queues a goal") {
    TestWorld w;
    AgentState st = w.make_agent("lily");
    Message tell;
    tell.mid = 1;
    tell.sender = Atom::intern("marshall");
    tell.ilf = Atom::intern("tell");
    tell.content = parse_ground_term("time(cloudy)");
    st.mail.inbox.push_back(tell);

    Message achieve = tell;
    achieve.mid = 2;
    achieve.sender = Atom::intern("lily");
    achieve.ilf = Atom::intern("achieve");
    achieve.content = parse_ground_term("greet(barney)");
    st.mail.inbox.push_back(achieve);

    Message unknown = tell;
    unknown.mid = 3;
    unknown.ilf = Atom::intern("askOne");
    st.mail.inbox.push_back(unknown);

    proc_msg(st, w.ctx);
    CHECK(st.mail.inbox.empty());
    REQUIRE(st.beliefs.items().size() == 1);
    CHECK(to_string(st.beliefs.items()[0]) == "time(cloudy)[source(marshall)]");
    REQUIRE(st.circ.events.size() == 2);
    CHECK(st.circ.events[0].te.type == EventType::belief);
    CHECK(st.circ.events[1].te.type == EventType::achievement);
    CHECK(to_string(st.circ.events[1].te.term) == "greet(barney)");
    // the unknown ilf was dropped with a warning in the trace
    REQUIRE(w.sink.records.size() == 1);
    CHECK(w.sink.records[0].payload.contains("dropped"));
}

TEST_CASE("proc_msg with an empty inbox changes nothing") {
    TestWorld w;
    AgentState st = w.make_agent("lily");
    proc_msg(st, w.ctx);
    CHECK(st.beliefs.items().empty());
    CHECK(st.circ.events.empty());
}

TEST_CASE("select_event is FIFO") {
    TestWorld w;
    AgentState st = w.make_agent("lily");
    st.circ.events.push_back(percept("first"));
    st.circ.events.push_back(percept("second"));
    REQUIRE(select_event(st, w.ctx));
    CHECK(to_string(st.t.event->te.term) == "first");
    REQUIRE(select_event(st, w.ctx));
    CHECK(to_string(st.t.event->te.term) == "second");
    CHECK(!select_event(st, w.ctx));
}

TEST_CASE("relevant and applicable plans") {
    TestWorld w;
    AgentState st = w.make_agent("lily",
                                 "+time(X) : true <- .print(X).\n"
                                 "+time(X) : raining <- .print(X).\n"
                                 "+weather(X) : true <- .print(X).\n");
    st.circ.events.push_back(percept("time(cloudy)"));
    REQUIRE(select_event(st, w.ctx));
    relevant_plans(st, w.ctx);
    REQUIRE(st.t.relevant.size() == 2);
    CHECK(to_string(*st.t.relevant[0].subst.lookup("X")) == "cloudy");
    applicable_plans(st, w.ctx);
    REQUIRE(st.t.applicable.size() == 1); // false context filtered out
    CHECK(st.t.applicable[0].in_r);

    // event with no relevant plan is discarded with a trace record
    st.circ.events.push_back(percept("earthquake"));
    REQUIRE(select_event(st, w.ctx));
    relevant_plans(st, w.ctx);
    CHECK(!st.t.event.has_value());
    bool discarded = false;
    for (const auto& r : w.sink.records)
        if (r.step == "RelPl" && r.payload.contains("discarded")) discarded = true;
    CHECK(discarded);
}

TEST_CASE("Eq. 1 plan choice") {
    TestWorld w;
    AgentState st = w.make_agent("lily",
                                 "@p1[priority(0.6)] +go : true <- a1.\n"
                                 "@p2[priority(0.8)] +go : true <- a2.\n");
    const PlanDef* p1 = st.program->plan_by_label(Atom::intern("p1"));
    const PlanDef* p2 = st.program->plan_by_label(Atom::intern("p2"));

    // rl = 0.5: R-plan 0.6 scores 0.30, A-plan 0.8 scores 0.40
    std::vector<RationalTransient::Match> c = {match_for(p1, true, false),
                                               match_for(p2, false, true)};
    auto pick = select_applicable_plan(c, 0.5);
    REQUIRE(pick);
    CHECK(c[*pick].plan == p2);

    // rl = 1: an A-only plan never beats an R plan with positive priority
    pick = select_applicable_plan(c, 1.0);
    REQUIRE(pick);
    CHECK(c[*pick].plan == p1);

    // rl = 0, symmetric
    pick = select_applicable_plan(c, 0.0);
    REQUIRE(pick);
    CHECK(c[*pick].plan == p2);

    // membership in both sets scores through the R branch
    std::vector<RationalTransient::Match> both = {match_for(p1, true, true),
                                                  match_for(p2, false, true)};
    pick = select_applicable_plan(both, 1.0);
    REQUIRE(pick);
    CHECK(both[*pick].plan == p1);

    // declaration order breaks ties
    std::vector<RationalTransient::Match> tied = {match_for(p1, true, false),
                                                  match_for(p1, true, false)};
    CHECK(*select_applicable_plan(tied, 0.7) == 0);
}

TEST_CASE("Eq. 1 extremes and scale invariance, randomized") {
    TestWorld w;
    // plans with priorities that stay exact under power-of-two scaling
    std::string src;
    for (int i = 0; i < 8; ++i)
        src += "@p" + std::to_string(i) + "[priority(" + std::to_string((i + 1) * 25) +
               ")] +go : true <- a.\n";
    AgentState st = w.make_agent("lily", src);
    std::mt19937 rng(97);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> count(1, 8);
    std::uniform_real_distribution<double> rl_dist(0.0, 1.0);
    for (int iter = 0; iter < 2000; ++iter) {
        std::vector<RationalTransient::Match> c;
        bool has_r_positive = false;
        int n = count(rng);
        for (int i = 0; i < n; ++i) {
            bool in_r = coin(rng);
            c.push_back(match_for(&st.program->plans[i], in_r, !in_r));
            if (in_r && st.program->plans[i].priority > 0) has_r_positive = true;
        }
        auto at_one = select_applicable_plan(c, 1.0);
        REQUIRE(at_one);
        if (has_r_positive) CHECK(c[*at_one].in_r);
        auto at_zero = select_applicable_plan(c, 0.0);
        bool has_a_positive = false;
        for (const auto& m : c)
            if (!m.in_r && m.plan->priority > 0) has_a_positive = true;
        if (has_a_positive) CHECK(!c[*at_zero].in_r);

        // scaling every priority by a power of two never changes the argmax
        double rl = rl_dist(rng);
        auto base = select_applicable_plan(c, rl);
        for (double k : {0.5, 2.0, 4.0}) {
            std::vector<PlanDef> scaled_defs;
            scaled_defs.reserve(c.size());
            for (const auto& m : c) {
                PlanDef d = *m.plan;
                d.priority *= k;
                scaled_defs.push_back(d);
            }
            std::vector<RationalTransient::Match> scaled;
            for (size_t i = 0; i < c.size(); ++i)
                scaled.push_back(match_for(&scaled_defs[i], c[i].in_r, c[i].in_a));
            CHECK(*select_applicable_plan(scaled, rl) == *base);
        }
    }
}

TEST_CASE("execute_intention_step: belief updates, messages, subgoals") {
    TestWorld w;
    AgentState st = w.make_agent(
        "lily",
        "+!start : true <- +seen(slap); .send(barney, tell, hello); !next; .print(\"done\").\n"
        "+!next : true <- true.\n");
    st.circ.events.push_back(
        Event{TriggeringEvent{EventOp::add, EventType::achievement, parse_ground_term("start")},
              -1});

    run_reasoning_pass(st, w.ctx); // selects plan, first body step: +seen(slap)
    REQUIRE(st.beliefs.items().size() == 1);
    CHECK(to_string(st.beliefs.items()[0]) == "seen(slap)[source(self)]");
    // exactly one event queued for the belief mutation
    REQUIRE(st.circ.events.size() == 1);
    CHECK(st.circ.events[0].te.op == EventOp::add);

    run_reasoning_pass(st, w.ctx); // consumes +seen event (no plan), executes .send
    REQUIRE(st.mail.outbox.size() == 1);
    CHECK(st.mail.outbox[0].recipient == Atom::intern("barney"));
    CHECK(st.mail.outbox[0].ilf == Atom::intern("tell"));

    run_reasoning_pass(st, w.ctx); // executes !next -> subgoal event, intention waits
    REQUIRE(st.circ.intentions.size() == 1);
    CHECK(st.circ.intentions[0].waiting);

    run_reasoning_pass(st, w.ctx); // subgoal selected, plan true-body pushed and popped
    run_reasoning_pass(st, w.ctx); // .print("done") runs and the intention completes
    bool printed = false;
    for (const auto& r : w.sink.records)
        if (r.step == "ExcInt" && r.payload.value("op", "") == ".print" &&
            r.payload.value("text", "") == "done")
            printed = true;
    CHECK(printed);
    run_reasoning_pass(st, w.ctx);
    CHECK(st.circ.intentions.empty());
}

TEST_CASE("empty intention set: ExcInt is a no-op") {
    TestWorld w;
    AgentState st = w.make_agent("lily");
    select_intention(st, w.ctx);
    execute_intention_step(st, w.ctx);
    CHECK(st.circ.intentions.empty());
}

TEST_CASE("subgoal without applicable plan drops the intention and signals") {
    TestWorld w;
    AgentState st = w.make_agent("lily", "+!start : true <- !nowhere; .print(\"unreached\").\n");
    st.circ.events.push_back(
        Event{TriggeringEvent{EventOp::add, EventType::achievement, parse_ground_term("start")},
              -1});
    run_reasoning_pass(st, w.ctx); // !nowhere queued
    run_reasoning_pass(st, w.ctx); // no plan for it: intention dropped, -! event queued
    CHECK(st.circ.intentions.empty());
    REQUIRE(!st.circ.events.empty());
    CHECK(st.circ.events.back().te.op == EventOp::del);
    CHECK(st.circ.events.back().te.type == EventType::achievement);
}

TEST_CASE("context evaluation backtracks over belief choices") {
    TestWorld w;
    AgentState st = w.make_agent("lily",
                                 "p(1).\np(2).\nq(2).\n"
                                 "+!go : p(X) & q(X) <- .print(X).\n");
    Substitution s;
    REQUIRE(eval_context(st.program->plans[0].context, st.beliefs, s));
    CHECK(to_string(s.apply(Term::make_variable("X"))) == "2");

    // negation as failure
    AgentState st2 = w.make_agent("lily", "p(1).\n+!go : not p(2) & not r(Y) <- a.\n");
    Substitution s2;
    CHECK(eval_context(st2.program->plans[0].context, st2.beliefs, s2));
    AgentState st3 = w.make_agent("lily", "p(2).\n+!go : not p(2) <- a.\n");
    Substitution s3;
    CHECK(!eval_context(st3.program->plans[0].context, st3.beliefs, s3));
}

TEST_CASE("determinism: identical state and inputs give identical traces") {
    auto run_once = [] {
        TestWorld w;
        AgentState st = w.make_agent("lily",
                                     "!start.\n"
                                     "+!start : true <- +a; +b; .print(\"x\").\n"
                                     "+a : true <- .print(\"a\").\n");
        for (int i = 0; i < 6; ++i) run_reasoning_pass(st, w.ctx);
        std::string out;
        for (const auto& r : w.sink.records) out += serialize_trace_record(r) + "\n";
        return out;
    };
    CHECK(run_once() == run_once());
}

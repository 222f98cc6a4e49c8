#include "easl/simulation.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "easl/diagnostics.hpp"
#include "easl/parser.hpp"

namespace easl {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string resolve(const std::filesystem::path& base_dir, const std::string& rel) {
    std::filesystem::path p(rel);
    if (p.is_absolute()) return p.string();
    return (base_dir / p).string();
}

} // namespace

SimulationConfig load_simulation(const std::string& mas_path, const std::string& scenario_path) {
    SimulationConfig cfg;
    std::filesystem::path base_dir = std::filesystem::path(mas_path).parent_path();
    cfg.project = parse_mas(read_file(mas_path), mas_path);

    if (cfg.project.prototypes_file)
        cfg.model.prototypes =
            EmotionPrototypeTable::load(resolve(base_dir, *cfg.project.prototypes_file));
    if (cfg.project.emotion_table_file)
        cfg.emotions = EmotionTable::load(resolve(base_dir, *cfg.project.emotion_table_file));
    cfg.model.omega = cfg.project.w_matrix;
    if (cfg.project.al_weight) cfg.model.al_weight = *cfg.project.al_weight;

    if (!cfg.project.has_w_matrix && !cfg.project.agents.empty())
        throw config_error("MAS project defines no w_matrix__ (the personality weighting "
                           "needs one)");

    // Every omega label must belong to the configured emotion label set, and
    // no explicit row may sum to zero (psi would be undefined).
    for (Atom label : cfg.model.omega.emotion_labels()) {
        if (!cfg.model.prototypes.find(label))
            throw config_error("omega matrix names unknown emotion label '" + label.str() + "'");
        if (cfg.model.omega.row_sum(label) <= 0.0)
            throw config_error("omega matrix row for '" + label.str() +
                               "' has no positive weight");
    }

    for (const MasAgentEntry& entry : cfg.project.agents) {
        std::string file = resolve(base_dir, entry.file);
        auto program = std::make_shared<AgentProgram>(parse_agent(read_file(file), file));
        // Coping strategies must name ground achievement-goal plans.
        for (Atom label : program->personality.coping) {
            const PlanDef* plan = program->plan_by_label(label);
            if (!plan) continue; // rejected by the parser already
            if (plan->trigger.type != EventType::achievement || !is_ground(plan->trigger.term))
                throw config_error("coping strategy '" + label.str() + "' of agent '" +
                                   entry.id.str() +
                                   "' must trigger a ground achievement goal");
        }
        cfg.programs[entry.id] = std::move(program);
    }

    if (!scenario_path.empty()) {
        cfg.scenario = parse_scenario(read_file(scenario_path), scenario_path);
        for (const ScenarioInjection& inj : cfg.scenario.injections) {
            if (!inj.broadcast && !cfg.programs.count(inj.recipient))
                throw config_error("scenario addresses unknown agent '" + inj.recipient.str() +
                                   "'");
        }
    }
    return cfg;
}

Simulation::Simulation(SimulationConfig config, TraceSink& sink)
    : cfg_(std::move(config)), sink_(sink), rng_(cfg_.seed) {
    for (const MasAgentEntry& entry : cfg_.project.agents) {
        auto it = cfg_.programs.find(entry.id);
        if (it == cfg_.programs.end())
            throw config_error("no program loaded for agent '" + entry.id.str() + "'");
        AgentState st;
        st.id = entry.id;
        st.program = it->second;
        st.traits = st.program->personality.traits;
        st.rationality = st.program->personality.rationality.value_or(0.5);
        st.coping = st.program->personality.coping;
        for (const TermPtr& belief : st.program->init_beliefs) st.beliefs.add(belief);
        for (const OtherAgentDef& other : st.program->others) {
            OtherAgentInfo info;
            info.id = other.id;
            info.affective_link = other.affective_link().value_or(0.0);
            st.others.emplace(other.id, std::move(info));
        }
        for (const TermPtr& goal : st.program->init_goals)
            st.circ.events.push_back(
                Event{TriggeringEvent{EventOp::add, EventType::achievement, goal}, -1});
        if (entry.equilibrium) st.equilibrium = *entry.equilibrium;
        st.ta.mood = entry.mood ? *entry.mood : st.equilibrium;
        if (entry.decay) st.decay_rate = *entry.decay;
        agents_.emplace(entry.id, std::move(st));
    }
}

AgentState& Simulation::agent(Atom id) {
    auto it = agents_.find(id);
    if (it == agents_.end()) throw config_error("unknown agent '" + id.str() + "'");
    return it->second;
}

void Simulation::inject_percept(AgentState& state, const TermPtr& percept) {
    TermPtr term = percept;
    if (!find_annot(term, reserved::source())) {
        TermList annots = term->annots();
        annots.push_back(
            Term::make_compound(reserved::source(), {Term::make_atom("percept")}));
        term = term->with_annots(std::move(annots));
    }
    state.beliefs.add(term);
    state.circ.events.push_back(Event{TriggeringEvent{EventOp::add, EventType::belief, term}, -1});
}

void Simulation::deliver_percepts() {
    const auto& injections = cfg_.scenario.injections;
    while (next_injection_ < injections.size() && injections[next_injection_].tick == tick_) {
        const ScenarioInjection& inj = injections[next_injection_];
        if (inj.broadcast) {
            for (auto& [id, state] : agents_) inject_percept(state, inj.percept);
        } else {
            inject_percept(agent(inj.recipient), inj.percept);
        }
        ++next_injection_;
    }
}

void Simulation::deliver_messages() {
    for (auto& [id, state] : agents_) {
        for (Message& msg : state.mail.outbox) {
            auto it = agents_.find(msg.recipient);
            if (it == agents_.end()) {
                TraceRecord r;
                r.tick = tick_;
                r.agent = id.str();
                r.cycle = "sim";
                r.step = "Undeliverable";
                r.payload["recipient"] = msg.recipient.str();
                r.payload["content"] = to_string(msg.content);
                sink_.emit(r);
                continue;
            }
            it->second.mail.inbox.push_back(std::move(msg));
        }
        state.mail.outbox.clear();
    }
}

void Simulation::step_tick() {
    TraceRecord marker;
    marker.tick = tick_;
    marker.agent = "*";
    marker.cycle = "sim";
    marker.step = "Tick";
    marker.payload = nlohmann::json::object();
    sink_.emit(marker);

    deliver_percepts();
    deliver_messages();

    CycleContext ctx;
    ctx.model = &cfg_.model;
    ctx.emotions = &cfg_.emotions;
    ctx.trace = &sink_;
    ctx.tick = tick_;
    ctx.perspective = cfg_.project.perspective;
    ctx.target_concerns = [this](Atom id) -> const std::vector<ConcernDef>* {
        auto it = cfg_.programs.find(id);
        return it == cfg_.programs.end() ? nullptr : &it->second->concerns;
    };

    for (auto& [id, state] : agents_) run_reasoning_pass(state, ctx);

    for (auto& [id, state] : agents_) {
        AffectVector before = state.ta.mood;
        state.ta.mood = decay(state.ta.mood, state.equilibrium, state.decay_rate);
        TraceRecord r;
        r.tick = tick_;
        r.agent = id.str();
        r.cycle = "affective";
        r.step = "AsDecay";
        r.payload["mood_before"] = to_json(before);
        r.payload["mood_after"] = to_json(state.ta.mood);
        r.payload["rate"] = state.decay_rate;
        sink_.emit(r);
    }

    ++tick_;
}

void Simulation::run(long ticks) {
    for (long i = 0; i < ticks; ++i) step_tick();
}

std::string summary(const Simulation& sim) {
    std::ostringstream os;
    for (const auto& [id, state] : sim.agents()) {
        os << id.str() << ": mood=" << state.ta.mood;
        os << " links={";
        bool first = true;
        for (const auto& [oid, info] : state.others) {
            if (!first) os << ", ";
            first = false;
            os << oid.str() << ": " << info.affective_link;
        }
        os << "} |Mem|=" << state.memory.size() << '\n';
    }
    return os.str();
}

} // namespace easl

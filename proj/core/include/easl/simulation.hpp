#ifndef EASL_SIMULATION_HPP
#define EASL_SIMULATION_HPP

#include <map>
#include <random>
#include <string>

#include "easl/affective.hpp"
#include "easl/rational.hpp"
#include "easl/state.hpp"
#include "easl/trace.hpp"

namespace easl {

struct SimulationConfig {
    MasProject project;
    std::map<Atom, std::shared_ptr<const AgentProgram>> programs;
    AffectModel model;
    EmotionTable emotions = EmotionTable::builtin_default();
    Scenario scenario;
    long seed = 0;
};

// Reads the MAS project, its agent programs (paths relative to the project
// file), the optional prototype/emotion-table overrides and the optional
// scenario, and validates the lot. Throws parse_error / config_error.
SimulationConfig load_simulation(const std::string& mas_path,
                                 const std::string& scenario_path = "");

// Deterministic multi-agent scheduler. Agents run in lexicographic id order;
// messages sent at tick t are readable at t+1; mood decays once per tick.
class Simulation {
public:
    Simulation(SimulationConfig config, TraceSink& sink);

    void step_tick();
    void run(long ticks);

    long tick() const { return tick_; }
    const std::map<Atom, AgentState>& agents() const { return agents_; }
    AgentState& agent(Atom id);
    const SimulationConfig& config() const { return cfg_; }

private:
    void deliver_percepts();
    void deliver_messages();
    void inject_percept(AgentState& state, const TermPtr& percept);

    SimulationConfig cfg_;
    TraceSink& sink_;
    std::map<Atom, AgentState> agents_;
    long tick_ = 0;
    size_t next_injection_ = 0;
    std::mt19937_64 rng_; // reserved for stochastic hooks; defaults use none
};

// Human-readable per-agent summary (mood, affective links, |Mem|).
std::string summary(const Simulation& sim);

} // namespace easl

#endif

#ifndef EASL_STATE_HPP
#define EASL_STATE_HPP

#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "easl/affect.hpp"
#include "easl/default_design.hpp"
#include "easl/program.hpp"
#include "easl/steps.hpp"
#include "easl/term.hpp"

namespace easl {

class TraceSink;

// Belief base with semantic (annotation-blind) membership.
class BeliefBase {
public:
    // Returns false (and leaves the base unchanged) when an equal belief is
    // already present.
    bool add(const TermPtr& belief);
    // Removes the first belief equal to the pattern; returns whether one was.
    bool remove(const TermPtr& pattern);
    bool holds(const TermPtr& belief) const;
    const std::vector<TermPtr>& items() const { return items_; }

private:
    std::vector<TermPtr> items_;
};

struct Message {
    int mid = 0;
    Atom sender;
    Atom recipient;
    Atom ilf; // tell | achieve
    TermPtr content;
};

// Queued event: a triggering event plus the intention that produced it
// (negative for external events).
struct Event {
    TriggeringEvent te;
    int intention = -1;

    bool external() const { return intention < 0; }
};

struct IntentionFrame {
    const PlanDef* plan = nullptr;
    Substitution subst;
    size_t pc = 0; // next body step
    TriggeringEvent trigger;
};

struct Intention {
    int id = 0;
    std::vector<IntentionFrame> frames;
    bool waiting = false; // a subgoal event is pending for this stack
};

struct PendingAction {
    long tick = 0;
    TermPtr term;
};

// The circumstance C: intentions, events and pending actions.
struct Circumstance {
    std::vector<Intention> intentions;
    std::deque<Event> events;
    std::vector<PendingAction> actions;
};

// Communication state M.
struct Mailbox {
    std::deque<Message> inbox;
    std::vector<Message> outbox;
    std::vector<std::pair<int, int>> suspended; // (mid, intention id)
};

// Temporary state T of the rational cycle.
struct RationalTransient {
    struct Match {
        const PlanDef* plan = nullptr;
        Substitution subst;
        bool in_r = false; // applicable through plain BDI reasoning
        bool in_a = false; // applicable through the affective conditions
    };

    RationalStep step = RationalStep::proc_msg;
    std::optional<Event> event;       // selected event
    std::vector<Match> relevant;      // R
    std::vector<Match> applicable;    // Ap
    const PlanDef* selected = nullptr;
    int selected_intention = -1;
};

// Per-known-agent record in O.
struct OtherAgentInfo {
    Atom id;
    double affective_link = 0.0;
    AffectVector mood = AffectVector(3); // believed mood; stored and traced, unused by the defaults
};

struct AffectiveMemoryEntry {
    TriggeringEvent event;
    Emotion emotion;
};

// Belief update scheduled by a coping strategy and applied when the rational
// cycle reaches `at`.
struct UbPending {
    bool add = true;
    TermPtr term;
    RationalStep at = RationalStep::proc_msg;
};

// Temporary state Ta of the affective cycle.
struct AffectiveTransient {
    AffectiveStep ast = AffectiveStep::ev_class;
    std::vector<UbPending> ub;
    AppraisalVariables av;
    std::vector<const PlanDef*> pending_cs;
    std::vector<Emotion> ae; // appraised emotions
    std::vector<Emotion> ee; // empathic emotions
    std::optional<Emotion> fe;
    AffectVector mood = AffectVector(3);
};

// Full agent configuration <ag, C, M, T, s, Mem, Ta, O, ast>.
struct AgentState {
    Atom id;
    std::shared_ptr<const AgentProgram> program;
    Traits traits;
    double rationality = 0.5;
    std::vector<Atom> coping;

    BeliefBase beliefs;
    Circumstance circ;
    Mailbox mail;
    RationalTransient t;
    std::vector<AffectiveMemoryEntry> memory;
    AffectiveTransient ta;
    std::map<Atom, OtherAgentInfo> others;

    AffectVector equilibrium = AffectVector(3);
    double decay_rate = 0.05;

    int next_intention_id = 1;
    int next_mid = 1;
    size_t rr_cursor = 0; // round-robin intention selection
};

// Shared per-tick context handed to both cycles.
struct CycleContext {
    const AffectModel* model = nullptr;
    const EmotionTable* emotions = nullptr;
    TraceSink* trace = nullptr;
    long tick = 0;
    EmpathyPerspective perspective = EmpathyPerspective::self_projection;
    // Resolves another agent's declared concerns (target-perspective empathy);
    // may be empty or return null, in which case the observer's own concerns
    // are used.
    std::function<const std::vector<ConcernDef>*(Atom)> target_concerns;
    // AffModB extension point; the default step is the identity.
    std::function<void(AgentState&)> aff_mod_b_hook;
};

// Registers the agent under `id` with a zero affective link when unknown.
OtherAgentInfo& ensure_other(AgentState& state, Atom id);

} // namespace easl

#endif

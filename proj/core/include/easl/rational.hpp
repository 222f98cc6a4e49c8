#ifndef EASL_RATIONAL_HPP
#define EASL_RATIONAL_HPP

#include <optional>

#include "easl/state.hpp"

namespace easl {

// The BDI cycle steps, each tracing one record. A full pass per tick is
// ProcMsg -> AffModB -> SelEv -> (affective pass) -> RelPl -> ApplPl ->
// SelAppPl -> AddIm -> SelInt -> ExcInt -> ClrInt.

// Drains the inbox: `tell` adds a source-annotated belief and queues its
// event, `achieve` queues a +!goal event, anything else is dropped with a
// trace warning.
void proc_msg(AgentState& state, CycleContext& ctx);

// Identity extension hook.
void aff_mod_b(AgentState& state, CycleContext& ctx);

// FIFO head of the event queue into T; false when the queue is empty.
bool select_event(AgentState& state, CycleContext& ctx);

// R: plans whose trigger unifies with the selected event (annotations are
// not matched). Discards the event with a trace record when R is empty.
void relevant_plans(AgentState& state, CycleContext& ctx);

// Ap: members of R whose context holds; flags each entry with R-set
// membership (no affective conditions) and A-set membership (conditions met
// by the current mood and traits).
void applicable_plans(AgentState& state, CycleContext& ctx);

// Plan choice over explicit candidate sets: argmax of priority * rl for
// R-members and priority * (1 - rl) otherwise, ties by candidate order.
std::optional<size_t> select_applicable_plan(const std::vector<RationalTransient::Match>& candidates,
                                             double rl);

// Applies the choice to the transient state; failure of an internal
// achievement event drops its intention and queues the -!goal event.
void select_applicable_plan_step(AgentState& state, CycleContext& ctx);

// Pushes the selected plan as a new intention (external events) or onto the
// awaiting intention (subgoal events).
void add_intended_means(AgentState& state, CycleContext& ctx);

// Round-robin choice among runnable intentions.
void select_intention(AgentState& state, CycleContext& ctx);

// Executes one body step of the selected intention.
void execute_intention_step(AgentState& state, CycleContext& ctx);

// Pops finished frames and drops empty intentions.
void clear_intentions(AgentState& state, CycleContext& ctx);

// One full pass over all rational steps, with the affective pass run on the
// freshly selected event after SelEv.
void run_reasoning_pass(AgentState& state, CycleContext& ctx);

// -- helpers shared with the affective cycle --

// Belief mutation with the paired event (spec: every belief mutation queues
// exactly one event). Terms added from plan bodies get a source(self)
// annotation when none is present.
bool add_belief_with_event(AgentState& state, CycleContext& ctx, const TermPtr& term);
bool del_belief_with_event(AgentState& state, CycleContext& ctx, const TermPtr& term);

// Evaluates a plan context against the belief base, extending `bindings`
// (first solution, beliefs tried in base order).
bool eval_context(const ContextExpr& ctx_expr, const BeliefBase& beliefs, Substitution& bindings);

// True when the plan's affective conditions hold for the given mood/traits.
bool affective_conditions_hold(const AffectiveConditions& cond, const AffectVector& mood,
                               const Traits& traits, const AffectModel& model);

// Applies pending coping belief updates scheduled for the given step.
void apply_ub(AgentState& state, CycleContext& ctx, RationalStep now,
              std::vector<std::string>* applied = nullptr);

} // namespace easl

#endif

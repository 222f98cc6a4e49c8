#ifndef EASL_AFFECTIVE_HPP
#define EASL_AFFECTIVE_HPP

#include "easl/state.hpp"

namespace easl {

// The empathic affective state machine. Each rule traces one record named
// after the transition it fires (EvClass1..4, Appr1, EmReg1, EmphAppr1,
// EmphReg1, EmSel1, AffAd1, SelCs, Cope).

// Event classification. Exactly one of the four rules fires; the documented
// gap (affectively relevant event without a target) logs a warning and idles.
//   EvClass1: irrelevant event, nothing to do.
//   EvClass2: social interaction toward the agent; updates O[subject].al.
//   EvClass3: empathic event; updates O[target].al, moves to EmphAppr.
//   EvClass4: self-directed affective event; moves to Appr.
AffectiveStep classify_event(AgentState& state, CycleContext& ctx, const Event& ev);

// Self-appraisal: derives the appraisal variables and Ae, moves to EmReg.
void appraise(AgentState& state, CycleContext& ctx, const Event& ev);

// Emotion regulation via phi1, moves to EmSel. (The paper prints this rule
// with the EmSel1 label; the trace calls it EmReg1.)
void regulate_emotion(AgentState& state, CycleContext& ctx);

// Self-projection appraisal of an event targeting another agent: derives Ee,
// moves to EmphReg.
void empathic_appraise(AgentState& state, CycleContext& ctx, const Event& ev);

// Empathic regulation via phi2 with the target's affective link, then the
// rule's own al update, moves to EmSel.
void regulate_empathy(AgentState& state, CycleContext& ctx, const Event& ev);

// Final emotion via SelEmotion; appends <event, Fe> to the affective memory.
// Returns ev_class when no emotion was elicited, AffAd otherwise.
AffectiveStep select_final_emotion(AgentState& state, CycleContext& ctx, const Event& ev);

// Mood update via phi3, moves to SelCs.
void adapt_affect(AgentState& state, CycleContext& ctx);

// Selects coping strategies whose guards match the current mood (SelCs) and
// runs them (Cope): goal additions enqueue events, belief updates fill Ub.
void select_coping(AgentState& state, CycleContext& ctx);
void run_coping(AgentState& state, CycleContext& ctx);

// Drives the machine from EvClass back to EvClass for one selected event.
void run_affective_pass(AgentState& state, CycleContext& ctx, const Event& ev);

} // namespace easl

#endif

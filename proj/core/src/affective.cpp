#include "easl/affective.hpp"

#include "easl/rational.hpp"
#include "easl/trace.hpp"

namespace easl {

namespace {

void trace_rule(CycleContext& ctx, const AgentState& state, const char* rule,
                nlohmann::json payload) {
    if (!ctx.trace) return;
    TraceRecord r;
    r.tick = ctx.tick;
    r.agent = state.id.str();
    r.cycle = "affective";
    r.step = rule;
    r.payload = std::move(payload);
    ctx.trace->emit(r);
}

nlohmann::json emotions_json(const std::vector<Emotion>& emotions) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Emotion& e : emotions) arr.push_back(to_json(e));
    return arr;
}

nlohmann::json av_json(const AppraisalVariables& av) {
    nlohmann::json j;
    j["desirability"] = av.desirability;
    j["likelihood"] = av.likelihood;
    switch (av.causal_attribution.kind) {
    case SubjectRef::Kind::agent: j["causal_attribution"] = av.causal_attribution.id.str(); break;
    case SubjectRef::Kind::self: j["causal_attribution"] = "self"; break;
    case SubjectRef::Kind::none: j["causal_attribution"] = nullptr; break;
    }
    return j;
}

const std::vector<ConcernDef>& concerns_for(const AgentState& state, CycleContext& ctx,
                                            const std::optional<Atom>& target) {
    if (ctx.perspective == EmpathyPerspective::target_concerns && target && ctx.target_concerns) {
        if (const std::vector<ConcernDef>* theirs = ctx.target_concerns(*target)) return *theirs;
    }
    return state.program->concerns;
}

} // namespace

AffectiveStep classify_event(AgentState& state, CycleContext& ctx, const Event& ev) {
    const TriggeringEvent& te = ev.te;
    bool rel = aff_rel_ev(te);
    std::optional<Atom> tg = get_target(te);
    SubjectRef sbj = get_subject(te, state.id);
    bool tg_self = tg.has_value() && *tg == state.id;

    nlohmann::json payload;
    payload["event"] = te.to_string();
    payload["affective_relevant"] = rel;
    payload["target"] = tg ? nlohmann::json(tg->str()) : nlohmann::json(nullptr);
    switch (sbj.kind) {
    case SubjectRef::Kind::agent: payload["subject"] = sbj.id.str(); break;
    case SubjectRef::Kind::self: payload["subject"] = "self"; break;
    case SubjectRef::Kind::none: payload["subject"] = nullptr; break;
    }

    if (!rel) {
        bool social = tg_self && sbj.kind == SubjectRef::Kind::agent;
        if (!social) {
            state.ta.ast = AffectiveStep::ev_class;
            trace_rule(ctx, state, "EvClass1", std::move(payload));
            return AffectiveStep::ev_class;
        }
        double iv = get_iv(te);
        OtherAgentInfo& other = ensure_other(state, sbj.id);
        payload["iv"] = iv;
        payload["al_before"] = other.affective_link;
        other.affective_link = update_al(other.affective_link, iv, ctx.model->al_weight);
        payload["al_after"] = other.affective_link;
        payload["other"] = sbj.id.str();
        payload["other_mood"] = to_json(other.mood);
        state.ta.ast = AffectiveStep::ev_class;
        trace_rule(ctx, state, "EvClass2", std::move(payload));
        return AffectiveStep::ev_class;
    }

    if (!tg.has_value()) {
        // No rule covers an affectively relevant event without a target; warn
        // and stay in EvClass.
        payload["warning"] = "affectively relevant event has no target; no rule applies";
        state.ta.ast = AffectiveStep::ev_class;
        trace_rule(ctx, state, "EvClass1", std::move(payload));
        return AffectiveStep::ev_class;
    }

    if (tg_self) {
        state.ta.ast = AffectiveStep::appr;
        trace_rule(ctx, state, "EvClass4", std::move(payload));
        return AffectiveStep::appr;
    }

    double iv = get_iv(te);
    OtherAgentInfo& other = ensure_other(state, *tg);
    payload["iv"] = iv;
    payload["al_before"] = other.affective_link;
    other.affective_link = update_al(other.affective_link, iv, ctx.model->al_weight);
    payload["al_after"] = other.affective_link;
    payload["other"] = tg->str();
    payload["other_mood"] = to_json(other.mood);
    state.ta.ast = AffectiveStep::emph_appr;
    trace_rule(ctx, state, "EvClass3", std::move(payload));
    return AffectiveStep::emph_appr;
}

void appraise(AgentState& state, CycleContext& ctx, const Event& ev) {
    std::vector<std::string> warnings;
    state.ta.ae.clear();
    state.ta.ee.clear();
    state.ta.fe.reset();
    state.ta.av =
        derive_appraisal_variables(ev.te, state.id, state.program->concerns, &warnings);
    state.ta.ae = derive_em(state.ta.av, *ctx.emotions, *ctx.model);
    state.ta.ast = AffectiveStep::em_reg;

    nlohmann::json payload;
    payload["av"] = av_json(state.ta.av);
    payload["emotions"] = emotions_json(state.ta.ae);
    if (!warnings.empty()) payload["warnings"] = warnings;
    trace_rule(ctx, state, "Appr1", std::move(payload));
}

void regulate_emotion(AgentState& state, CycleContext& ctx) {
    nlohmann::json payload;
    payload["before"] = emotions_json(state.ta.ae);
    for (Emotion& e : state.ta.ae)
        e.vector = phi1(*ctx.model, state.traits, state.ta.mood, e.vector);
    payload["after"] = emotions_json(state.ta.ae);
    state.ta.ast = AffectiveStep::em_sel;
    trace_rule(ctx, state, "EmReg1", std::move(payload));
}

void empathic_appraise(AgentState& state, CycleContext& ctx, const Event& ev) {
    std::vector<std::string> warnings;
    state.ta.ae.clear();
    state.ta.ee.clear();
    state.ta.fe.reset();
    std::optional<Atom> tg = get_target(ev.te);
    const std::vector<ConcernDef>& concerns = concerns_for(state, ctx, tg);
    state.ta.av = derive_appraisal_variables(ev.te, state.id, concerns, &warnings);
    state.ta.ee = derive_emph_em(state.ta.av, *ctx.emotions, *ctx.model);
    state.ta.ast = AffectiveStep::emph_reg;

    nlohmann::json payload;
    payload["av"] = av_json(state.ta.av);
    payload["emotions"] = emotions_json(state.ta.ee);
    payload["perspective"] =
        (&concerns == &state.program->concerns) ? "self_projection" : "target_concerns";
    if (!warnings.empty()) payload["warnings"] = warnings;
    trace_rule(ctx, state, "EmphAppr1", std::move(payload));
}

void regulate_empathy(AgentState& state, CycleContext& ctx, const Event& ev) {
    std::optional<Atom> tg = get_target(ev.te);
    nlohmann::json payload;
    payload["before"] = emotions_json(state.ta.ee);
    double al_used = 0.0;
    if (tg) {
        OtherAgentInfo& other = ensure_other(state, *tg);
        al_used = other.affective_link;
        for (Emotion& e : state.ta.ee)
            e.vector = phi2(*ctx.model, state.traits, al_used, state.ta.mood, e.vector);
        // The rule's own where-clause updates the link again, on top of the
        // EvClass3 update; both applications are kept as printed.
        double iv = get_iv(ev.te);
        payload["al_before"] = al_used;
        other.affective_link = update_al(other.affective_link, iv, ctx.model->al_weight);
        payload["al_after"] = other.affective_link;
        payload["target"] = tg->str();
    } else {
        payload["target"] = nullptr;
    }
    payload["after"] = emotions_json(state.ta.ee);
    state.ta.ast = AffectiveStep::em_sel;
    trace_rule(ctx, state, "EmphReg1", std::move(payload));
}

AffectiveStep select_final_emotion(AgentState& state, CycleContext& ctx, const Event& ev) {
    state.ta.fe = sel_emotion(state.ta.ae, state.ta.ee, *ctx.model);
    nlohmann::json payload;
    if (state.ta.fe) {
        payload["selected"] = to_json(*state.ta.fe);
        state.memory.push_back(AffectiveMemoryEntry{ev.te, *state.ta.fe});
        state.ta.ast = AffectiveStep::aff_ad;
    } else {
        payload["selected"] = nullptr;
        state.ta.ast = AffectiveStep::ev_class;
    }
    payload["memory_size"] = state.memory.size();
    trace_rule(ctx, state, "EmSel1", std::move(payload));
    return state.ta.ast;
}

void adapt_affect(AgentState& state, CycleContext& ctx) {
    nlohmann::json payload;
    payload["mood_before"] = to_json(state.ta.mood);
    payload["label_before"] = ctx.model->label_of(state.ta.mood).str();
    state.ta.mood = phi3(*ctx.model, state.traits, state.ta.mood, state.ta.fe->vector);
    payload["mood_after"] = to_json(state.ta.mood);
    payload["label_after"] = ctx.model->label_of(state.ta.mood).str();
    state.ta.ast = AffectiveStep::sel_cs;
    trace_rule(ctx, state, "AffAd1", std::move(payload));
}

void select_coping(AgentState& state, CycleContext& ctx) {
    state.ta.pending_cs.clear();
    nlohmann::json activated = nlohmann::json::array();
    for (Atom label : state.coping) {
        const PlanDef* plan = state.program->plan_by_label(label);
        if (!plan) continue;
        if (!affective_conditions_hold(plan->affective, state.ta.mood, state.traits, *ctx.model))
            continue;
        Substitution probe;
        if (!eval_context(plan->context, state.beliefs, probe)) continue;
        state.ta.pending_cs.push_back(plan);
        activated.push_back(label.str());
    }
    nlohmann::json payload;
    payload["activated"] = activated;
    payload["mood_label"] = ctx.model->label_of(state.ta.mood).str();
    payload["mood_intensity"] = state.ta.mood.intensity();
    state.ta.ast = AffectiveStep::cope;
    trace_rule(ctx, state, "SelCs", std::move(payload));
}

void run_coping(AgentState& state, CycleContext& ctx) {
    nlohmann::json queued = nlohmann::json::array();
    nlohmann::json scheduled = nlohmann::json::array();
    for (const PlanDef* plan : state.ta.pending_cs) {
        state.circ.events.push_back(Event{plan->trigger, -1});
        queued.push_back(plan->trigger.to_string());
        for (const UbEffect& eff : plan->ub_effects) {
            state.ta.ub.push_back(UbPending{eff.add, eff.term, eff.at});
            scheduled.push_back(std::string(eff.add ? "+" : "-") + to_string(eff.term) + " @ " +
                                step_name(eff.at));
        }
    }
    state.ta.pending_cs.clear();
    nlohmann::json payload;
    payload["events"] = queued;
    payload["ub"] = scheduled;
    state.ta.ast = AffectiveStep::ev_class;
    trace_rule(ctx, state, "Cope", std::move(payload));
}

void run_affective_pass(AgentState& state, CycleContext& ctx, const Event& ev) {
    AffectiveStep next = classify_event(state, ctx, ev);
    while (next != AffectiveStep::ev_class) {
        switch (next) {
        case AffectiveStep::appr:
            appraise(state, ctx, ev);
            next = AffectiveStep::em_reg;
            break;
        case AffectiveStep::em_reg:
            regulate_emotion(state, ctx);
            next = AffectiveStep::em_sel;
            break;
        case AffectiveStep::emph_appr:
            empathic_appraise(state, ctx, ev);
            next = AffectiveStep::emph_reg;
            break;
        case AffectiveStep::emph_reg:
            regulate_empathy(state, ctx, ev);
            next = AffectiveStep::em_sel;
            break;
        case AffectiveStep::em_sel:
            next = select_final_emotion(state, ctx, ev);
            break;
        case AffectiveStep::aff_ad:
            adapt_affect(state, ctx);
            next = AffectiveStep::sel_cs;
            break;
        case AffectiveStep::sel_cs:
            select_coping(state, ctx);
            next = AffectiveStep::cope;
            break;
        case AffectiveStep::cope:
            run_coping(state, ctx);
            next = AffectiveStep::ev_class;
            break;
        case AffectiveStep::ev_class:
            break;
        }
    }
    state.ta.ast = AffectiveStep::ev_class;
}

} // namespace easl

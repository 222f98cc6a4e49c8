#include "easl/rational.hpp"

#include <algorithm>

#include "easl/affective.hpp"
#include "easl/trace.hpp"

namespace easl {

namespace {

void trace(CycleContext& ctx, const AgentState& state, RationalStep step,
           nlohmann::json payload) {
    if (!ctx.trace) return;
    TraceRecord r;
    r.tick = ctx.tick;
    r.agent = state.id.str();
    r.cycle = "rational";
    r.step = step_name(step);
    r.payload = std::move(payload);
    ctx.trace->emit(r);
}

std::string plan_name(const PlanDef& plan) {
    return plan.label.valid() ? plan.label.str() : plan.trigger.to_string();
}

TermPtr ensure_source(const TermPtr& term, Atom source_id) {
    if (find_annot(term, reserved::source())) return term;
    TermList annots = term->annots();
    annots.push_back(Term::make_compound(reserved::source(), {Term::make_atom(source_id)}));
    return term->with_annots(std::move(annots));
}

Intention* find_intention(AgentState& state, int id) {
    for (Intention& i : state.circ.intentions)
        if (i.id == id) return &i;
    return nullptr;
}

void drop_intention(AgentState& state, int id) {
    auto& v = state.circ.intentions;
    v.erase(std::remove_if(v.begin(), v.end(), [&](const Intention& i) { return i.id == id; }),
            v.end());
}

bool compare_numbers(RelOp op, double a, double b) {
    switch (op) {
    case RelOp::lt: return a < b;
    case RelOp::le: return a <= b;
    case RelOp::gt: return a > b;
    case RelOp::ge: return a >= b;
    case RelOp::eq: return a == b;
    case RelOp::ne: return a != b;
    }
    return false;
}

bool eval_conjuncts(const ContextExpr& ctx_expr, size_t i, const BeliefBase& beliefs,
                    Substitution& bindings) {
    if (i == ctx_expr.conjuncts.size()) return true;
    const ContextLiteral& lit = ctx_expr.conjuncts[i];
    if (lit.comparison) {
        auto a = lit.comparison->lhs->eval(bindings);
        auto b = lit.comparison->rhs->eval(bindings);
        bool ok = a && b && compare_numbers(lit.comparison->op, *a, *b);
        if (lit.negated) ok = !ok;
        return ok && eval_conjuncts(ctx_expr, i + 1, beliefs, bindings);
    }
    if (lit.negated) {
        for (const TermPtr& belief : beliefs.items()) {
            Substitution probe = bindings;
            if (unify_into(lit.pattern, belief, probe)) return false;
        }
        return eval_conjuncts(ctx_expr, i + 1, beliefs, bindings);
    }
    for (const TermPtr& belief : beliefs.items()) {
        Substitution attempt = bindings;
        if (!unify_into(lit.pattern, belief, attempt)) continue;
        if (eval_conjuncts(ctx_expr, i + 1, beliefs, attempt)) {
            bindings = std::move(attempt);
            return true;
        }
    }
    return false;
}

} // namespace

bool BeliefBase::add(const TermPtr& belief) {
    if (holds(belief)) return false;
    items_.push_back(belief);
    return true;
}

bool BeliefBase::remove(const TermPtr& pattern) {
    for (auto it = items_.begin(); it != items_.end(); ++it) {
        if (equals(*it, pattern)) {
            items_.erase(it);
            return true;
        }
    }
    return false;
}

bool BeliefBase::holds(const TermPtr& belief) const {
    for (const TermPtr& item : items_)
        if (equals(item, belief)) return true;
    return false;
}

OtherAgentInfo& ensure_other(AgentState& state, Atom id) {
    auto it = state.others.find(id);
    if (it == state.others.end()) {
        OtherAgentInfo info;
        info.id = id;
        it = state.others.emplace(id, std::move(info)).first;
    }
    return it->second;
}

bool eval_context(const ContextExpr& ctx_expr, const BeliefBase& beliefs, Substitution& bindings) {
    return eval_conjuncts(ctx_expr, 0, beliefs, bindings);
}

bool affective_conditions_hold(const AffectiveConditions& cond, const AffectVector& mood,
                               const Traits& traits, const AffectModel& model) {
    if (cond.mood_label) {
        if (model.label_of(mood) != *cond.mood_label) return false;
        if (mood.intensity() < cond.min_intensity) return false;
    }
    for (const auto& [trait, min] : cond.trait_min) {
        auto it = traits.find(trait);
        if (it == traits.end() || it->second < min) return false;
    }
    return true;
}

bool add_belief_with_event(AgentState& state, CycleContext& ctx, const TermPtr& term) {
    (void)ctx;
    if (!state.beliefs.add(term)) return false;
    state.circ.events.push_back(Event{TriggeringEvent{EventOp::add, EventType::belief, term}, -1});
    return true;
}

bool del_belief_with_event(AgentState& state, CycleContext& ctx, const TermPtr& term) {
    (void)ctx;
    if (!state.beliefs.remove(term)) return false;
    state.circ.events.push_back(Event{TriggeringEvent{EventOp::del, EventType::belief, term}, -1});
    return true;
}

void apply_ub(AgentState& state, CycleContext& ctx, RationalStep now,
              std::vector<std::string>* applied) {
    auto& ub = state.ta.ub;
    for (auto it = ub.begin(); it != ub.end();) {
        if (it->at != now) {
            ++it;
            continue;
        }
        if (it->add)
            add_belief_with_event(state, ctx, it->term);
        else
            del_belief_with_event(state, ctx, it->term);
        if (applied)
            applied->push_back((it->add ? "+" : "-") + to_string(it->term));
        it = ub.erase(it);
    }
}

void proc_msg(AgentState& state, CycleContext& ctx) {
    state.t.step = RationalStep::proc_msg;
    std::vector<std::string> ub_applied;
    apply_ub(state, ctx, RationalStep::proc_msg, &ub_applied);
    nlohmann::json events = nlohmann::json::array();
    nlohmann::json dropped = nlohmann::json::array();
    int processed = 0;
    while (!state.mail.inbox.empty()) {
        Message msg = std::move(state.mail.inbox.front());
        state.mail.inbox.pop_front();
        ++processed;
        if (msg.ilf == Atom::intern("tell")) {
            TermPtr annotated = ensure_source(msg.content, msg.sender);
            add_belief_with_event(state, ctx, annotated);
            events.push_back("+" + to_string(annotated));
        } else if (msg.ilf == Atom::intern("achieve")) {
            state.circ.events.push_back(
                Event{TriggeringEvent{EventOp::add, EventType::achievement, msg.content}, -1});
            events.push_back("+!" + to_string(msg.content));
        } else {
            dropped.push_back("mid " + std::to_string(msg.mid) + ": unknown ilf '" +
                              msg.ilf.str() + "'");
        }
    }
    nlohmann::json payload;
    payload["processed"] = processed;
    payload["events"] = events;
    if (!dropped.empty()) payload["dropped"] = dropped;
    if (!ub_applied.empty()) payload["ub_applied"] = ub_applied;
    trace(ctx, state, RationalStep::proc_msg, std::move(payload));
}

void aff_mod_b(AgentState& state, CycleContext& ctx) {
    state.t.step = RationalStep::aff_mod_b;
    std::vector<std::string> ub_applied;
    apply_ub(state, ctx, RationalStep::aff_mod_b, &ub_applied);
    if (ctx.aff_mod_b_hook) ctx.aff_mod_b_hook(state);
    nlohmann::json payload;
    payload["hook"] = ctx.aff_mod_b_hook ? "custom" : "identity";
    if (!ub_applied.empty()) payload["ub_applied"] = ub_applied;
    trace(ctx, state, RationalStep::aff_mod_b, std::move(payload));
}

bool select_event(AgentState& state, CycleContext& ctx) {
    state.t.step = RationalStep::sel_ev;
    std::vector<std::string> ub_applied;
    apply_ub(state, ctx, RationalStep::sel_ev, &ub_applied);
    state.t.event.reset();
    state.t.relevant.clear();
    state.t.applicable.clear();
    state.t.selected = nullptr;
    nlohmann::json payload;
    if (state.circ.events.empty()) {
        payload["event"] = nullptr;
    } else {
        state.t.event = std::move(state.circ.events.front());
        state.circ.events.pop_front();
        payload["event"] = state.t.event->te.to_string();
    }
    payload["queued"] = state.circ.events.size();
    if (!ub_applied.empty()) payload["ub_applied"] = ub_applied;
    trace(ctx, state, RationalStep::sel_ev, std::move(payload));
    return state.t.event.has_value();
}

void relevant_plans(AgentState& state, CycleContext& ctx) {
    state.t.step = RationalStep::rel_pl;
    std::vector<std::string> ub_applied;
    apply_ub(state, ctx, RationalStep::rel_pl, &ub_applied);
    nlohmann::json names = nlohmann::json::array();
    if (state.t.event) {
        const TriggeringEvent& te = state.t.event->te;
        for (const PlanDef& plan : state.program->plans) {
            if (plan.trigger.op != te.op || plan.trigger.type != te.type) continue;
            Substitution s;
            if (!unify_into(plan.trigger.term, te.term, s)) continue;
            s.resolve();
            RationalTransient::Match m;
            m.plan = &plan;
            m.subst = std::move(s);
            state.t.relevant.push_back(std::move(m));
            names.push_back(plan_name(plan));
        }
    }
    nlohmann::json payload;
    payload["relevant"] = names;
    if (state.t.event && state.t.relevant.empty()) {
        const Event& ev = *state.t.event;
        bool internal_goal = !ev.external() && ev.te.type == EventType::achievement &&
                             ev.te.op == EventOp::add;
        if (!internal_goal) {
            // external events without a relevant plan are dropped here;
            // internal subgoals fall through to SelAppPl's failure handling
            payload["discarded"] = ev.te.to_string();
            state.t.event.reset();
        }
    }
    if (!ub_applied.empty()) payload["ub_applied"] = ub_applied;
    trace(ctx, state, RationalStep::rel_pl, std::move(payload));
}

void applicable_plans(AgentState& state, CycleContext& ctx) {
    state.t.step = RationalStep::appl_pl;
    std::vector<std::string> ub_applied;
    apply_ub(state, ctx, RationalStep::appl_pl, &ub_applied);
    nlohmann::json names = nlohmann::json::array();
    for (const RationalTransient::Match& m : state.t.relevant) {
        Substitution s = m.subst;
        if (!eval_context(m.plan->context, state.beliefs, s)) continue;
        RationalTransient::Match am;
        am.plan = m.plan;
        am.subst = std::move(s);
        am.in_r = m.plan->affective.empty();
        am.in_a = !m.plan->affective.empty() &&
                  affective_conditions_hold(m.plan->affective, state.ta.mood, state.traits,
                                            *ctx.model);
        if (!am.in_r && !am.in_a) continue;
        names.push_back(plan_name(*am.plan));
        state.t.applicable.push_back(std::move(am));
    }
    nlohmann::json payload;
    payload["applicable"] = names;
    if (!ub_applied.empty()) payload["ub_applied"] = ub_applied;
    trace(ctx, state, RationalStep::appl_pl, std::move(payload));
}

std::optional<size_t> select_applicable_plan(const std::vector<RationalTransient::Match>& candidates,
                                             double rl) {
    std::optional<size_t> best;
    double best_score = 0.0;
    for (size_t i = 0; i < candidates.size(); ++i) {
        const RationalTransient::Match& m = candidates[i];
        if (!m.in_r && !m.in_a) continue;
        // Eq. 1: the R branch takes precedence when a plan sits in both sets.
        double score = m.plan->priority * (m.in_r ? rl : 1.0 - rl);
        if (!best || score > best_score) {
            best = i;
            best_score = score;
        }
    }
    return best;
}

void select_applicable_plan_step(AgentState& state, CycleContext& ctx) {
    state.t.step = RationalStep::sel_app_pl;
    std::vector<std::string> ub_applied;
    apply_ub(state, ctx, RationalStep::sel_app_pl, &ub_applied);
    nlohmann::json payload;
    state.t.selected = nullptr;
    if (state.t.event && !state.t.applicable.empty()) {
        auto choice = select_applicable_plan(state.t.applicable, state.rationality);
        const RationalTransient::Match& m = state.t.applicable[*choice];
        state.t.selected = m.plan;
        payload["plan"] = plan_name(*m.plan);
        payload["branch"] = m.in_r ? "R" : "A";
        payload["score"] = m.plan->priority * (m.in_r ? state.rationality
                                                      : 1.0 - state.rationality);
        // keep the winning substitution in front for AddIm
        if (*choice != 0) std::swap(state.t.applicable[0], state.t.applicable[*choice]);
    } else if (state.t.event) {
        payload["plan"] = nullptr;
        const Event& ev = *state.t.event;
        if (!ev.external() && ev.te.type == EventType::achievement &&
            ev.te.op == EventOp::add) {
            // no applicable plan for a subgoal: drop the intention and signal
            drop_intention(state, ev.intention);
            state.circ.events.push_back(
                Event{TriggeringEvent{EventOp::del, EventType::achievement, ev.te.term}, -1});
            payload["failed_intention"] = ev.intention;
        }
        state.t.event.reset();
    } else {
        payload["plan"] = nullptr;
    }
    if (!ub_applied.empty()) payload["ub_applied"] = ub_applied;
    trace(ctx, state, RationalStep::sel_app_pl, std::move(payload));
}

void add_intended_means(AgentState& state, CycleContext& ctx) {
    state.t.step = RationalStep::add_im;
    std::vector<std::string> ub_applied;
    apply_ub(state, ctx, RationalStep::add_im, &ub_applied);
    nlohmann::json payload;
    if (state.t.event && state.t.selected) {
        const RationalTransient::Match& m = state.t.applicable.front();
        IntentionFrame frame;
        frame.plan = m.plan;
        frame.subst = m.subst;
        frame.trigger = state.t.event->te;
        if (state.t.event->external()) {
            Intention intention;
            intention.id = state.next_intention_id++;
            intention.frames.push_back(std::move(frame));
            state.circ.intentions.push_back(std::move(intention));
            payload["intention"] = state.circ.intentions.back().id;
            payload["new"] = true;
        } else if (Intention* parent = find_intention(state, state.t.event->intention)) {
            parent->frames.push_back(std::move(frame));
            parent->waiting = false;
            payload["intention"] = parent->id;
            payload["new"] = false;
        }
        payload["plan"] = plan_name(*m.plan);
    } else {
        payload["intention"] = nullptr;
    }
    if (!ub_applied.empty()) payload["ub_applied"] = ub_applied;
    trace(ctx, state, RationalStep::add_im, std::move(payload));
}

void select_intention(AgentState& state, CycleContext& ctx) {
    state.t.step = RationalStep::sel_int;
    std::vector<std::string> ub_applied;
    apply_ub(state, ctx, RationalStep::sel_int, &ub_applied);
    state.t.selected_intention = -1;
    auto& intentions = state.circ.intentions;
    nlohmann::json payload;
    if (!intentions.empty()) {
        size_t n = intentions.size();
        for (size_t k = 0; k < n; ++k) {
            size_t idx = (state.rr_cursor + k) % n;
            Intention& cand = intentions[idx];
            if (cand.waiting || cand.frames.empty()) continue;
            state.t.selected_intention = cand.id;
            state.rr_cursor = (idx + 1) % n;
            break;
        }
    }
    payload["intention"] = state.t.selected_intention >= 0
                               ? nlohmann::json(state.t.selected_intention)
                               : nlohmann::json(nullptr);
    if (!ub_applied.empty()) payload["ub_applied"] = ub_applied;
    trace(ctx, state, RationalStep::sel_int, std::move(payload));
}

void execute_intention_step(AgentState& state, CycleContext& ctx) {
    state.t.step = RationalStep::exc_int;
    std::vector<std::string> ub_applied;
    apply_ub(state, ctx, RationalStep::exc_int, &ub_applied);
    nlohmann::json payload;
    Intention* intention =
        state.t.selected_intention >= 0 ? find_intention(state, state.t.selected_intention)
                                        : nullptr;
    if (!intention || intention->frames.empty()) {
        payload["intention"] = nullptr;
        if (!ub_applied.empty()) payload["ub_applied"] = ub_applied;
        trace(ctx, state, RationalStep::exc_int, std::move(payload));
        return;
    }
    IntentionFrame& frame = intention->frames.back();
    payload["intention"] = intention->id;
    if (frame.pc >= frame.plan->body.size()) {
        payload["noop"] = "plan body finished";
        if (!ub_applied.empty()) payload["ub_applied"] = ub_applied;
        trace(ctx, state, RationalStep::exc_int, std::move(payload));
        return;
    }
    const BodyStep& step = frame.plan->body[frame.pc];
    frame.pc++;
    switch (step.op) {
    case BodyStep::Op::add_belief: {
        TermPtr term = ensure_source(frame.subst.apply(step.term), Atom::intern("self"));
        bool added = add_belief_with_event(state, ctx, term);
        payload["op"] = "+" + to_string(term);
        payload["changed"] = added;
        break;
    }
    case BodyStep::Op::del_belief: {
        TermPtr term = frame.subst.apply(step.term);
        bool removed = del_belief_with_event(state, ctx, term);
        payload["op"] = "-" + to_string(term);
        payload["changed"] = removed;
        break;
    }
    case BodyStep::Op::achieve: {
        TermPtr goal = frame.subst.apply(step.term);
        state.circ.events.push_back(
            Event{TriggeringEvent{EventOp::add, EventType::achievement, goal}, intention->id});
        intention->waiting = true;
        payload["op"] = "!" + to_string(goal);
        break;
    }
    case BodyStep::Op::test: {
        TermPtr pattern = frame.subst.apply(step.term);
        bool satisfied = false;
        for (const TermPtr& belief : state.beliefs.items()) {
            Substitution attempt = frame.subst;
            if (unify_into(pattern, belief, attempt)) {
                attempt.resolve();
                frame.subst = std::move(attempt);
                satisfied = true;
                break;
            }
        }
        payload["op"] = "?" + to_string(pattern);
        payload["satisfied"] = satisfied;
        if (!satisfied) {
            payload["dropped_intention"] = intention->id;
            state.circ.events.push_back(
                Event{TriggeringEvent{EventOp::del, EventType::test, pattern}, -1});
            drop_intention(state, intention->id);
        }
        break;
    }
    case BodyStep::Op::send: {
        TermPtr recipient = frame.subst.apply(step.send_recipient);
        TermPtr content = frame.subst.apply(step.term);
        if (!recipient->is_atom()) {
            payload["op"] = ".send";
            payload["error"] = "unbound recipient";
            payload["dropped_intention"] = intention->id;
            state.circ.events.push_back(
                Event{TriggeringEvent{EventOp::del, frame.trigger.type, frame.trigger.term}, -1});
            drop_intention(state, intention->id);
            break;
        }
        Message msg;
        msg.mid = state.next_mid++;
        msg.sender = state.id;
        msg.recipient = recipient->functor();
        msg.ilf = step.send_ilf;
        msg.content = content;
        state.mail.outbox.push_back(std::move(msg));
        payload["op"] = ".send(" + recipient->functor().str() + ", " + step.send_ilf.str() +
                        ", " + to_string(content) + ")";
        break;
    }
    case BodyStep::Op::print: {
        std::string text;
        for (size_t i = 0; i < step.print_args.size(); ++i) {
            TermPtr arg = frame.subst.apply(step.print_args[i]);
            if (i) text += ' ';
            text += arg->is_string() ? arg->text() : to_string(arg);
        }
        payload["op"] = ".print";
        payload["text"] = text;
        break;
    }
    case BodyStep::Op::action: {
        TermPtr action = frame.subst.apply(step.term);
        state.circ.actions.push_back(PendingAction{ctx.tick, action});
        payload["op"] = "act " + to_string(action);
        break;
    }
    }
    if (!ub_applied.empty()) payload["ub_applied"] = ub_applied;
    trace(ctx, state, RationalStep::exc_int, std::move(payload));
}

void clear_intentions(AgentState& state, CycleContext& ctx) {
    state.t.step = RationalStep::clr_int;
    std::vector<std::string> ub_applied;
    apply_ub(state, ctx, RationalStep::clr_int, &ub_applied);
    nlohmann::json completed = nlohmann::json::array();
    auto& intentions = state.circ.intentions;
    for (Intention& intention : intentions) {
        while (!intention.frames.empty() &&
               intention.frames.back().pc >= intention.frames.back().plan->body.size() &&
               !intention.waiting) {
            intention.frames.pop_back();
        }
    }
    for (auto it = intentions.begin(); it != intentions.end();) {
        if (it->frames.empty() && !it->waiting) {
            completed.push_back(it->id);
            it = intentions.erase(it);
        } else {
            ++it;
        }
    }
    state.rr_cursor = intentions.empty() ? 0 : state.rr_cursor % intentions.size();
    nlohmann::json payload;
    payload["completed"] = completed;
    payload["intentions"] = intentions.size();
    if (!ub_applied.empty()) payload["ub_applied"] = ub_applied;
    trace(ctx, state, RationalStep::clr_int, std::move(payload));
}

void run_reasoning_pass(AgentState& state, CycleContext& ctx) {
    proc_msg(state, ctx);
    aff_mod_b(state, ctx);
    bool has_event = select_event(state, ctx);
    if (has_event) run_affective_pass(state, ctx, *state.t.event);
    relevant_plans(state, ctx);
    applicable_plans(state, ctx);
    select_applicable_plan_step(state, ctx);
    add_intended_means(state, ctx);
    select_intention(state, ctx);
    execute_intention_step(state, ctx);
    clear_intentions(state, ctx);
}

} // namespace easl

#include "easl/check.hpp"

#include <set>

#include "easl/diagnostics.hpp"

namespace easl {

std::vector<Diagnostic> check_config(const SimulationConfig& cfg) {
    std::vector<Diagnostic> out;

    // omega coverage: every configured emotion label should have at least one
    // positive weight, otherwise psi is undefined whenever that label comes up.
    for (const auto& [label, proto] : cfg.model.prototypes.entries()) {
        if (!cfg.model.omega.has_row(label) || cfg.model.omega.row_sum(label) <= 0.0)
            out.push_back({Diagnostic::Severity::warning,
                           "omega matrix has no weights for emotion label '" + label.str() +
                               "'"});
    }

    // Achievement goals that nothing produces: initial goals, plan bodies,
    // achieve messages and coping strategies are the only goal sources.
    std::set<Atom> produced;
    for (const auto& [id, program] : cfg.programs) {
        for (const TermPtr& goal : program->init_goals) produced.insert(goal->functor());
        for (const PlanDef& plan : program->plans) {
            for (const BodyStep& step : plan.body) {
                if (step.op == BodyStep::Op::achieve) produced.insert(step.term->functor());
                if (step.op == BodyStep::Op::send && step.send_ilf == Atom::intern("achieve"))
                    produced.insert(step.term->functor());
            }
        }
        for (Atom label : program->personality.coping)
            if (const PlanDef* plan = program->plan_by_label(label))
                if (plan->trigger.type == EventType::achievement)
                    produced.insert(plan->trigger.term->functor());
    }
    for (const auto& [id, program] : cfg.programs) {
        for (const PlanDef& plan : program->plans) {
            if (plan.trigger.type != EventType::achievement || plan.trigger.op != EventOp::add)
                continue;
            if (!produced.count(plan.trigger.term->functor()))
                out.push_back({Diagnostic::Severity::warning,
                               "agent '" + id.str() + "': plan for " + plan.trigger.to_string() +
                                   " is unreachable (no goal source declares '" +
                                   plan.trigger.term->functor().str() + "')"});
        }
    }

    // Affective links already validated to [-1,1] by the parser; report the
    // values for visibility when extreme.
    for (const auto& [id, program] : cfg.programs) {
        for (const OtherAgentDef& other : program->others) {
            auto al = other.affective_link();
            if (al && (*al == 1.0 || *al == -1.0))
                out.push_back({Diagnostic::Severity::warning,
                               "agent '" + id.str() + "': affective link with '" +
                                   other.id.str() + "' starts saturated at " +
                                   std::to_string(*al)});
        }
    }

    return out;
}

std::vector<Diagnostic> check_project(const std::string& mas_path,
                                      const std::string& scenario_path) {
    std::vector<Diagnostic> out;
    try {
        SimulationConfig cfg = load_simulation(mas_path, scenario_path);
        auto more = check_config(cfg);
        out.insert(out.end(), more.begin(), more.end());
    } catch (const error& e) {
        out.push_back({Diagnostic::Severity::error, e.what()});
    }
    return out;
}

} // namespace easl

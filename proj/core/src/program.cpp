#include "easl/program.hpp"

#include <charconv>
#include <sstream>

namespace easl {

namespace {

void print_number(std::ostream& os, double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    os << std::string_view(buf, end - buf);
}

const char* rel_op_text(RelOp op) {
    switch (op) {
    case RelOp::lt: return "<";
    case RelOp::le: return "<=";
    case RelOp::gt: return ">";
    case RelOp::ge: return ">=";
    case RelOp::eq: return "==";
    case RelOp::ne: return "\\==";
    }
    return "==";
}

void print_context(std::ostream& os, const ContextExpr& ctx) {
    if (ctx.trivially_true()) {
        os << "true";
        return;
    }
    for (size_t i = 0; i < ctx.conjuncts.size(); ++i) {
        if (i) os << " & ";
        const ContextLiteral& lit = ctx.conjuncts[i];
        if (lit.negated) os << "not ";
        if (lit.comparison) {
            lit.comparison->lhs->print(os);
            os << ' ' << rel_op_text(lit.comparison->op) << ' ';
            lit.comparison->rhs->print(os);
        } else {
            os << lit.pattern;
        }
    }
}

void print_body_step(std::ostream& os, const BodyStep& step) {
    switch (step.op) {
    case BodyStep::Op::add_belief: os << '+' << step.term; return;
    case BodyStep::Op::del_belief: os << '-' << step.term; return;
    case BodyStep::Op::achieve: os << '!' << step.term; return;
    case BodyStep::Op::test: os << '?' << step.term; return;
    case BodyStep::Op::send:
        os << ".send(" << step.send_recipient << ", " << step.send_ilf.str() << ", "
           << step.term << ')';
        return;
    case BodyStep::Op::print:
        os << ".print(";
        for (size_t i = 0; i < step.print_args.size(); ++i) {
            if (i) os << ", ";
            os << step.print_args[i];
        }
        os << ')';
        return;
    case BodyStep::Op::action: os << step.term; return;
    }
}

} // namespace

std::optional<double> OtherAgentDef::affective_link() const {
    static const Atom key = Atom::intern("affective_link");
    for (const auto& [label, value] : attributes)
        if (label == key && value->is_number()) return value->number();
    return std::nullopt;
}

const PlanDef* AgentProgram::plan_by_label(Atom label) const {
    for (const PlanDef& p : plans)
        if (p.label == label) return &p;
    return nullptr;
}

std::string to_source(const TriggeringEvent& trigger) {
    return trigger.to_string();
}

std::string to_source(const PlanDef& plan) {
    std::ostringstream os;
    if (plan.label.valid()) {
        os << '@' << plan.label.str();
        if (!plan.label_annots.empty()) {
            os << '[';
            for (size_t i = 0; i < plan.label_annots.size(); ++i) {
                if (i) os << ',';
                os << plan.label_annots[i];
            }
            os << ']';
        }
        os << ' ';
    }
    os << plan.trigger.to_string() << " : ";
    print_context(os, plan.context);
    os << " <- ";
    if (plan.body.empty()) {
        os << "true";
    } else {
        for (size_t i = 0; i < plan.body.size(); ++i) {
            if (i) os << "; ";
            print_body_step(os, plan.body[i]);
        }
    }
    os << '.';
    return os.str();
}

std::string to_source(const AgentProgram& program) {
    std::ostringstream os;
    for (const auto& b : program.init_beliefs) os << b << ".\n";
    for (const auto& c : program.concerns) {
        os << "concern__: " << c.pattern << " : ";
        c.expression->print(os);
        os << ".\n";
    }
    const PersonalityDef& p = program.personality;
    if (!p.traits.empty() || p.rationality || !p.coping.empty()) {
        os << "personality__: { [ ";
        size_t i = 0;
        for (const auto& [trait, value] : p.traits) {
            if (i++) os << ", ";
            os << trait.str() << ": ";
            print_number(os, value);
        }
        os << " ]";
        if (p.rationality) {
            os << ", ";
            print_number(os, *p.rationality);
        }
        if (!p.coping.empty()) {
            os << ", [ ";
            for (size_t j = 0; j < p.coping.size(); ++j) {
                if (j) os << ", ";
                os << p.coping[j].str();
            }
            os << " ]";
        }
        os << " }.\n";
    }
    if (!program.others.empty()) {
        os << "others__: [ ";
        for (size_t j = 0; j < program.others.size(); ++j) {
            if (j) os << ", ";
            const OtherAgentDef& o = program.others[j];
            os << o.id.str() << ": [ ";
            for (size_t k = 0; k < o.attributes.size(); ++k) {
                if (k) os << ", ";
                os << o.attributes[k].first.str() << ": " << o.attributes[k].second;
            }
            os << " ]";
        }
        os << " ].\n";
    }
    for (const auto& g : program.init_goals) os << '!' << g << ".\n";
    for (const auto& plan : program.plans) os << to_source(plan) << '\n';
    return os.str();
}

std::string to_source(const MasProject& project) {
    std::ostringstream os;
    os << "MAS " << project.name.str() << " {\n";
    for (const auto& [name, raw] : project.ignored_blocks)
        os << "    " << name << ": " << raw << "\n";
    if (!project.agents.empty()) {
        os << "    agents:\n";
        for (const auto& a : project.agents) {
            os << "        " << a.id.str() << " \"" << a.file << '"';
            bool has_opts = a.mood || a.equilibrium || a.decay;
            if (has_opts) {
                os << " [ ";
                bool first = true;
                auto emit_vec = [&](const char* key, const AffectVector& v) {
                    if (!first) os << ", ";
                    first = false;
                    os << key << ": (";
                    for (size_t i = 0; i < v.size(); ++i) {
                        if (i) os << ", ";
                        print_number(os, v[i]);
                    }
                    os << ')';
                };
                if (a.mood) emit_vec("mood", *a.mood);
                if (a.equilibrium) emit_vec("equilibrium", *a.equilibrium);
                if (a.decay) {
                    if (!first) os << ", ";
                    first = false;
                    os << "decay: ";
                    print_number(os, *a.decay);
                }
                os << " ]";
            }
            os << ";\n";
        }
    }
    if (project.has_w_matrix) {
        os << "    w_matrix__: [ ";
        bool first_row = true;
        for (Atom trait : project.w_matrix.trait_labels()) {
            if (!first_row) os << ", ";
            first_row = false;
            os << trait.str() << ": [ ";
            bool first = true;
            for (Atom em : project.w_matrix.emotion_labels()) {
                if (!first) os << ", ";
                first = false;
                os << em.str() << ": ";
                print_number(os, project.w_matrix.get(em, trait));
            }
            os << " ]";
        }
        os << " ]\n";
    }
    if (project.prototypes_file) os << "    prototypes__: \"" << *project.prototypes_file << "\"\n";
    if (project.emotion_table_file)
        os << "    emotion_table__: \"" << *project.emotion_table_file << "\"\n";
    if (project.al_weight) {
        os << "    al_weight__: ";
        print_number(os, *project.al_weight);
        os << '\n';
    }
    if (project.perspective == EmpathyPerspective::target_concerns)
        os << "    empathy_perspective__: target\n";
    os << "}\n";
    return os.str();
}

} // namespace easl

#ifndef EASL_PROGRAM_HPP
#define EASL_PROGRAM_HPP

#include <optional>
#include <string>
#include <vector>

#include "easl/affect.hpp"
#include "easl/expr.hpp"
#include "easl/steps.hpp"
#include "easl/term.hpp"

namespace easl {

// ---------------------------------------------------------------------------
// Plans

enum class RelOp { lt, le, gt, ge, eq, ne };

struct Comparison {
    ArithExpr::Ptr lhs;
    ArithExpr::Ptr rhs;
    RelOp op = RelOp::eq;
};

// One conjunct of a plan context: a belief pattern (optionally negated as
// failure) or an arithmetic comparison.
struct ContextLiteral {
    bool negated = false;
    TermPtr pattern;
    std::optional<Comparison> comparison;
};

// Conjunction of literals; empty means `true`.
struct ContextExpr {
    std::vector<ContextLiteral> conjuncts;
    bool trivially_true() const { return conjuncts.empty(); }
};

struct BodyStep {
    enum class Op { add_belief, del_belief, achieve, test, send, print, action };
    Op op = Op::action;
    TermPtr term;                    // belief / goal / action / send content
    TermPtr send_recipient;          // send only
    Atom send_ilf;                   // send only
    std::vector<TermPtr> print_args; // print only
};

// Guard granting membership in the affective applicable-plan set A: current
// mood label with a minimum intensity, and/or minimum trait levels.
struct AffectiveConditions {
    std::optional<Atom> mood_label;
    double min_intensity = 0.0;
    std::vector<std::pair<Atom, double>> trait_min;

    bool empty() const { return !mood_label.has_value() && trait_min.empty(); }
};

// Belief update scheduled by a coping strategy, applied when the rational
// cycle reaches the given step.
struct UbEffect {
    bool add = true;
    TermPtr term;
    RationalStep at = RationalStep::proc_msg;
};

struct PlanDef {
    Atom label;                 // invalid when the plan is unlabeled
    TermList label_annots;      // verbatim annotations from @label[...]
    TriggeringEvent trigger;
    ContextExpr context;
    std::vector<BodyStep> body; // empty means the explicit `true` body
    double priority = 1.0;
    AffectiveConditions affective;
    std::vector<UbEffect> ub_effects;
    size_t index = 0;           // declaration order
};

// ---------------------------------------------------------------------------
// Agent program

// Concern: a pattern whose functor is the concern label plus an arithmetic
// expression over the pattern's variables yielding a value in [-1, 1].
struct ConcernDef {
    Atom label;
    TermPtr pattern;
    ArithExpr::Ptr expression;
};

struct PersonalityDef {
    Traits traits;
    std::optional<double> rationality; // rl, defaults to 0.5 at runtime
    std::vector<Atom> coping;          // plan labels
};

struct OtherAgentDef {
    Atom id;
    std::vector<std::pair<Atom, TermPtr>> attributes; // number or atom values

    std::optional<double> affective_link() const;
};

struct AgentProgram {
    std::vector<TermPtr> init_beliefs;
    std::vector<ConcernDef> concerns;
    PersonalityDef personality;
    std::vector<OtherAgentDef> others;
    std::vector<TermPtr> init_goals;
    std::vector<PlanDef> plans;

    const PlanDef* plan_by_label(Atom label) const;
};

// ---------------------------------------------------------------------------
// MAS project

struct MasAgentEntry {
    Atom id;
    std::string file; // path relative to the project file
    std::optional<AffectVector> mood;
    std::optional<AffectVector> equilibrium;
    std::optional<double> decay;
};

enum class EmpathyPerspective { self_projection, target_concerns };

struct MasProject {
    Atom name;
    std::vector<MasAgentEntry> agents;
    CorrelationMatrix w_matrix;
    bool has_w_matrix = false;

    // infrastructure / environment / execcontrol blocks, recorded verbatim.
    std::vector<std::pair<std::string, std::string>> ignored_blocks;

    std::optional<std::string> prototypes_file;
    std::optional<std::string> emotion_table_file;
    std::optional<double> al_weight;
    EmpathyPerspective perspective = EmpathyPerspective::self_projection;
};

// ---------------------------------------------------------------------------
// Scenario

struct ScenarioInjection {
    long tick = 0;
    bool broadcast = false;
    Atom recipient; // valid when not broadcast
    TermPtr percept;
};

struct Scenario {
    std::vector<ScenarioInjection> injections;
    std::optional<long> ticks; // run length from the `ticks N.` directive
};

// ---------------------------------------------------------------------------
// Pretty printing (canonical concrete syntax; reparses to an equal program)

std::string to_source(const AgentProgram& program);
std::string to_source(const MasProject& project);
std::string to_source(const PlanDef& plan);
std::string to_source(const TriggeringEvent& trigger);

} // namespace easl

#endif

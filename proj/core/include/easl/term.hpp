#ifndef EASL_TERM_HPP
#define EASL_TERM_HPP

#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "easl/atom.hpp"

namespace easl {

class Term;
using TermPtr = std::shared_ptr<const Term>;
using TermList = std::vector<TermPtr>;

// Immutable logic term: compound (functor + args + annotations), variable,
// number, or string. Annotations are themselves compound terms without
// nested annotations; they are metadata and never take part in unification.
class Term {
public:
    enum class Kind { compound, variable, number, string };

    Kind kind() const { return kind_; }
    bool is_compound() const { return kind_ == Kind::compound; }
    bool is_variable() const { return kind_ == Kind::variable; }
    bool is_number() const { return kind_ == Kind::number; }
    bool is_string() const { return kind_ == Kind::string; }
    bool is_atom() const { return kind_ == Kind::compound && args_.empty(); }

    Atom functor() const { return functor_; }
    const TermList& args() const { return args_; }
    const TermList& annots() const { return annots_; }
    const std::string& var_name() const { return text_; }
    double number() const { return number_; }
    const std::string& text() const { return text_; }

    static TermPtr make_atom(Atom functor);
    static TermPtr make_atom(std::string_view functor);
    static TermPtr make_compound(Atom functor, TermList args, TermList annots = {});
    static TermPtr make_variable(std::string name);
    static TermPtr make_number(double value);
    static TermPtr make_string(std::string value);

    // Copy of this term with the annotation list replaced.
    TermPtr with_annots(TermList annots) const;

private:
    Kind kind_ = Kind::compound;
    Atom functor_;
    TermList args_;
    TermList annots_;
    std::string text_;
    double number_ = 0.0;
};

// Structural equality. Annotations are ignored unless with_annots is set, in
// which case they are compared as ordered lists.
bool equals(const TermPtr& a, const TermPtr& b, bool with_annots = false);

bool is_ground(const TermPtr& t);

std::string to_string(const TermPtr& t);
std::ostream& operator<<(std::ostream& os, const TermPtr& t);

// Finds the first annotation with the given functor, or null.
TermPtr find_annot(const TermPtr& t, Atom functor);

// Variable bindings produced by unification. Kept idempotent: bound terms
// never contain variables that are themselves bound.
class Substitution {
public:
    bool empty() const { return bindings_.empty(); }
    size_t size() const { return bindings_.size(); }

    const TermPtr* lookup(const std::string& var) const;
    void bind(const std::string& var, TermPtr value);

    // Substitutes bound variables recursively, annotations included.
    TermPtr apply(const TermPtr& t) const;

    // Rewrites every binding to its fully substituted form.
    void resolve();

    const std::map<std::string, TermPtr>& bindings() const { return bindings_; }

private:
    std::map<std::string, TermPtr> bindings_;
};

// Most general unifier of a and b, ignoring annotations on every level.
// Extends `into` in place; returns false (leaving partial bindings) on failure.
bool unify_into(const TermPtr& a, const TermPtr& b, Substitution& into);
std::optional<Substitution> unify(const TermPtr& a, const TermPtr& b);

// -------------------------------------------------------------------------
// Triggering events

enum class EventOp { add, del };
enum class EventType { belief, achievement, test };

struct TriggeringEvent {
    EventOp op = EventOp::add;
    EventType type = EventType::belief;
    TermPtr term;

    std::string to_string() const;
};

// Subject of an event: another agent, the agent itself, or unknown.
struct SubjectRef {
    enum class Kind { agent, self, none };
    Kind kind = Kind::none;
    Atom id;

    static SubjectRef agent(Atom a) { return {Kind::agent, a}; }
    static SubjectRef self() { return {Kind::self, Atom()}; }
    static SubjectRef none() { return {Kind::none, Atom()}; }
    friend bool operator==(const SubjectRef&, const SubjectRef&) = default;
};

// The three branches: the subject annotation's term, `self` when it names the
// agent itself, `none` when the annotation is missing.
SubjectRef get_subject(const TriggeringEvent& te, Atom self_id);

// Target annotation's term, or absent.
std::optional<Atom> get_target(const TriggeringEvent& te);

// Interaction value annotation, 0 when missing. Throws validation_error when
// the annotated value is malformed or outside [-1, 1].
double get_iv(const TriggeringEvent& te);

// True iff an `affective_relevant` annotation is present.
bool aff_rel_ev(const TriggeringEvent& te);

// prob__ annotation value, or absent. Throws validation_error outside [0, 1].
std::optional<double> get_prob(const TriggeringEvent& te);

namespace reserved {
Atom subject();
Atom target();
Atom interaction_value();
Atom affective_relevant();
Atom source();
Atom prob();
} // namespace reserved

} // namespace easl

#endif

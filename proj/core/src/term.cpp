#include "easl/term.hpp"

#include <charconv>
#include <sstream>

#include "easl/diagnostics.hpp"

namespace easl {

TermPtr Term::make_atom(Atom functor) {
    return make_compound(functor, {}, {});
}

TermPtr Term::make_atom(std::string_view functor) {
    return make_atom(Atom::intern(functor));
}

TermPtr Term::make_compound(Atom functor, TermList args, TermList annots) {
    auto t = std::make_shared<Term>();
    t->kind_ = Kind::compound;
    t->functor_ = functor;
    t->args_ = std::move(args);
    t->annots_ = std::move(annots);
    return t;
}

TermPtr Term::make_variable(std::string name) {
    auto t = std::make_shared<Term>();
    t->kind_ = Kind::variable;
    t->text_ = std::move(name);
    return t;
}

TermPtr Term::make_number(double value) {
    auto t = std::make_shared<Term>();
    t->kind_ = Kind::number;
    t->number_ = value;
    return t;
}

TermPtr Term::make_string(std::string value) {
    auto t = std::make_shared<Term>();
    t->kind_ = Kind::string;
    t->text_ = std::move(value);
    return t;
}

TermPtr Term::with_annots(TermList annots) const {
    auto t = std::make_shared<Term>(*this);
    t->annots_ = std::move(annots);
    return t;
}

bool equals(const TermPtr& a, const TermPtr& b, bool with_annots) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    if (a->kind() != b->kind()) return false;
    switch (a->kind()) {
    case Term::Kind::variable:
        return a->var_name() == b->var_name();
    case Term::Kind::number:
        return a->number() == b->number();
    case Term::Kind::string:
        return a->text() == b->text();
    case Term::Kind::compound: {
        if (a->functor() != b->functor()) return false;
        if (a->args().size() != b->args().size()) return false;
        for (size_t i = 0; i < a->args().size(); ++i)
            if (!equals(a->args()[i], b->args()[i], with_annots)) return false;
        if (with_annots) {
            if (a->annots().size() != b->annots().size()) return false;
            for (size_t i = 0; i < a->annots().size(); ++i)
                if (!equals(a->annots()[i], b->annots()[i], true)) return false;
        }
        return true;
    }
    }
    return false;
}

bool is_ground(const TermPtr& t) {
    if (!t) return true;
    switch (t->kind()) {
    case Term::Kind::variable:
        return false;
    case Term::Kind::number:
    case Term::Kind::string:
        return true;
    case Term::Kind::compound:
        for (const auto& a : t->args())
            if (!is_ground(a)) return false;
        for (const auto& a : t->annots())
            if (!is_ground(a)) return false;
        return true;
    }
    return true;
}

namespace {

void format_number(std::ostream& os, double v) {
    // Shortest representation that round-trips through the parser.
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    os << std::string_view(buf, end - buf);
}

void print_term(std::ostream& os, const TermPtr& t) {
    if (!t) {
        os << "<null>";
        return;
    }
    switch (t->kind()) {
    case Term::Kind::variable:
        os << t->var_name();
        return;
    case Term::Kind::number:
        format_number(os, t->number());
        return;
    case Term::Kind::string:
        os << '"' << t->text() << '"';
        return;
    case Term::Kind::compound:
        os << t->functor().str();
        if (!t->args().empty()) {
            os << '(';
            for (size_t i = 0; i < t->args().size(); ++i) {
                if (i) os << ',';
                print_term(os, t->args()[i]);
            }
            os << ')';
        }
        if (!t->annots().empty()) {
            os << '[';
            for (size_t i = 0; i < t->annots().size(); ++i) {
                if (i) os << ',';
                print_term(os, t->annots()[i]);
            }
            os << ']';
        }
        return;
    }
}

} // namespace

std::string to_string(const TermPtr& t) {
    std::ostringstream os;
    print_term(os, t);
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const TermPtr& t) {
    print_term(os, t);
    return os;
}

TermPtr find_annot(const TermPtr& t, Atom functor) {
    if (!t || !t->is_compound()) return nullptr;
    for (const auto& a : t->annots())
        if (a->is_compound() && a->functor() == functor) return a;
    return nullptr;
}

const TermPtr* Substitution::lookup(const std::string& var) const {
    auto it = bindings_.find(var);
    return it == bindings_.end() ? nullptr : &it->second;
}

void Substitution::bind(const std::string& var, TermPtr value) {
    bindings_[var] = std::move(value);
}

TermPtr Substitution::apply(const TermPtr& t) const {
    if (!t) return t;
    switch (t->kind()) {
    case Term::Kind::variable: {
        if (const TermPtr* bound = lookup(t->var_name())) return apply(*bound);
        return t;
    }
    case Term::Kind::number:
    case Term::Kind::string:
        return t;
    case Term::Kind::compound: {
        bool changed = false;
        TermList args;
        args.reserve(t->args().size());
        for (const auto& a : t->args()) {
            args.push_back(apply(a));
            changed |= args.back().get() != a.get();
        }
        TermList annots;
        annots.reserve(t->annots().size());
        for (const auto& a : t->annots()) {
            annots.push_back(apply(a));
            changed |= annots.back().get() != a.get();
        }
        if (!changed) return t;
        return Term::make_compound(t->functor(), std::move(args), std::move(annots));
    }
    }
    return t;
}

void Substitution::resolve() {
    for (auto& [var, value] : bindings_) value = apply(value);
}

namespace {

TermPtr walk(const TermPtr& t, const Substitution& s) {
    TermPtr cur = t;
    while (cur && cur->is_variable()) {
        const TermPtr* bound = s.lookup(cur->var_name());
        if (!bound) break;
        cur = *bound;
    }
    return cur;
}

bool occurs(const std::string& var, const TermPtr& t, const Substitution& s) {
    TermPtr w = walk(t, s);
    if (w->is_variable()) return w->var_name() == var;
    if (w->is_compound()) {
        for (const auto& a : w->args())
            if (occurs(var, a, s)) return true;
    }
    return false;
}

} // namespace

bool unify_into(const TermPtr& a, const TermPtr& b, Substitution& into) {
    TermPtr x = walk(a, into);
    TermPtr y = walk(b, into);
    if (x->is_variable()) {
        if (y->is_variable() && y->var_name() == x->var_name()) return true;
        if (occurs(x->var_name(), y, into)) return false;
        into.bind(x->var_name(), y);
        return true;
    }
    if (y->is_variable()) {
        if (occurs(y->var_name(), x, into)) return false;
        into.bind(y->var_name(), x);
        return true;
    }
    if (x->kind() != y->kind()) return false;
    switch (x->kind()) {
    case Term::Kind::number:
        return x->number() == y->number();
    case Term::Kind::string:
        return x->text() == y->text();
    case Term::Kind::compound: {
        if (x->functor() != y->functor() || x->args().size() != y->args().size())
            return false;
        for (size_t i = 0; i < x->args().size(); ++i)
            if (!unify_into(x->args()[i], y->args()[i], into)) return false;
        return true;
    }
    case Term::Kind::variable:
        break;
    }
    return false;
}

std::optional<Substitution> unify(const TermPtr& a, const TermPtr& b) {
    Substitution s;
    if (!unify_into(a, b, s)) return std::nullopt;
    s.resolve();
    return s;
}

std::string TriggeringEvent::to_string() const {
    std::string out(op == EventOp::add ? "+" : "-");
    if (type == EventType::achievement) out += '!';
    if (type == EventType::test) out += '?';
    out += easl::to_string(term);
    return out;
}

namespace reserved {
Atom subject() { return Atom::intern("subject"); }
Atom target() { return Atom::intern("target"); }
Atom interaction_value() { return Atom::intern("interaction_value"); }
Atom affective_relevant() { return Atom::intern("affective_relevant"); }
Atom source() { return Atom::intern("source"); }
Atom prob() { return Atom::intern("prob__"); }
} // namespace reserved

SubjectRef get_subject(const TriggeringEvent& te, Atom self_id) {
    TermPtr a = find_annot(te.term, reserved::subject());
    if (!a || a->args().size() != 1 || !a->args()[0]->is_atom())
        return SubjectRef::none();
    Atom who = a->args()[0]->functor();
    if (who == self_id) return SubjectRef::self();
    return SubjectRef::agent(who);
}

std::optional<Atom> get_target(const TriggeringEvent& te) {
    TermPtr a = find_annot(te.term, reserved::target());
    if (!a || a->args().size() != 1 || !a->args()[0]->is_atom())
        return std::nullopt;
    return a->args()[0]->functor();
}

namespace {

double annot_value(const TermPtr& a, double lo, double hi, const char* what) {
    if (a->args().size() != 1 || !a->args()[0]->is_number())
        throw validation_error(std::string(what) + " annotation must carry one numeric term");
    double v = a->args()[0]->number();
    if (!(v >= lo && v <= hi))
        throw validation_error(std::string(what) + " value " + std::to_string(v) +
                               " outside [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
    return v;
}

} // namespace

double get_iv(const TriggeringEvent& te) {
    TermPtr a = find_annot(te.term, reserved::interaction_value());
    if (!a) return 0.0;
    return annot_value(a, -1.0, 1.0, "interaction_value");
}

bool aff_rel_ev(const TriggeringEvent& te) {
    return find_annot(te.term, reserved::affective_relevant()) != nullptr;
}

std::optional<double> get_prob(const TriggeringEvent& te) {
    TermPtr a = find_annot(te.term, reserved::prob());
    if (!a) return std::nullopt;
    return annot_value(a, 0.0, 1.0, "prob__");
}

} // namespace easl

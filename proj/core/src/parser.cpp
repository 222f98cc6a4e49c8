#include "easl/parser.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <vector>

#include "easl/diagnostics.hpp"

namespace easl {

namespace {

// ---------------------------------------------------------------------------
// Lexer

struct Token {
    enum class Kind { atom, var, number, str, internal, punct, end };
    Kind kind = Kind::end;
    std::string text; // identifier text, string payload, or punct spelling
    double num = 0.0;
    int line = 1;
    int col = 1;
    size_t offset = 0;
};

bool is_ident_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

class Lexer {
public:
    Lexer(std::string_view src, std::string filename)
        : src_(src), filename_(std::move(filename)) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_trivia();
            Token t = next();
            bool end = t.kind == Token::Kind::end;
            out.push_back(std::move(t));
            if (end) break;
        }
        return out;
    }

private:
    [[noreturn]] void fail(const std::string& message) {
        throw parse_error(filename_, line_, col_, message);
    }

    char peek(size_t k = 0) const {
        return pos_ + k < src_.size() ? src_[pos_ + k] : '\0';
    }

    char advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_trivia() {
        for (;;) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (pos_ < src_.size() && peek() != '\n') advance();
            } else {
                return;
            }
        }
    }

    Token make(Token::Kind kind, std::string text, int line, int col, size_t offset) {
        Token t;
        t.kind = kind;
        t.text = std::move(text);
        t.line = line;
        t.col = col;
        t.offset = offset;
        return t;
    }

    Token next() {
        int line = line_;
        int col = col_;
        size_t offset = pos_;
        if (pos_ >= src_.size()) return make(Token::Kind::end, "", line, col, offset);
        char c = peek();

        if ((c >= '0' && c <= '9')) return lex_number(line, col, offset);

        if ((c >= 'a' && c <= 'z')) {
            std::string text;
            while (is_ident_char(peek())) text += advance();
            return make(Token::Kind::atom, std::move(text), line, col, offset);
        }
        if ((c >= 'A' && c <= 'Z') || c == '_') {
            std::string text;
            while (is_ident_char(peek())) text += advance();
            return make(Token::Kind::var, std::move(text), line, col, offset);
        }
        if (c == '"') return lex_string(line, col, offset);

        if (c == '.') {
            char n = peek(1);
            if (n >= 'a' && n <= 'z') {
                advance();
                std::string text = ".";
                while (is_ident_char(peek())) text += advance();
                return make(Token::Kind::internal, std::move(text), line, col, offset);
            }
            advance();
            return make(Token::Kind::punct, ".", line, col, offset);
        }

        // multi-char operators
        if (c == '<' && peek(1) == '-') {
            advance();
            advance();
            return make(Token::Kind::punct, "<-", line, col, offset);
        }
        if (c == '<' && peek(1) == '=') {
            advance();
            advance();
            return make(Token::Kind::punct, "<=", line, col, offset);
        }
        if (c == '>' && peek(1) == '=') {
            advance();
            advance();
            return make(Token::Kind::punct, ">=", line, col, offset);
        }
        if (c == '=' && peek(1) == '=') {
            advance();
            advance();
            return make(Token::Kind::punct, "==", line, col, offset);
        }
        if (c == '\\' && peek(1) == '=' && peek(2) == '=') {
            advance();
            advance();
            advance();
            return make(Token::Kind::punct, "\\==", line, col, offset);
        }

        static const std::string singles = "()[]{},:;+-!?@*/<>&";
        if (singles.find(c) != std::string::npos) {
            advance();
            return make(Token::Kind::punct, std::string(1, c), line, col, offset);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    Token lex_number(int line, int col, size_t offset) {
        size_t start = pos_;
        while (peek() >= '0' && peek() <= '9') advance();
        if (peek() == '.' && peek(1) >= '0' && peek(1) <= '9') {
            advance();
            while (peek() >= '0' && peek() <= '9') advance();
        }
        if (peek() == 'e' || peek() == 'E') {
            size_t mark = pos_;
            advance();
            if (peek() == '+' || peek() == '-') advance();
            if (peek() >= '0' && peek() <= '9') {
                while (peek() >= '0' && peek() <= '9') advance();
            } else {
                pos_ = mark; // lone 'e' belongs to the next token
            }
        }
        std::string_view text = src_.substr(start, pos_ - start);
        double value = 0.0;
        auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || p != text.data() + text.size()) fail("malformed number");
        Token t = make(Token::Kind::number, std::string(text), line, col, offset);
        t.num = value;
        return t;
    }

    Token lex_string(int line, int col, size_t offset) {
        advance(); // opening quote
        std::string text;
        for (;;) {
            if (pos_ >= src_.size()) fail("unterminated string");
            char c = advance();
            if (c == '"') break;
            if (c == '\\') {
                if (pos_ >= src_.size()) fail("unterminated string escape");
                char e = advance();
                switch (e) {
                case 'n': text += '\n'; break;
                case 't': text += '\t'; break;
                case '"': text += '"'; break;
                case '\\': text += '\\'; break;
                default: fail("unknown string escape");
                }
            } else {
                text += c;
            }
        }
        return make(Token::Kind::str, std::move(text), line, col, offset);
    }

    std::string_view src_;
    std::string filename_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

// ---------------------------------------------------------------------------
// Parser

enum class VarPolicy { keep, to_atom };

class Parser {
public:
    Parser(std::string_view source, std::string filename, ParseOptions options)
        : source_(source), filename_(std::move(filename)), options_(std::move(options)) {
        tokens_ = Lexer(source, filename_).run();
    }

    AgentProgram parse_agent_file();
    MasProject parse_mas_file();
    Scenario parse_scenario_file();
    TermPtr parse_scenario_term() {
        TermPtr t = parse_term(VarPolicy::to_atom);
        expect_end_or_period();
        return t;
    }

private:
    const Token& peek(size_t k = 0) const {
        size_t i = std::min(pos_ + k, tokens_.size() - 1);
        return tokens_[i];
    }

    const Token& advance() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }

    bool at_end() const { return peek().kind == Token::Kind::end; }

    bool at_punct(std::string_view p, size_t k = 0) const {
        return peek(k).kind == Token::Kind::punct && peek(k).text == p;
    }

    bool at_atom(std::string_view text, size_t k = 0) const {
        return peek(k).kind == Token::Kind::atom && peek(k).text == text;
    }

    [[noreturn]] void fail_at(const Token& t, const std::string& message) {
        throw parse_error(filename_, t.line, t.col, message);
    }

    [[noreturn]] void fail(const std::string& message) { fail_at(peek(), message); }

    void expect_punct(std::string_view p) {
        if (!at_punct(p)) fail("expected '" + std::string(p) + "'");
        advance();
    }

    void expect_period() {
        if (!at_punct(".")) fail("expected '.'");
        advance();
    }

    void expect_end_or_period() {
        if (at_punct(".")) advance();
        if (!at_end()) fail("trailing input after term");
    }

    // Accepts ATOM, or VAR normalized to a lowercase atom (agent ids and
    // labels written with the paper's capitalized spelling).
    Atom expect_name(const char* what) {
        const Token& t = peek();
        if (t.kind == Token::Kind::atom) {
            advance();
            return Atom::intern(t.text);
        }
        if (t.kind == Token::Kind::var) {
            advance();
            return Atom::intern(lowercase(t.text));
        }
        fail(std::string("expected ") + what);
    }

    static std::string lowercase(std::string s) {
        if (!s.empty() && s[0] >= 'A' && s[0] <= 'Z') s[0] = char(s[0] - 'A' + 'a');
        return s;
    }

    double expect_number(const char* what) {
        bool neg = false;
        if (at_punct("-")) {
            advance();
            neg = true;
        }
        if (peek().kind != Token::Kind::number) fail(std::string("expected ") + what);
        double v = advance().num;
        return neg ? -v : v;
    }

    double expect_number_in(double lo, double hi, const char* what) {
        const Token& t = peek();
        double v = expect_number(what);
        if (v < lo || v > hi)
            fail_at(t, std::string(what) + " must lie in [" + std::to_string(lo) + "," +
                           std::to_string(hi) + "]");
        return v;
    }

    // ---- terms ----

    TermPtr parse_term(VarPolicy policy) {
        const Token& t = peek();
        switch (t.kind) {
        case Token::Kind::number:
            advance();
            return Term::make_number(t.num);
        case Token::Kind::str:
            advance();
            return Term::make_string(t.text);
        case Token::Kind::var:
            advance();
            if (policy == VarPolicy::to_atom) return Term::make_atom(lowercase(t.text));
            return Term::make_variable(t.text);
        case Token::Kind::atom:
            return parse_compound(policy);
        case Token::Kind::punct:
            if (t.text == "-") {
                advance();
                if (peek().kind != Token::Kind::number) fail("expected number after '-'");
                return Term::make_number(-advance().num);
            }
            break;
        default:
            break;
        }
        fail("expected term");
    }

    TermPtr parse_compound(VarPolicy policy) {
        const Token& name = peek();
        if (name.kind != Token::Kind::atom) fail("expected atom");
        advance();
        Atom functor = Atom::intern(name.text);
        TermList args;
        if (at_punct("(")) {
            advance();
            for (;;) {
                args.push_back(parse_term(policy));
                if (at_punct(",")) {
                    advance();
                    continue;
                }
                break;
            }
            expect_punct(")");
        }
        TermList annots;
        if (at_punct("[")) {
            const Token& open = peek();
            advance();
            for (;;) {
                annots.push_back(parse_annotation(policy));
                if (at_punct(",")) {
                    advance();
                    continue;
                }
                break;
            }
            expect_punct("]");
            validate_annotations(annots, open);
        }
        return Term::make_compound(functor, std::move(args), std::move(annots));
    }

    TermPtr parse_annotation(VarPolicy policy) {
        const Token& t = peek();
        if (t.kind == Token::Kind::var && policy == VarPolicy::to_atom) {
            advance();
            Atom f = Atom::intern(lowercase(t.text));
            return Term::make_atom(f);
        }
        if (t.kind != Token::Kind::atom) fail("annotation must be an atom or compound term");
        TermPtr a = parse_compound_no_annots(policy);
        return a;
    }

    TermPtr parse_compound_no_annots(VarPolicy policy) {
        const Token& name = peek();
        advance();
        Atom functor = Atom::intern(name.text);
        TermList args;
        if (at_punct("(")) {
            advance();
            for (;;) {
                args.push_back(parse_term(policy));
                if (at_punct(",")) {
                    advance();
                    continue;
                }
                break;
            }
            expect_punct(")");
        }
        return Term::make_compound(functor, std::move(args));
    }

    void validate_annotations(const TermList& annots, const Token& where) {
        std::map<Atom, int> reserved_count;
        for (const auto& a : annots) {
            if (!a->is_compound()) fail_at(where, "annotation must be an atom or compound term");
            Atom f = a->functor();
            bool is_reserved = f == reserved::subject() || f == reserved::target() ||
                               f == reserved::interaction_value() ||
                               f == reserved::affective_relevant() || f == reserved::source() ||
                               f == reserved::prob();
            if (is_reserved && ++reserved_count[f] > 1)
                fail_at(where, "duplicate '" + f.str() + "' annotation");
            if (f == reserved::subject() || f == reserved::target() || f == reserved::source()) {
                if (a->args().size() != 1)
                    fail_at(where, "'" + f.str() + "' annotation must carry exactly one term");
            } else if (f == reserved::affective_relevant()) {
                if (!a->args().empty())
                    fail_at(where, "'affective_relevant' annotation carries no terms");
            } else if (f == reserved::interaction_value() || f == reserved::prob()) {
                if (a->args().size() != 1)
                    fail_at(where, "'" + f.str() + "' annotation must carry exactly one number");
                const TermPtr& v = a->args()[0];
                if (v->is_number()) {
                    double lo = f == reserved::prob() ? 0.0 : -1.0;
                    if (v->number() < lo || v->number() > 1.0)
                        fail_at(where, "'" + f.str() + "' value outside [" +
                                           (f == reserved::prob() ? std::string("0") : std::string("-1")) +
                                           ",1]");
                } else if (!v->is_variable()) {
                    fail_at(where, "'" + f.str() + "' annotation must carry a number");
                }
            }
        }
    }

    // ---- agent program ----

    static constexpr int kBeliefs = 0, kConcerns = 1, kPersonality = 2, kOthers = 3,
                         kGoals = 4, kPlans = 5;

    void enter_section(int section, const char* name) {
        static const char* names[] = {"initial beliefs", "concerns",      "personality",
                                      "others__",        "initial goals", "plans"};
        if (section < max_section_)
            fail(std::string(name) + " must appear before the " +
                 names[max_section_] + " section");
        if (section > max_section_) max_section_ = section;
    }

    ConcernDef parse_concern() {
        advance(); // concern__
        expect_punct(":");
        TermPtr pattern = parse_compound(VarPolicy::keep);
        if (!pattern->annots().empty()) fail("concern patterns take no annotations");
        expect_punct(":");
        ArithExpr::Ptr expr = parse_arith();
        expect_period();
        return ConcernDef{pattern->functor(), pattern, expr};
    }

    PersonalityDef parse_personality() {
        advance(); // personality__
        expect_punct(":");
        expect_punct("{");
        PersonalityDef p;
        expect_punct("[");
        for (;;) {
            const Token& where = peek();
            Atom trait = expect_name("trait label");
            if (!options_.trait_labels.count(trait.str()))
                fail_at(where, "unknown personality trait '" + trait.str() + "'");
            expect_punct(":");
            double v = expect_number_in(0.0, 1.0, "trait value");
            if (!p.traits.emplace(trait, v).second)
                fail_at(where, "duplicate trait '" + trait.str() + "'");
            if (at_punct(",")) {
                advance();
                continue;
            }
            break;
        }
        expect_punct("]");
        if (at_punct(",")) {
            advance();
            if (peek().kind == Token::Kind::number || at_punct("-")) {
                p.rationality = expect_number_in(0.0, 1.0, "rationality level");
                if (at_punct(",")) advance();
            }
            if (at_punct("[")) {
                advance();
                if (!at_punct("]")) {
                    for (;;) {
                        p.coping.push_back(expect_name("coping strategy label"));
                        if (at_punct(",")) {
                            advance();
                            continue;
                        }
                        break;
                    }
                }
                expect_punct("]");
            }
        }
        expect_punct("}");
        if (at_punct(".")) advance(); // terminator optional after '}'
        return p;
    }

    std::vector<OtherAgentDef> parse_others() {
        advance(); // others__
        expect_punct(":");
        expect_punct("[");
        std::vector<OtherAgentDef> out;
        for (;;) {
            OtherAgentDef def;
            const Token& where = peek();
            def.id = expect_name("agent id");
            for (const auto& existing : out)
                if (existing.id == def.id)
                    fail_at(where, "duplicate other-agent entry '" + def.id.str() + "'");
            expect_punct(":");
            expect_punct("[");
            for (;;) {
                const Token& attr_where = peek();
                Atom label = expect_name("attribute label");
                expect_punct(":");
                TermPtr value;
                if (peek().kind == Token::Kind::number || at_punct("-")) {
                    value = Term::make_number(expect_number("attribute value"));
                } else {
                    value = Term::make_atom(expect_name("attribute value"));
                }
                if (label == Atom::intern("affective_link")) {
                    if (!value->is_number() || value->number() < -1.0 || value->number() > 1.0)
                        fail_at(attr_where, "affective_link must lie in [-1,1]");
                }
                def.attributes.emplace_back(label, value);
                if (at_punct(",")) {
                    advance();
                    continue;
                }
                break;
            }
            expect_punct("]");
            out.push_back(std::move(def));
            if (at_punct(",")) {
                advance();
                continue;
            }
            break;
        }
        expect_punct("]");
        if (at_punct(".")) advance();
        return out;
    }

    // ---- arithmetic / context ----

    ArithExpr::Ptr parse_arith() { return parse_addsub(); }

    ArithExpr::Ptr parse_addsub() {
        ArithExpr::Ptr lhs = parse_muldiv();
        while (at_punct("+") || at_punct("-")) {
            char op = advance().text[0];
            lhs = ArithExpr::binary(op, lhs, parse_muldiv());
        }
        return lhs;
    }

    ArithExpr::Ptr parse_muldiv() {
        ArithExpr::Ptr lhs = parse_unary();
        while (at_punct("*") || at_punct("/")) {
            char op = advance().text[0];
            lhs = ArithExpr::binary(op, lhs, parse_unary());
        }
        return lhs;
    }

    ArithExpr::Ptr parse_unary() {
        if (at_punct("-")) {
            advance();
            return ArithExpr::negate(parse_unary());
        }
        const Token& t = peek();
        if (t.kind == Token::Kind::number) {
            advance();
            return ArithExpr::number(t.num);
        }
        if (t.kind == Token::Kind::var) {
            advance();
            return ArithExpr::variable(t.text);
        }
        if (at_punct("(")) {
            advance();
            ArithExpr::Ptr e = parse_addsub();
            expect_punct(")");
            return e;
        }
        fail("expected arithmetic operand");
    }

    std::optional<RelOp> peek_rel_op() const {
        if (peek().kind != Token::Kind::punct) return std::nullopt;
        const std::string& p = peek().text;
        if (p == "<") return RelOp::lt;
        if (p == "<=") return RelOp::le;
        if (p == ">") return RelOp::gt;
        if (p == ">=") return RelOp::ge;
        if (p == "==") return RelOp::eq;
        if (p == "\\==") return RelOp::ne;
        return std::nullopt;
    }

    ContextExpr parse_context() {
        ContextExpr ctx;
        if (at_atom("true")) {
            advance();
            return ctx;
        }
        for (;;) {
            ContextLiteral lit;
            if (at_atom("not")) {
                advance();
                lit.negated = true;
            }
            if (peek().kind == Token::Kind::atom) {
                lit.pattern = parse_compound(VarPolicy::keep);
            } else {
                Comparison cmp;
                cmp.lhs = parse_arith();
                auto op = peek_rel_op();
                if (!op) fail("expected comparison operator");
                advance();
                cmp.op = *op;
                cmp.rhs = parse_arith();
                lit.comparison = std::move(cmp);
            }
            ctx.conjuncts.push_back(std::move(lit));
            if (at_punct("&")) {
                advance();
                continue;
            }
            break;
        }
        return ctx;
    }

    // ---- plans ----

    PlanDef parse_plan() {
        PlanDef plan;
        if (at_punct("@")) {
            advance();
            const Token& name = peek();
            if (name.kind != Token::Kind::atom) fail("expected plan label after '@'");
            advance();
            plan.label = Atom::intern(name.text);
            if (at_punct("[")) {
                advance();
                for (;;) {
                    plan.label_annots.push_back(parse_annotation(VarPolicy::keep));
                    if (at_punct(",")) {
                        advance();
                        continue;
                    }
                    break;
                }
                expect_punct("]");
            }
            interpret_label_annots(plan);
        }
        plan.trigger = parse_trigger();
        if (at_punct(":")) {
            advance();
            plan.context = parse_context();
        }
        expect_punct("<-");
        plan.body = parse_body();
        expect_period();
        return plan;
    }

    TriggeringEvent parse_trigger() {
        TriggeringEvent te;
        if (at_punct("+")) {
            te.op = EventOp::add;
        } else if (at_punct("-")) {
            te.op = EventOp::del;
        } else {
            fail("expected '+' or '-' plan trigger");
        }
        advance();
        if (at_punct("!")) {
            advance();
            te.type = EventType::achievement;
        } else if (at_punct("?")) {
            advance();
            te.type = EventType::test;
        }
        te.term = parse_compound(VarPolicy::keep);
        return te;
    }

    void interpret_label_annots(PlanDef& plan) {
        for (const auto& a : plan.label_annots) {
            Atom f = a->functor();
            const Token& here = peek();
            if (f == Atom::intern("priority")) {
                if (a->args().size() != 1 || !a->args()[0]->is_number() ||
                    a->args()[0]->number() < 0)
                    fail_at(here, "priority annotation takes one non-negative number");
                plan.priority = a->args()[0]->number();
            } else if (f == Atom::intern("mood")) {
                if (a->args().size() != 2 || !a->args()[0]->is_atom() ||
                    !a->args()[1]->is_number())
                    fail_at(here, "mood annotation takes (label, min_intensity)");
                plan.affective.mood_label = a->args()[0]->functor();
                plan.affective.min_intensity = a->args()[1]->number();
            } else if (f == Atom::intern("trait")) {
                if (a->args().size() != 2 || !a->args()[0]->is_atom() ||
                    !a->args()[1]->is_number())
                    fail_at(here, "trait annotation takes (label, min_value)");
                plan.affective.trait_min.emplace_back(a->args()[0]->functor(),
                                                      a->args()[1]->number());
            } else if (f == Atom::intern("ub_add") || f == Atom::intern("ub_del")) {
                if (a->args().size() != 2 || !a->args()[1]->is_atom())
                    fail_at(here, "ub_add/ub_del annotations take (term, step)");
                auto step = rational_step_from_atom(a->args()[1]->functor());
                if (!step)
                    fail_at(here, "unknown rational step '" + a->args()[1]->functor().str() + "'");
                plan.ub_effects.push_back(
                    UbEffect{f == Atom::intern("ub_add"), a->args()[0], *step});
            }
            // other annotations are kept verbatim and uninterpreted
        }
    }

    std::vector<BodyStep> parse_body() {
        std::vector<BodyStep> body;
        if (at_atom("true")) {
            const Token& t = peek();
            advance();
            if (!at_punct(".")) fail_at(t, "'true' must be the whole plan body");
            return body;
        }
        for (;;) {
            body.push_back(parse_body_step());
            if (at_punct(";")) {
                advance();
                continue;
            }
            break;
        }
        return body;
    }

    BodyStep parse_body_step() {
        BodyStep step;
        if (at_punct("+")) {
            advance();
            step.op = BodyStep::Op::add_belief;
            step.term = parse_compound(VarPolicy::keep);
            return step;
        }
        if (at_punct("-")) {
            advance();
            step.op = BodyStep::Op::del_belief;
            step.term = parse_compound(VarPolicy::keep);
            return step;
        }
        if (at_punct("!")) {
            advance();
            step.op = BodyStep::Op::achieve;
            step.term = parse_compound(VarPolicy::keep);
            return step;
        }
        if (at_punct("?")) {
            advance();
            step.op = BodyStep::Op::test;
            step.term = parse_compound(VarPolicy::keep);
            return step;
        }
        if (peek().kind == Token::Kind::internal) {
            const Token& t = peek();
            if (t.text == ".print") {
                advance();
                step.op = BodyStep::Op::print;
                expect_punct("(");
                if (!at_punct(")")) {
                    for (;;) {
                        step.print_args.push_back(parse_term(VarPolicy::keep));
                        if (at_punct(",")) {
                            advance();
                            continue;
                        }
                        break;
                    }
                }
                expect_punct(")");
                return step;
            }
            if (t.text == ".send") {
                advance();
                step.op = BodyStep::Op::send;
                expect_punct("(");
                step.send_recipient = parse_term(VarPolicy::keep);
                if (!step.send_recipient->is_atom() && !step.send_recipient->is_variable())
                    fail_at(t, ".send recipient must be an agent id or variable");
                expect_punct(",");
                const Token& ilf = peek();
                if (ilf.kind != Token::Kind::atom) fail(".send needs an illocutionary force atom");
                advance();
                step.send_ilf = Atom::intern(ilf.text);
                expect_punct(",");
                step.term = parse_term(VarPolicy::keep);
                expect_punct(")");
                return step;
            }
            fail("unsupported internal action '" + t.text + "'");
        }
        if (peek().kind == Token::Kind::atom) {
            step.op = BodyStep::Op::action;
            step.term = parse_compound(VarPolicy::keep);
            return step;
        }
        fail("expected plan body step");
    }

    // ---- MAS project ----

    bool at_mas_section_start(size_t k = 0) const {
        if (peek(k).kind != Token::Kind::atom || !at_punct(":", k + 1)) return false;
        const std::string& t = peek(k).text;
        return t == "infrastructure" || t == "environment" || t == "execcontrol" ||
               t == "agents" || t == "w_matrix__" || t == "prototypes__" ||
               t == "emotion_table__" || t == "al_weight__" || t == "empathy_perspective__";
    }

    void parse_w_matrix(MasProject& mas) {
        advance(); // w_matrix__
        expect_punct(":");
        expect_punct("[");
        parse_w_row(mas);
        if (at_punct("]")) {
            advance();
            // EBNF form brackets every row: [ trait: [...] ], [ trait: [...] ]
            while (at_punct(",")) {
                advance();
                expect_punct("[");
                parse_w_row(mas);
                expect_punct("]");
            }
        } else {
            // Listing form keeps all rows in one bracket pair.
            while (at_punct(",")) {
                advance();
                parse_w_row(mas);
            }
            expect_punct("]");
        }
        if (at_punct(".")) advance();
        mas.has_w_matrix = true;
    }

    void parse_w_row(MasProject& mas) {
        const Token& where = peek();
        Atom trait = expect_name("trait label");
        if (!options_.trait_labels.count(trait.str()))
            fail_at(where, "unknown personality trait '" + trait.str() + "'");
        expect_punct(":");
        expect_punct("[");
        for (;;) {
            Atom em = expect_name("emotion label");
            expect_punct(":");
            const Token& wt = peek();
            double w = expect_number("weight");
            if (w < 0) fail_at(wt, "omega weights must be non-negative");
            mas.w_matrix.set(em, trait, w);
            if (at_punct(",")) {
                advance();
                continue;
            }
            break;
        }
        expect_punct("]");
    }

    void parse_agents_section(MasProject& mas) {
        advance(); // agents
        expect_punct(":");
        while (!at_punct("}") && !at_mas_section_start() && !at_end()) {
            MasAgentEntry entry;
            const Token& where = peek();
            entry.id = expect_name("agent id");
            for (const auto& existing : mas.agents)
                if (existing.id == entry.id)
                    fail_at(where, "duplicate agent id '" + entry.id.str() + "'");
            if (peek().kind == Token::Kind::str) {
                entry.file = advance().text;
            } else {
                entry.file = entry.id.str() + ".easl";
            }
            if (at_punct("[")) {
                advance();
                for (;;) {
                    const Token& opt = peek();
                    Atom key = expect_name("agent option");
                    expect_punct(":");
                    if (key == Atom::intern("mood") || key == Atom::intern("equilibrium")) {
                        expect_punct("(");
                        AffectVector v(3);
                        for (size_t i = 0; i < 3; ++i) {
                            v[i] = expect_number_in(-1.0, 1.0, "mood component");
                            if (i + 1 < 3) expect_punct(",");
                        }
                        expect_punct(")");
                        if (key == Atom::intern("mood"))
                            entry.mood = v;
                        else
                            entry.equilibrium = v;
                    } else if (key == Atom::intern("decay")) {
                        entry.decay = expect_number_in(0.0, 1.0, "decay rate");
                    } else {
                        fail_at(opt, "unknown agent option '" + key.str() + "'");
                    }
                    if (at_punct(",")) {
                        advance();
                        continue;
                    }
                    break;
                }
                expect_punct("]");
            }
            expect_punct(";");
            mas.agents.push_back(std::move(entry));
        }
    }

    void parse_ignored_block(MasProject& mas) {
        const Token& name = advance();
        expect_punct(":");
        size_t start = peek().offset;
        size_t end = start;
        while (!at_end() && !at_punct("}") && !at_mas_section_start()) {
            const Token& t = advance();
            end = t.offset + raw_length(t);
        }
        std::string raw(source_.substr(start, end > start ? end - start : 0));
        while (!raw.empty() && (raw.back() == ' ' || raw.back() == '\n' || raw.back() == '\r' ||
                                raw.back() == '\t'))
            raw.pop_back();
        mas.ignored_blocks.emplace_back(name.text, raw);
    }

    static size_t raw_length(const Token& t) {
        switch (t.kind) {
        case Token::Kind::str:
            return t.text.size() + 2; // approximation; escapes are rare here
        default:
            return t.text.size();
        }
    }

    // ---- scenario ----

    Scenario parse_scenario_impl() {
        Scenario sc;
        long last_tick = -1;
        while (!at_end()) {
            if (at_atom("ticks")) {
                const Token& t = peek();
                advance();
                double n = expect_number("tick count");
                if (n < 0 || n != std::floor(n)) fail_at(t, "ticks must be a non-negative integer");
                if (sc.ticks) fail_at(t, "duplicate ticks directive");
                sc.ticks = static_cast<long>(n);
                expect_period();
                continue;
            }
            if (!at_atom("tick")) fail("expected 'tick' or 'ticks' line");
            const Token& t = peek();
            advance();
            double n = expect_number("tick number");
            if (n < 0 || n != std::floor(n)) fail_at(t, "tick must be a non-negative integer");
            long tick = static_cast<long>(n);
            if (tick < last_tick)
                fail_at(t, "ticks must be non-decreasing (saw " + std::to_string(tick) +
                               " after " + std::to_string(last_tick) + ")");
            last_tick = tick;
            ScenarioInjection inj;
            inj.tick = tick;
            if (at_punct("*")) {
                advance();
                inj.broadcast = true;
            } else {
                inj.recipient = expect_name("agent id or '*'");
            }
            inj.percept = parse_term(VarPolicy::to_atom);
            if (!inj.percept->is_compound()) fail("percept must be an atom or compound term");
            expect_period();
            sc.injections.push_back(std::move(inj));
        }
        return sc;
    }

    std::string_view source_;
    std::string filename_;
    ParseOptions options_;
    std::vector<Token> tokens_;
    size_t pos_ = 0;
    int max_section_ = 0;
};

AgentProgram Parser::parse_agent_file() {
    AgentProgram program;
    bool personality_seen = false;
    bool others_seen = false;
    while (!at_end()) {
        if (at_atom("concern__") && at_punct(":", 1)) {
            enter_section(kConcerns, "concerns");
            program.concerns.push_back(parse_concern());
        } else if (at_atom("personality__") && at_punct(":", 1)) {
            if (personality_seen) fail("duplicate personality__ section");
            personality_seen = true;
            enter_section(kPersonality, "personality");
            program.personality = parse_personality();
        } else if (at_atom("others__") && at_punct(":", 1)) {
            if (others_seen) fail("duplicate others__ section");
            others_seen = true;
            enter_section(kOthers, "others__");
            program.others = parse_others();
        } else if (at_punct("!")) {
            enter_section(kGoals, "initial goals");
            advance();
            TermPtr goal = parse_compound(VarPolicy::keep);
            if (!is_ground(goal)) fail("initial goals must be ground");
            expect_period();
            program.init_goals.push_back(goal);
        } else if (at_punct("@") || at_punct("+") || at_punct("-")) {
            enter_section(kPlans, "plans");
            PlanDef plan = parse_plan();
            plan.index = program.plans.size();
            program.plans.push_back(std::move(plan));
        } else if (peek().kind == Token::Kind::atom) {
            enter_section(kBeliefs, "initial beliefs");
            TermPtr belief = parse_compound(VarPolicy::keep);
            if (!is_ground(belief)) fail("initial beliefs must be ground");
            expect_period();
            program.init_beliefs.push_back(belief);
        } else {
            fail("expected agent program statement");
        }
    }
    // Coping strategy labels must name plans.
    for (Atom label : program.personality.coping)
        if (!program.plan_by_label(label))
            throw parse_error(filename_, 1, 1,
                              "coping strategy '" + label.str() + "' names no plan label");
    return program;
}

MasProject Parser::parse_mas_file() {
    MasProject mas;
    if (!((peek().kind == Token::Kind::var && peek().text == "MAS") || at_atom("mas")))
        fail("expected 'MAS'");
    advance();
    mas.name = expect_name("MAS name");
    expect_punct("{");
    bool agents_seen = false, matrix_seen = false;
    while (!at_punct("}")) {
        if (at_end()) fail("unterminated MAS block");
        if (at_atom("agents") && at_punct(":", 1)) {
            if (agents_seen) fail("duplicate agents section");
            agents_seen = true;
            parse_agents_section(mas);
        } else if (at_atom("w_matrix__") && at_punct(":", 1)) {
            if (matrix_seen) fail("duplicate w_matrix__ section");
            matrix_seen = true;
            parse_w_matrix(mas);
        } else if (at_atom("prototypes__") && at_punct(":", 1)) {
            advance();
            expect_punct(":");
            if (peek().kind != Token::Kind::str) fail("prototypes__ takes a file path string");
            mas.prototypes_file = advance().text;
        } else if (at_atom("emotion_table__") && at_punct(":", 1)) {
            advance();
            expect_punct(":");
            if (peek().kind != Token::Kind::str) fail("emotion_table__ takes a file path string");
            mas.emotion_table_file = advance().text;
        } else if (at_atom("al_weight__") && at_punct(":", 1)) {
            advance();
            expect_punct(":");
            mas.al_weight = expect_number("al weighting factor");
        } else if (at_atom("empathy_perspective__") && at_punct(":", 1)) {
            advance();
            expect_punct(":");
            const Token& t = peek();
            Atom mode = expect_name("perspective mode");
            if (mode == Atom::intern("self"))
                mas.perspective = EmpathyPerspective::self_projection;
            else if (mode == Atom::intern("target"))
                mas.perspective = EmpathyPerspective::target_concerns;
            else
                fail_at(t, "empathy_perspective__ must be 'self' or 'target'");
        } else if ((at_atom("infrastructure") || at_atom("environment") || at_atom("execcontrol")) &&
                   at_punct(":", 1)) {
            parse_ignored_block(mas);
        } else {
            fail("expected MAS section");
        }
    }
    expect_punct("}");
    if (!at_end()) fail("trailing input after MAS block");
    return mas;
}

Scenario Parser::parse_scenario_file() { return parse_scenario_impl(); }

} // namespace

AgentProgram parse_agent(std::string_view source, const std::string& filename,
                         const ParseOptions& options) {
    return Parser(source, filename, options).parse_agent_file();
}

MasProject parse_mas(std::string_view source, const std::string& filename,
                     const ParseOptions& options) {
    return Parser(source, filename, options).parse_mas_file();
}

Scenario parse_scenario(std::string_view source, const std::string& filename) {
    return Parser(source, filename, ParseOptions{}).parse_scenario_file();
}

TermPtr parse_ground_term(std::string_view source, const std::string& filename) {
    return Parser(source, filename, ParseOptions{}).parse_scenario_term();
}

} // namespace easl

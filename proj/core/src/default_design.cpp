#include "easl/default_design.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "easl/diagnostics.hpp"
#include "easl/state.hpp"

namespace easl {

double concern_desirability(const TriggeringEvent& te, const std::vector<ConcernDef>& concerns,
                            std::vector<std::string>* warnings) {
    for (const ConcernDef& concern : concerns) {
        auto unifier = unify(concern.pattern, te.term);
        if (!unifier) continue;
        auto value = concern.expression->eval(*unifier);
        if (!value) {
            if (warnings)
                warnings->push_back("concern '" + concern.label.str() +
                                    "' failed to evaluate for " + te.to_string());
            return 0.0;
        }
        double v = std::clamp(*value, -1.0, 1.0);
        return te.op == EventOp::del ? -v : v;
    }
    return 0.0;
}

AppraisalVariables derive_appraisal_variables(const TriggeringEvent& te, Atom self_id,
                                              const std::vector<ConcernDef>& concerns,
                                              std::vector<std::string>* warnings) {
    AppraisalVariables av;
    av.desirability = concern_desirability(te, concerns, warnings);
    av.likelihood = get_prob(te).value_or(1.0);
    av.causal_attribution = get_subject(te, self_id);
    return av;
}

bool EmotionRule::matches(const AppraisalVariables& av) const {
    switch (sign) {
    case Sign::positive:
        if (!(av.desirability > 0)) return false;
        break;
    case Sign::negative:
        if (!(av.desirability < 0)) return false;
        break;
    case Sign::zero:
        if (av.desirability != 0) return false;
        break;
    case Sign::any:
        break;
    }
    switch (likelihood) {
    case LikelihoodFilter::below_one:
        if (!(av.likelihood < 1.0)) return false;
        break;
    case LikelihoodFilter::exactly_one:
        if (av.likelihood != 1.0) return false;
        break;
    case LikelihoodFilter::any:
        break;
    }
    switch (attribution) {
    case AttributionFilter::self_:
        if (av.causal_attribution.kind != SubjectRef::Kind::self) return false;
        break;
    case AttributionFilter::other:
        if (av.causal_attribution.kind != SubjectRef::Kind::agent) return false;
        break;
    case AttributionFilter::none:
        if (av.causal_attribution.kind != SubjectRef::Kind::none) return false;
        break;
    case AttributionFilter::any:
        break;
    }
    return true;
}

double EmotionRule::intensity_for(const AppraisalVariables& av) const {
    double out = 1.0;
    for (const Factor& f : intensity) {
        switch (f.kind) {
        case Factor::Kind::desirability: out *= av.desirability; break;
        case Factor::Kind::abs_desirability: out *= std::fabs(av.desirability); break;
        case Factor::Kind::likelihood: out *= av.likelihood; break;
        case Factor::Kind::constant: out *= f.value; break;
        }
    }
    return out;
}

namespace {

EmotionRule::Factor factor_d() { return {EmotionRule::Factor::Kind::desirability, 0}; }
EmotionRule::Factor factor_abs_d() { return {EmotionRule::Factor::Kind::abs_desirability, 0}; }
EmotionRule::Factor factor_l() { return {EmotionRule::Factor::Kind::likelihood, 0}; }

EmotionRule make_rule(EmotionRule::Sign sign, EmotionRule::LikelihoodFilter lik,
                      EmotionRule::AttributionFilter attr, const char* label,
                      std::vector<EmotionRule::Factor> intensity) {
    EmotionRule r;
    r.sign = sign;
    r.likelihood = lik;
    r.attribution = attr;
    r.label = Atom::intern(label);
    r.intensity = std::move(intensity);
    return r;
}

} // namespace

EmotionTable EmotionTable::builtin_default() {
    using S = EmotionRule::Sign;
    using L = EmotionRule::LikelihoodFilter;
    using A = EmotionRule::AttributionFilter;
    EmotionTable t;
    t.appraisal = {
        make_rule(S::positive, L::below_one, A::any, "hope", {factor_d(), factor_l()}),
        make_rule(S::positive, L::exactly_one, A::any, "joy", {factor_d()}),
        make_rule(S::negative, L::below_one, A::any, "fear", {factor_abs_d(), factor_l()}),
        make_rule(S::negative, L::exactly_one, A::any, "sadness", {factor_abs_d()}),
        make_rule(S::negative, L::any, A::self_, "guilt", {factor_abs_d()}),
    };
    t.empathic = {
        make_rule(S::positive, L::any, A::any, "happy_for", {factor_d(), factor_l()}),
        make_rule(S::negative, L::any, A::any, "sorry_for", {factor_abs_d(), factor_l()}),
    };
    return t;
}

EmotionTable EmotionTable::parse(std::istream& in, const std::string& filename) {
    EmotionTable t;
    std::vector<EmotionRule>* section = nullptr;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) { throw parse_error(filename, lineno, 1, msg); };
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv(line);
        if (auto hash = sv.find('#'); hash != std::string_view::npos) sv = sv.substr(0, hash);
        std::istringstream ls{std::string(sv)};
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "appraisal:") {
            section = &t.appraisal;
            continue;
        }
        if (first == "empathic:") {
            section = &t.empathic;
            continue;
        }
        if (!section) fail("expected `appraisal:` or `empathic:` section header");
        EmotionRule rule;
        if (first == "pos")
            rule.sign = EmotionRule::Sign::positive;
        else if (first == "neg")
            rule.sign = EmotionRule::Sign::negative;
        else if (first == "zero")
            rule.sign = EmotionRule::Sign::zero;
        else if (first == "any")
            rule.sign = EmotionRule::Sign::any;
        else
            fail("unknown sign filter '" + first + "'");
        std::string lik, attr, label, expr;
        if (!(ls >> lik >> attr >> label >> expr))
            fail("expected `sign likelihood attribution label intensity_expr`");
        if (lik == "lt1")
            rule.likelihood = EmotionRule::LikelihoodFilter::below_one;
        else if (lik == "eq1")
            rule.likelihood = EmotionRule::LikelihoodFilter::exactly_one;
        else if (lik == "any")
            rule.likelihood = EmotionRule::LikelihoodFilter::any;
        else
            fail("unknown likelihood filter '" + lik + "'");
        if (attr == "self")
            rule.attribution = EmotionRule::AttributionFilter::self_;
        else if (attr == "other")
            rule.attribution = EmotionRule::AttributionFilter::other;
        else if (attr == "null")
            rule.attribution = EmotionRule::AttributionFilter::none;
        else if (attr == "any")
            rule.attribution = EmotionRule::AttributionFilter::any;
        else
            fail("unknown attribution filter '" + attr + "'");
        rule.label = Atom::intern(label);
        size_t start = 0;
        while (start <= expr.size()) {
            size_t star = expr.find('*', start);
            std::string tok = expr.substr(start, star == std::string::npos ? star : star - start);
            if (tok.empty()) fail("empty factor in intensity expression");
            if (tok == "d")
                rule.intensity.push_back(factor_d());
            else if (tok == "abs_d")
                rule.intensity.push_back(factor_abs_d());
            else if (tok == "l")
                rule.intensity.push_back(factor_l());
            else {
                try {
                    size_t used = 0;
                    double v = std::stod(tok, &used);
                    if (used != tok.size()) throw std::invalid_argument(tok);
                    rule.intensity.push_back({EmotionRule::Factor::Kind::constant, v});
                } catch (const std::exception&) {
                    fail("unknown intensity factor '" + tok + "'");
                }
            }
            if (star == std::string::npos) break;
            start = star + 1;
        }
        std::string extra;
        if (ls >> extra) fail("trailing input '" + extra + "'");
        section->push_back(std::move(rule));
    }
    return t;
}

EmotionTable EmotionTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open emotion table: " + path);
    return parse(in, path);
}

std::vector<Emotion> derive_emotions(const AppraisalVariables& av,
                                     const std::vector<EmotionRule>& rules,
                                     const AffectModel& model) {
    std::vector<Emotion> out;
    for (const EmotionRule& rule : rules) {
        if (!rule.matches(av)) continue;
        const AffectVector* proto = model.prototypes.find(rule.label);
        if (!proto)
            throw config_error("emotion label '" + rule.label.str() +
                               "' is not in the prototype table");
        Emotion em;
        em.label = rule.label;
        em.vector = (rule.intensity_for(av) * *proto).clamped();
        out.push_back(std::move(em));
    }
    return out;
}

std::vector<Emotion> derive_em(const AppraisalVariables& av, const EmotionTable& table,
                               const AffectModel& model) {
    return derive_emotions(av, table.appraisal, model);
}

std::vector<Emotion> derive_emph_em(const AppraisalVariables& av, const EmotionTable& table,
                                    const AffectModel& model) {
    return derive_emotions(av, table.empathic, model);
}

AffectVector phi1(const AffectModel& model, const Traits& traits, const AffectVector& mood,
                  const AffectVector& e) {
    return (model.psi(traits, mood) * mood + e).clamped();
}

AffectVector phi2(const AffectModel& model, const Traits& traits, double affective_link,
                  const AffectVector& mood, const AffectVector& e) {
    AffectVector inner = model.psi(traits, e) * e + model.psi(traits, mood) * mood;
    return (affective_link * inner).clamped();
}

AffectVector phi2(const AffectModel& model, const Traits& traits,
                  const std::map<Atom, OtherAgentInfo>& others, Atom target,
                  const AffectVector& mood, const AffectVector& e) {
    auto it = others.find(target);
    if (it == others.end())
        throw config_error("empathic regulation target '" + target.str() + "' is not registered");
    return phi2(model, traits, it->second.affective_link, mood, e);
}

AffectVector phi3(const AffectModel& model, const Traits& traits, const AffectVector& mood,
                  const AffectVector& e) {
    return (model.psi(traits, mood) * mood + model.psi(traits, e) * e).clamped();
}

std::optional<Emotion> sel_emotion(const std::vector<Emotion>& ae, const std::vector<Emotion>& ee,
                                   const AffectModel& model) {
    std::optional<Emotion> best;
    double best_score = 0.0;
    auto consider = [&](const Emotion& em) {
        double prob = model.label_probability(em.vector, model.label_of(em.vector));
        double score = prob * em.intensity();
        if (!best || score > best_score ||
            (score == best_score && em.label < best->label)) {
            best = em;
            best_score = score;
        }
    };
    for (const Emotion& em : ae) consider(em);
    for (const Emotion& em : ee) consider(em);
    return best;
}

double update_al(double al, double iv, double weight) {
    return std::clamp(al + weight * iv, -1.0, 1.0);
}

} // namespace easl

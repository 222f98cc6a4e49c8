#ifndef EASL_DEFAULT_DESIGN_HPP
#define EASL_DEFAULT_DESIGN_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "easl/affect.hpp"
#include "easl/program.hpp"
#include "easl/term.hpp"

namespace easl {

// OCC-style appraisal variables: desirability from the agent's concerns,
// likelihood from the prob__ annotation (1 = the event occurred), causal
// attribution from the subject annotation.
struct AppraisalVariables {
    double desirability = 0.0;
    double likelihood = 1.0;
    SubjectRef causal_attribution = SubjectRef::none();
};

// Desirability of an event: value of the first concern whose pattern unifies
// with the event term, negated for deletion events, clamped to [-1, 1];
// 0 when no concern matches. Evaluation failures report through `warnings`
// and count as no match.
double concern_desirability(const TriggeringEvent& te, const std::vector<ConcernDef>& concerns,
                            std::vector<std::string>* warnings = nullptr);

AppraisalVariables derive_appraisal_variables(const TriggeringEvent& te, Atom self_id,
                                              const std::vector<ConcernDef>& concerns,
                                              std::vector<std::string>* warnings = nullptr);

// One row of the data-driven emotion derivation table.
struct EmotionRule {
    enum class Sign { positive, negative, zero, any };
    enum class LikelihoodFilter { below_one, exactly_one, any };
    enum class AttributionFilter { self_, other, none, any };

    struct Factor {
        enum class Kind { desirability, abs_desirability, likelihood, constant };
        Kind kind = Kind::constant;
        double value = 1.0;
    };

    Sign sign = Sign::any;
    LikelihoodFilter likelihood = LikelihoodFilter::any;
    AttributionFilter attribution = AttributionFilter::any;
    Atom label;
    std::vector<Factor> intensity; // product of factors

    bool matches(const AppraisalVariables& av) const;
    double intensity_for(const AppraisalVariables& av) const;
};

// Emotion derivation tables for the self-appraisal and empathic-appraisal
// processes. The built-in default realizes the five base emotions (hope, joy,
// fear, sadness, guilt) and the two empathic ones (happy_for, sorry_for).
struct EmotionTable {
    std::vector<EmotionRule> appraisal;
    std::vector<EmotionRule> empathic;

    static EmotionTable builtin_default();
    // File format: `appraisal:` / `empathic:` section headers, then rows
    // `sign likelihood attribution label intensity_expr` where sign is
    // pos|neg|zero|any, likelihood is lt1|eq1|any, attribution is
    // self|other|null|any and intensity_expr multiplies d, abs_d, l and
    // constants with '*'.
    static EmotionTable parse(std::istream& in, const std::string& filename);
    static EmotionTable load(const std::string& path);
};

// Applies every matching rule; each produced emotion's vector is the label's
// prototype scaled by the rule intensity. Throws config_error for labels
// missing from the prototype table.
std::vector<Emotion> derive_emotions(const AppraisalVariables& av,
                                     const std::vector<EmotionRule>& rules,
                                     const AffectModel& model);

std::vector<Emotion> derive_em(const AppraisalVariables& av, const EmotionTable& table,
                               const AffectModel& model);
std::vector<Emotion> derive_emph_em(const AppraisalVariables& av, const EmotionTable& table,
                                    const AffectModel& model);

// Emotion regulation: clamp(psi(mood) * mood + e).
AffectVector phi1(const AffectModel& model, const Traits& traits, const AffectVector& mood,
                  const AffectVector& e);

// Empathic regulation: clamp((psi(e) * e + psi(mood) * mood) * al).
AffectVector phi2(const AffectModel& model, const Traits& traits, double affective_link,
                  const AffectVector& mood, const AffectVector& e);
AffectVector phi2(const AffectModel& model, const Traits& traits,
                  const std::map<Atom, struct OtherAgentInfo>& others, Atom target,
                  const AffectVector& mood, const AffectVector& e);

// Affect adaptation: clamp(psi(mood) * mood + psi(e) * e).
AffectVector phi3(const AffectModel& model, const Traits& traits, const AffectVector& mood,
                  const AffectVector& e);

// Final-emotion choice: argmax of max-label-probability times intensity over
// Ae then Ee; ties broken by label order, then by position. Absent when both
// sets are empty.
std::optional<Emotion> sel_emotion(const std::vector<Emotion>& ae, const std::vector<Emotion>& ee,
                                   const AffectModel& model);

// clamp(al + weight * iv), the affective-link update.
double update_al(double al, double iv, double weight);

} // namespace easl

#endif

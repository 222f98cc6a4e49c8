#ifndef EASL_PARSER_HPP
#define EASL_PARSER_HPP

#include <set>
#include <string>
#include <string_view>

#include "easl/program.hpp"

namespace easl {

struct ParseOptions {
    // Accepted personality trait labels (OCEAN by default).
    std::set<std::string> trait_labels = {
        "openness", "conscientiousness", "extraversion", "agreeableness", "neuroticism",
    };
};

// Parses an agent program (.easl). Throws parse_error with file/line/column
// on any syntax or range violation.
AgentProgram parse_agent(std::string_view source, const std::string& filename = "<agent>",
                         const ParseOptions& options = {});

// Parses a MAS project file (.emas). Emotion labels are checked against the
// prototype table at load time, not here.
MasProject parse_mas(std::string_view source, const std::string& filename = "<mas>",
                     const ParseOptions& options = {});

// Parses a scenario file (.scn): `tick <n> <agent|*> <term>.` lines plus an
// optional `ticks <n>.` run-length directive. Uppercase identifiers inside
// percepts are normalized to atoms.
Scenario parse_scenario(std::string_view source, const std::string& filename = "<scenario>");

// Parses one term in scenario normalization mode (test/tooling helper).
TermPtr parse_ground_term(std::string_view source, const std::string& filename = "<term>");

} // namespace easl

#endif

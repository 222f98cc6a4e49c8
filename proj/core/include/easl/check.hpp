#ifndef EASL_CHECK_HPP
#define EASL_CHECK_HPP

#include <string>
#include <vector>

#include "easl/simulation.hpp"

namespace easl {

struct Diagnostic {
    enum class Severity { error, warning };
    Severity severity = Severity::warning;
    std::string message;
};

// Static project validation: parses everything, reports omega coverage
// (configured emotion labels without weights), achievement-goal plans whose
// trigger nothing produces, and out-of-range values. Parse failures surface
// as error diagnostics rather than exceptions.
std::vector<Diagnostic> check_project(const std::string& mas_path,
                                      const std::string& scenario_path = "");

std::vector<Diagnostic> check_config(const SimulationConfig& cfg);

} // namespace easl

#endif

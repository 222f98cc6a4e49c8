// easl command line: run simulations, validate projects, filter traces.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "easl/check.hpp"
#include "easl/diagnostics.hpp"
#include "easl/simulation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

int cmd_run(const std::string& mas, const std::string& scenario, long ticks_flag, long seed,
            const std::string& trace_path) {
    easl::SimulationConfig cfg = easl::load_simulation(mas, scenario);
    cfg.seed = seed;

    long ticks = ticks_flag >= 0 ? ticks_flag : cfg.scenario.ticks.value_or(10);

    std::ofstream trace_file;
    std::ostream* out = &std::cout;
    if (!trace_path.empty()) {
        trace_file.open(trace_path, std::ios::binary);
        if (!trace_file) {
            std::cerr << "error: cannot open trace file " << trace_path << "\n";
            return kExitRuntime;
        }
        out = &trace_file;
    }
    easl::JsonLinesSink sink(*out);
    easl::Simulation sim(std::move(cfg), sink);
    sim.run(ticks);
    out->flush();

    std::ostream& info = trace_path.empty() ? std::cerr : std::cout;
    info << "ran " << ticks << " tick(s)\n" << easl::summary(sim);
    return kExitOk;
}

int cmd_check(const std::string& mas, const std::string& scenario) {
    auto diagnostics = easl::check_project(mas, scenario);
    bool failed = false;
    for (const auto& d : diagnostics) {
        bool error = d.severity == easl::Diagnostic::Severity::error;
        failed |= error;
        std::cout << (error ? "error: " : "warning: ") << d.message << "\n";
    }
    if (diagnostics.empty()) std::cout << "ok\n";
    return failed ? kExitValidation : kExitOk;
}

int cmd_trace(const std::string& path, const std::string& filter) {
    std::map<std::string, std::string> wanted;
    std::stringstream fs(filter);
    std::string item;
    while (std::getline(fs, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) {
            std::cerr << "error: filter items look like key=value\n";
            return kExitValidation;
        }
        wanted[item.substr(0, eq)] = item.substr(eq + 1);
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open trace " << path << "\n";
        return kExitValidation;
    }
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
        if (record.is_discarded()) continue;
        bool keep = true;
        for (const auto& [key, value] : wanted) {
            std::string field = key == "rule" ? "step" : key;
            if (!record.contains(field) || !record[field].is_string() ||
                record[field].get<std::string>() != value) {
                keep = false;
                break;
            }
        }
        if (keep) std::cout << line << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"empathic AgentSpeak runtime"};
    app.require_subcommand(1);

    std::string mas, scenario, trace_path, filter;
    long ticks = -1;
    long seed = 0;

    CLI::App* run = app.add_subcommand("run", "run a MAS project");
    run->add_option("mas", mas, "MAS project file (.emas)")->required();
    run->add_option("--scenario", scenario, "scenario file (.scn)");
    run->add_option("--ticks", ticks, "tick count (default: scenario directive or 10)");
    run->add_option("--seed", seed, "rng seed for stochastic hooks");
    run->add_option("--trace", trace_path, "write the JSON Lines trace here instead of stdout");

    CLI::App* check = app.add_subcommand("check", "validate a MAS project");
    check->add_option("mas", mas, "MAS project file (.emas)")->required();
    check->add_option("--scenario", scenario, "scenario file (.scn)");

    CLI::App* trace = app.add_subcommand("trace", "filter a recorded trace");
    trace->add_option("path", trace_path, "trace file (JSON Lines)")->required();
    trace->add_option("--filter", filter, "comma-separated key=value (agent=lily,rule=EvClass3)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(mas, scenario, ticks, seed, trace_path);
        if (check->parsed()) return cmd_check(mas, scenario);
        if (trace->parsed()) return cmd_trace(trace_path, filter);
    } catch (const easl::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const easl::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

#ifndef SINGKIT_TOOLS_COMMANDS_HPP
#define SINGKIT_TOOLS_COMMANDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace singkit::cli {

enum ExitCode { kOk = 0, kRefused = 1, kParseError = 2 };

struct Options {
    std::string format = "text";
    std::optional<int> jet;
    std::optional<int> tdeg;
    std::optional<std::string> group;
    std::optional<int> level;
    bool log = false;
    std::string map;    // empty: the command's default target
    std::string ideal;  // "m^d" or comma-separated generators
};

struct Outcome {
    int code = kOk;
    std::string out;
    std::string err;
};

const std::vector<std::string>& command_names();

// Parses the script, runs the command and renders the report.
Outcome run(const std::string& command, const std::string& script, const Options& opts);

// Structured report as produced for --format json.
nlohmann::json report(const std::string& command, const std::string& script, const Options& opts);
std::string render_text(const nlohmann::json& report);

}  // namespace singkit::cli

#endif

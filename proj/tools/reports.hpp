#pragma once

#include "wallcross/workbench.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>

namespace wc::cli {

using Json = nlohmann::ordered_json;

struct Options {
    std::map<std::string, std::string> params;
    Int d = 0;
    std::optional<unsigned> perturb;
    unsigned jobs = 1;
    std::size_t nmax = 4;
    std::optional<std::string> chamber;   // id or character name
    std::optional<std::size_t> path;      // index into the sorted path list
    std::optional<std::string> start;     // character name or comma separated coordinates
    std::optional<std::string> direction;
    bool auto_transfer = false;
    std::size_t max_points = 12;
};

struct Loaded {
    std::string source;       // fixture name or file path as given
    WorkbenchInput input;
    std::string canonical;    // emit_input of the parsed input
};

// A path to a readable file, else a shipped fixture name.
Loaded load_input(const std::string& spec, const Options& opt);

struct Outcome {
    Json results;
    int exit_code = 0;        // 0, or 4 when a verification fails
};

Outcome run_command(const std::string& command, const Loaded& in, const Options& opt);

}  // namespace wc::cli

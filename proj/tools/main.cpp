#include "reports.hpp"

#include "wallcross/errors.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

namespace {

const char* kCommands[] = {"circuits", "triangulations", "secondary", "walls", "run",   "nef-fano",     "sod",
                           "collection", "paths",        "radar",     "match", "ainfty", "verify-example"};

}  // namespace

int main(int argc, char** argv) {
    using wc::cli::Json;
    CLI::App app{"wallcross: toric wall crossing workbench"};
    app.set_version_flag("--version", "wallcross 0.1.0");

    std::string command, input = "example-p2blowup3";
    std::vector<std::string> params;
    std::string d = "0";
    wc::cli::Options opt;
    bool timing = false, list = false;
    int indent = 2;

    std::vector<std::string> names(std::begin(kCommands), std::end(kCommands));
    app.add_option("command", command, "report to produce")->check(CLI::IsMember(names));
    app.add_option("input", input, "input file or shipped fixture name");
    app.add_option("--param", params, "override an input parameter, name=value")->take_all();
    app.add_option("--d", d, "window choice d for every wall in sod");
    app.add_option("--perturb", opt.perturb, "perturb non-generic run starts deterministically");
    app.add_option("--jobs", opt.jobs, "worker threads")->check(CLI::Range(1u, 256u));
    app.add_option("--nmax", opt.nmax, "highest A-infinity arity")->check(CLI::Range(2u, 8u));
    app.add_option("--chamber", opt.chamber, "phase: chamber id or character name");
    app.add_option("--path", opt.path, "monotone path index");
    app.add_option("--start", opt.start, "run start: character name or coordinates a,b,...");
    app.add_option("--direction", opt.direction, "run direction (default K)");
    app.add_option("--max-points", opt.max_points, "enumeration size guard");
    app.add_flag("--auto", opt.auto_transfer, "ignore the fixture homotopy and split automatically");
    app.add_flag("--timing", timing, "report wall clock time");
    app.add_flag("--list-fixtures", list, "print shipped fixture names");
    app.add_option("--indent", indent, "JSON indent, -1 for one line");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (list) {
        for (const auto& n : wc::builtin_fixture_names()) std::cout << n << '\n';
        return 0;
    }
    if (command.empty()) {
        std::cerr << app.help();
        return 2;
    }

    Json out;
    out["command"] = command;
    out["input"] = input;
    int code = 0;
    auto t0 = std::chrono::steady_clock::now();
    try {
        for (const auto& p : params) {
            auto eq = p.find('=');
            if (eq == std::string::npos || eq == 0)
                wc::fail_validation("BadParam", "expected name=value, got '" + p + "'");
            opt.params[p.substr(0, eq)] = p.substr(eq + 1);
        }
        try {
            opt.d = wc::Int(d);
        } catch (const std::invalid_argument&) {
            wc::fail_validation("BadInteger", "--d " + d);
        }
        auto loaded = wc::cli::load_input(input, opt);
        out["input_hash"] = wc::fnv1a_hex(loaded.canonical);
        Json flags;
        if (!opt.params.empty()) flags["param"] = opt.params;
        if (d != "0") flags["d"] = d;
        if (opt.perturb) flags["perturb"] = *opt.perturb;
        if (opt.chamber) flags["chamber"] = *opt.chamber;
        if (opt.path) flags["path"] = *opt.path;
        if (opt.start) flags["start"] = *opt.start;
        if (opt.direction) flags["direction"] = *opt.direction;
        if (command == "ainfty") flags["nmax"] = opt.nmax;
        if (opt.auto_transfer) flags["auto"] = true;
        out["flags"] = flags.is_null() ? Json::object() : flags;
        auto outcome = wc::cli::run_command(command, loaded, opt);
        out["results"] = std::move(outcome.results);
        code = outcome.exit_code;
    } catch (const wc::Error& e) {
        out["error"] = {{"kind", e.kind() == wc::ErrorKind::Validation ? "validation" : "engine"},
                        {"code", e.code()},
                        {"message", e.what()}};
        code = e.kind() == wc::ErrorKind::Validation ? 2 : 3;
    }
    if (timing) {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
        out["timing_ms"] = ms.count();
    }
    std::cout << out.dump(indent) << '\n';
    return code;
}

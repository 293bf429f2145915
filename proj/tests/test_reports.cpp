#include "reports.hpp"

#include "wallcross/errors.hpp"

#include <doctest.h>

using namespace wc;
using namespace wc::cli;

namespace {

Outcome run(const std::string& command, const std::string& input, Options opt = {}) {
    return run_command(command, load_input(input, opt), opt);
}

const std::vector<std::string> fan_commands = {"circuits", "triangulations", "secondary", "walls", "run", "nef-fano",
                                               "sod",      "collection",     "paths",     "radar", "match"};

}  // namespace

TEST_SUITE("reports") {

TEST_CASE("secondary report") {
    auto o = run("secondary", "example-p2blowup3");
    CHECK(o.exit_code == 0);
    CHECK(o.results["chambers"] == 30);
    CHECK(o.results["fan_type"] == 20);
    CHECK(o.results["walls"] == 61);
}

TEST_CASE("paths report") {
    auto o = run("paths", "example-p2blowup3");
    CHECK(o.results["paths"] == 24);
    CHECK(o.results["through_X"] == 10);
    CHECK(o.results["path_list"].size() == 24);
}

TEST_CASE("ainfty report") {
    Options opt;
    opt.nmax = 4;
    auto o = run("ainfty", "scissors", opt);
    CHECK(o.exit_code == 0);
    CHECK(o.results["higher_products"]["m3"].size() == 6);
    CHECK(o.results["higher_products"]["m4"].empty());
    CHECK(o.results["formal"] == false);
    opt.auto_transfer = true;
    auto a = run("ainfty", "scissors", opt);
    CHECK(a.results["higher_products"]["m3"].size() == 6);
    CHECK(run("ainfty", "beilinson", opt).results["formal"] == true);
}

TEST_CASE("the worked example verifies") {
    auto o = run("verify-example", "example-p2blowup3");
    CHECK(o.exit_code == 0);
    CHECK(o.results["all_ok"] == true);
    for (const auto& c : o.results["checks"]) {
        CAPTURE(c.dump());
        CHECK(c["ok"] == true);
    }
}

TEST_CASE("sod report") {
    Options opt;
    opt.chamber = "28";
    opt.d = -1;
    auto o = run("sod", "example-p2blowup3", opt);
    const auto& sod = o.results["sod"];
    CHECK(sod["k0_check"] == true);
    long total = 0;
    for (const auto& c : sod["components"]) total += c["rank"].get<long>();
    CHECK(total == 6);
}

TEST_CASE("errors") {
    Options opt;
    try {
        run("secondary", "scissors");
        FAIL("expected WrongKind");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Validation);
    }
    CHECK_THROWS_AS(load_input("no-such-fixture", opt), Error);
    opt.params["q"] = "1";
    CHECK_THROWS_AS(load_input("p2", opt), Error);
}

TEST_CASE("reports do not depend on the number of jobs") {
    Options one, four;
    four.jobs = 4;
    for (const auto& c : fan_commands) {
        CAPTURE(c);
        CHECK(run(c, "example-p2blowup3", one).results.dump() == run(c, "example-p2blowup3", four).results.dump());
        CHECK(run(c, "hirzebruch", one).results.dump() == run(c, "hirzebruch", four).results.dump());
    }
    for (auto q : {"scissors", "mutated-strong"})
        CHECK(run("ainfty", q, one).results.dump() == run("ainfty", q, four).results.dump());
}

}

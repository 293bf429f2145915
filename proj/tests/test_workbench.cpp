#include "wallcross/errors.hpp"
#include "wallcross/workbench.hpp"

#include <doctest.h>

using namespace wc;

namespace {

std::string code_of(const std::string& text, std::map<std::string, std::string> params = {}) {
    try {
        parse_input(text, params);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Validation);
        return e.code();
    }
    return "";
}

}  // namespace

TEST_SUITE("workbench") {

TEST_CASE("the worked example") {
    auto in = parse_input(*builtin_fixture("example-p2blowup3"));
    CHECK(in.kind == InputKind::Fan);
    CHECK(in.name == "example-p2blowup3");
    CHECK(in.rank == 2);
    CHECK(in.rays().size() == 6);
    auto c = configuration_of(in);
    CHECK(c.size() == 7);
    REQUIRE(c.origin);
    CHECK(c.points[*c.origin] == IntVec{0, 0});
    CHECK(in.basis == std::vector<std::size_t>{0, 3, 4, 5});
    REQUIRE(in.characters.size() == 2);
    CHECK(in.characters[0].first == "minusK");
    CHECK(in.characters[0].second == IntVec{1, 1, 1, 1, 1, 1});
}

TEST_CASE("parametrized families") {
    auto h4 = parse_input(*builtin_fixture("hirzebruch"), {{"n", "4"}});
    CHECK(h4.rays().size() == 4);
    CHECK(h4.rays().back() == IntVec{-4, -1});
    CHECK(configuration_of(h4).size() == 5);
    auto h = parse_input(*builtin_fixture("hirzebruch"));
    CHECK(h.rays().back() == IntVec{-3, -1});
    CHECK(code_of(*builtin_fixture("hirzebruch"), {{"m", "2"}}) == "UnknownParam");
    // parameters are arbitrary precision
    auto big = parse_input(*builtin_fixture("p11n"), {{"n", "123456789012345678901234567890"}});
    CHECK(big.rays().back()[0] == Int("-123456789012345678901234567890"));
}

TEST_CASE("malformed input") {
    CHECK(code_of("") == "ParseError");
    CHECK(code_of("# only a comment\n") == "ParseError");
    CHECK(code_of("rank 2\n") == "ParseError");
    CHECK(code_of("kind fan\nkind fan\n") == "ParseError");
    CHECK(code_of("kind torus\n") == "ParseError");
    CHECK(code_of("kind fan\nray 1 0\n") == "ParseError");
    CHECK(code_of("kind fan\nrank 2\nray 1 0 0\n") == "ParseError");
    CHECK(code_of("kind fan\nrank 2\nray 1 x\n") == "ParseError");
    CHECK(code_of("kind fan\nrank 2\nray 2 0\n") == "NonPrimitiveRay");
    CHECK(code_of("kind configuration\nrank 2\npoint 1 0 origin\n") == "ParseError");
    CHECK(code_of("kind quiver\nvertices 0 1\narrow a 0 1 0\nrelation a b = 0\n") != "");
    try {
        parse_input("kind fan\nrank 2\nray 1 0\nray 4 6\n");
        FAIL("expected NonPrimitiveRay");
    } catch (const Error& e) {
        CHECK(e.code() == "NonPrimitiveRay");
        CHECK(std::string(e.what()).find("(4,6)") != std::string::npos);
    }
    try {
        parse_input("kind fan\nrank 2\nray 1 0\nray 1 y\n");
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }
}

TEST_CASE("round trip of every fixture") {
    auto names = builtin_fixture_names();
    CHECK(names == std::vector<std::string>{"beilinson", "example-p2blowup3", "hirzebruch", "mutated-strong", "p11n",
                                            "p2", "scissors", "scissors-cohomology"});
    for (const auto& n : names) {
        auto in = parse_input(*builtin_fixture(n));
        auto text = emit_input(in);
        auto again = parse_input(text);
        CAPTURE(n);
        CHECK(emit_input(again) == text);
        CHECK(again.kind == in.kind);
        CHECK(again.points == in.points);
        CHECK(again.characters == in.characters);
    }
    CHECK(!builtin_fixture("nope"));
}

TEST_CASE("configurations with an explicit origin") {
    auto in = parse_input("kind configuration\nrank 2\npoint 1 0\npoint 0 0 origin\npoint 0 1\npoint -1 -1\n");
    CHECK(in.kind == InputKind::Configuration);
    REQUIRE(in.origin);
    CHECK(*in.origin == 1);
    CHECK(in.rays().size() == 3);
    auto c = configuration_of(in);
    CHECK(c.size() == 4);
}

TEST_CASE("quiver inputs") {
    auto in = parse_input(*builtin_fixture("scissors"));
    CHECK(in.kind == InputKind::Quiver);
    CHECK(in.quiver.quiver.vertices.size() == 6);
    CHECK(in.quiver.differential.size() == 2);
    CHECK(in.quiver.homotopy.size() == 10);
    CHECK(in.quiver.aliases == std::vector<std::pair<std::string, std::string>>{{"s", "t"}});
    CHECK_THROWS_AS(configuration_of(in), Error);
    auto fan = parse_input(*builtin_fixture("p2"));
    try {
        algebra_of(fan);
        FAIL("expected WrongKind");
    } catch (const Error& e) {
        CHECK(e.code() == "WrongKind");
    }
}

TEST_CASE("input hashes") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
    auto a = emit_input(parse_input(*builtin_fixture("p2")));
    auto b = emit_input(parse_input("# comment\n" + *builtin_fixture("p2")));
    CHECK(fnv1a_hex(a) == fnv1a_hex(b));
}

}

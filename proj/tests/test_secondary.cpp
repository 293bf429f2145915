#include "oracles.hpp"

#include "wallcross/errors.hpp"
#include "wallcross/secondary_fan.hpp"
#include "wallcross/workbench.hpp"

#include <doctest.h>

#include <random>

using namespace wc;

namespace {

SecondaryFan fan_of(const std::string& name, std::map<std::string, std::string> params = {}) {
    return secondary_fan(configuration_of(parse_input(*builtin_fixture(name), params)));
}

std::vector<oracle::P2> p2_of(const PointConfiguration& c) {
    std::vector<oracle::P2> out;
    for (const auto& p : c.points) out.emplace_back(p[0].get_si(), p[1].get_si());
    return out;
}

std::vector<oracle::Tri> tris_of(const Triangulation& t) {
    std::vector<oracle::Tri> out;
    for (const auto& s : t.simplices) out.push_back({s[0], s[1], s[2]});
    return out;
}

std::size_t fan_type_count(const SecondaryFan& f) {
    std::size_t n = 0;
    for (const auto& c : f.chambers) n += c.uses_origin;
    return n;
}

}  // namespace

TEST_SUITE("secondary") {

TEST_CASE("chamber counts") {
    auto p2 = fan_of("p2");
    CHECK(p2.chambers.size() == 2);
    CHECK(fan_type_count(p2) == 1);

    auto f4 = fan_of("hirzebruch", {{"n", "4"}});
    CHECK(fan_type_count(f4) == 2);

    auto x = fan_of("example-p2blowup3");
    CHECK(x.chambers.size() == 30);
    CHECK(fan_type_count(x) == 20);
    CHECK(x.walls.size() == 61);
    CHECK(x.rank() == 4);
}

TEST_CASE("fan-type chambers carry their stacky fan") {
    auto x = fan_of("example-p2blowup3");
    // the fan of X: all six rays in angular order
    std::set<Cell> sigma = {{1, 5}, {3, 5}, {3, 4}, {2, 4}, {0, 2}, {0, 1}};
    std::vector<std::size_t> matches;
    for (const auto& c : x.chambers) {
        auto sf = fan_type(x, c);
        CHECK(sf.has_value() == c.uses_origin);
        CHECK(is_fan_type(c) == c.uses_origin);
        if (!sf) continue;
        std::set<Cell> cones(sf->cones.begin(), sf->cones.end());
        if (cones == sigma) matches.push_back(c.id);
        for (const auto& m : sf->multiplicities) CHECK(m >= 1);
    }
    REQUIRE(matches.size() == 1);
    CHECK(x.chambers[matches[0]].tri.volume_vector[6] == 6);
}

TEST_CASE("chamber interiors reproduce their triangulations") {
    for (auto name : {"p2", "hirzebruch", "example-p2blowup3"}) {
        auto f = fan_of(name);
        for (const auto& c : f.chambers) {
            auto s = regular_subdivision(f.config, f.heights_of(c.interior));
            CHECK(s.cells == c.tri.simplices);
            auto loc = locate_chamber(f, c.interior);
            CHECK(loc.kind == CellKind::Chamber);
            CHECK(loc.chambers == std::vector<std::size_t>{c.id});
        }
    }
}

TEST_CASE("walls are exactly the facet-sharing pairs") {
    for (auto name : {"p2", "hirzebruch", "p11n", "example-p2blowup3"}) {
        auto f = fan_of(name);
        auto pts = p2_of(f.config);
        std::vector<std::vector<IntVec>> rows;
        for (const auto& c : f.chambers) rows.push_back(oracle::convexity_rows(pts, tris_of(c.tri)));
        std::set<std::pair<std::size_t, std::size_t>> oracle_pairs, engine_pairs;
        for (std::size_t i = 0; i < f.chambers.size(); ++i)
            for (std::size_t j = i + 1; j < f.chambers.size(); ++j) {
                std::vector<IntVec> both = rows[i];
                both.insert(both.end(), rows[j].begin(), rows[j].end());
                for (const auto& r : rows[i])
                    if (oracle::strict_feasible_on(both, r)) {
                        oracle_pairs.insert({i, j});
                        break;
                    }
            }
        for (const auto& w : f.walls) engine_pairs.insert({w.a, w.b});
        CAPTURE(name);
        CHECK(engine_pairs == oracle_pairs);
    }
}

TEST_CASE("walls are single flips with primitive oriented cocharacters") {
    auto f = fan_of("example-p2blowup3");
    for (const auto& w : f.walls) {
        CHECK(gcd_of(w.lambda) == 1);
        CHECK(f.ds.pair(w.lambda, f.chambers[w.b].interior) > 0);
        CHECK(f.ds.pair(w.lambda, f.chambers[w.a].interior) < 0);
        const auto& ci = f.circuits[w.circuit];
        CHECK(flip(f.config, f.chambers[w.a].tri, ci) == f.chambers[w.b].tri);
        // lambda is the relation on the rays
        IntVec s(2, 0);
        for (std::size_t i = 0; i < w.lambda.size(); ++i)
            for (std::size_t k = 0; k < 2; ++k) s[k] += w.lambda[i] * f.ds.rays[i][k];
        CHECK(s == IntVec{0, 0});
    }
}

TEST_CASE("locating characters") {
    auto x = fan_of("example-p2blowup3");
    auto zero = locate_chamber(x, RatVec(x.rank(), Rat(0)));
    CHECK(zero.kind == CellKind::Lower);
    CHECK(zero.codim == x.rank());
    CHECK(cone_dimension(x, RatVec(x.rank(), Rat(0))) == 0);

    // -K lies in the closure of the nef-Fano chamber X'
    auto mk = locate_chamber(x, x.anticanonical());
    bool has = std::find(mk.chambers.begin(), mk.chambers.end(), 29) != mk.chambers.end();
    CHECK(has);
    CHECK(x.chambers[29].tri.volume_vector[6] == 7);

    // the fan is complete: random characters always land somewhere
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int trial = 0; trial < 200; ++trial) {
        RatVec chi(x.rank());
        for (auto& v : chi) v = d(rng);
        auto loc = locate_chamber(x, chi);
        CHECK(!loc.chambers.empty());
        if (loc.kind == CellKind::Chamber) CHECK(loc.chambers.size() == 1);
    }
}

TEST_CASE("origin must be marked") {
    auto c = make_configuration({{0, 0}, {1, 0}, {0, 1}}, std::nullopt);
    try {
        secondary_fan(c);
        FAIL("expected NoOrigin");
    } catch (const Error& e) {
        CHECK(e.code() == "NoOrigin");
    }
}

TEST_CASE("fan faces") {
    auto x = fan_of("example-p2blowup3");
    auto ff = fan_faces(x);
    std::size_t maximal = 0;
    for (const auto& c : ff.cones) maximal += c.dim == x.rank();
    CHECK(maximal == x.chambers.size());
    for (std::size_t c = 0; c < ff.cones.size(); ++c) {
        auto p = ff.relative_interior_point(c);
        CHECK(cone_dimension(x, p) == ff.cones[c].dim);
        for (auto f : ff.facets_of(c)) CHECK(ff.cones[f].dim + 1 == ff.cones[c].dim);
    }
}

}

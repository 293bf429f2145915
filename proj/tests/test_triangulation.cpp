#include "oracles.hpp"

#include "wallcross/errors.hpp"
#include "wallcross/lattice.hpp"
#include "wallcross/secondary_fan.hpp"
#include "wallcross/workbench.hpp"

#include <doctest.h>

using namespace wc;

namespace {

PointConfiguration plane(const std::vector<IntVec>& pts, std::optional<std::size_t> origin = std::nullopt) {
    return make_configuration(pts, origin);
}

std::vector<oracle::P2> p2_of(const PointConfiguration& c) {
    std::vector<oracle::P2> out;
    for (const auto& p : c.points) out.emplace_back(p[0].get_si(), p[1].get_si());
    return out;
}

std::vector<oracle::Tri> tris_of(const Triangulation& t) {
    std::vector<oracle::Tri> out;
    for (const auto& s : t.simplices) out.push_back({s[0], s[1], s[2]});
    std::sort(out.begin(), out.end());
    return out;
}

std::set<std::vector<oracle::Tri>> brute_regular(const PointConfiguration& c) {
    auto pts = p2_of(c);
    std::set<std::vector<oracle::Tri>> out;
    for (auto t : oracle::all_triangulations(pts)) {
        std::sort(t.begin(), t.end());
        if (oracle::strict_feasible(oracle::convexity_rows(pts, t))) out.insert(t);
    }
    return out;
}

std::set<std::vector<oracle::Tri>> engine_regular(const PointConfiguration& c, unsigned jobs = 1) {
    std::set<std::vector<oracle::Tri>> out;
    for (const auto& t : regular_triangulations(c, {}, jobs)) out.insert(tris_of(t));
    return out;
}

PointConfiguration fixture_config(const std::string& name, std::map<std::string, std::string> params = {}) {
    return configuration_of(parse_input(*builtin_fixture(name), params));
}

std::size_t rank_of_points(const PointConfiguration& c, const std::vector<std::size_t>& s) {
    std::vector<std::vector<Int>> m;
    for (auto i : s) m.push_back(c.homogeneous(i));
    return oracle::invariant_factors(m).size();
}

}  // namespace

TEST_SUITE("triangulation") {

TEST_CASE("circuits of small configurations") {
    auto sq = plane({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    auto cs = circuits(sq);
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].signature() == std::pair<std::size_t, std::size_t>{2, 2});
    CHECK(cs[0].support == Cell{0, 1, 2, 3});

    auto line = make_configuration({{0}, {1}, {2}}, std::nullopt);
    auto cl = circuits(line);
    REQUIRE(cl.size() == 1);
    auto sig = cl[0].signature();
    CHECK(std::min(sig.first, sig.second) == 1);
    CHECK(std::max(sig.first, sig.second) == 2);
}

TEST_CASE("circuit count of the blown up plane matches exhaustion") {
    auto c = fixture_config("example-p2blowup3");
    std::size_t brute = 0;
    for (std::size_t k = 2; k <= 4; ++k)
        for (const auto& s : oracle::subsets(c.size(), k)) {
            if (rank_of_points(c, s) != k - 1) continue;
            bool minimal = true;
            for (std::size_t drop = 0; drop < k && minimal; ++drop) {
                std::vector<std::size_t> sub;
                for (std::size_t j = 0; j < k; ++j)
                    if (j != drop) sub.push_back(s[j]);
                minimal = rank_of_points(c, sub) == k - 1;
            }
            brute += minimal;
        }
    auto cs = circuits(c);
    CHECK(cs.size() == brute);
    for (const auto& ci : cs) {
        IntVec sum(3, 0);
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = 0; j < 3; ++j) sum[j] += ci.relation[i] * c.homogeneous(i)[j];
        CHECK(sum == IntVec{0, 0, 0});
        CHECK(gcd_of(ci.relation) == 1);
    }
}

TEST_CASE("regular subdivisions of the square") {
    auto sq = plane({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    auto flat = regular_subdivision(sq, {0, 0, 0, 0});
    REQUIRE(flat.cells.size() == 1);
    CHECK(flat.cells[0] == Cell{0, 1, 2, 3});
    auto cut = regular_subdivision(sq, {1, 0, 0, 1});
    CHECK(cut.is_triangulation(2));
    CHECK(cut.cells == std::vector<Cell>{{0, 1, 2}, {1, 2, 3}});
}

TEST_CASE("triangulation counts") {
    CHECK(regular_triangulations(plane({{0, 0}, {1, 0}, {0, 1}})).size() == 1);
    CHECK(regular_triangulations(plane({{0, 0}, {1, 0}, {0, 1}, {1, 1}})).size() == 2);
    CHECK(regular_triangulations(fixture_config("example-p2blowup3")).size() == 30);
}

TEST_CASE("flip graph enumeration equals brute force with an exact feasibility filter") {
    std::vector<PointConfiguration> cs = {
        plane({{0, 0}, {1, 0}, {0, 1}}),
        plane({{0, 0}, {1, 0}, {0, 1}, {1, 1}}),
        plane({{0, 0}, {2, 0}, {0, 2}, {1, 1}, {1, 0}, {0, 1}}),
        fixture_config("p2"),
        fixture_config("p11n"),
        fixture_config("example-p2blowup3"),
    };
    for (int n = 2; n <= 6; ++n) cs.push_back(fixture_config("hirzebruch", {{"n", std::to_string(n)}}));
    for (std::size_t k = 0; k < cs.size(); ++k) {
        CAPTURE(k);
        auto e = engine_regular(cs[k]);
        CHECK(e == brute_regular(cs[k]));
        CHECK(engine_regular(cs[k], 4) == e);
    }
}

TEST_CASE("certificates re-verify by the lower hull test") {
    for (auto name : {"p2", "example-p2blowup3", "hirzebruch"}) {
        auto c = fixture_config(name);
        auto pts = p2_of(c);
        for (const auto& t : regular_triangulations(c)) {
            REQUIRE(!t.weight_certificate.empty());
            CHECK(oracle::heights_induce(pts, tris_of(t), t.weight_certificate));
        }
    }
}

TEST_CASE("volume vectors") {
    auto tri = plane({{0, 0}, {1, 0}, {0, 1}});
    auto t = regular_triangulations(tri)[0];
    CHECK(t.volume_vector == IntVec{1, 1, 1});

    // heights in the chamber of T make phi_T the unique minimizer of <w, phi>
    auto c = fixture_config("example-p2blowup3");
    auto all = regular_triangulations(c);
    for (const auto& t : all) {
        const auto& w = t.weight_certificate;
        CHECK(regular_subdivision(c, w).cells == t.simplices);
        Rat best = dot(w, to_rat(t.volume_vector));
        for (const auto& u : all)
            if (!(u == t)) CHECK(dot(w, to_rat(u.volume_vector)) > best);
        Int sum = 0;
        for (const auto& x : t.volume_vector) sum += x;
        CHECK(sum == 3 * configuration_volume(c));
    }
}

TEST_CASE("origin coordinate along the path of the worked example") {
    auto c = fixture_config("example-p2blowup3");
    auto fan = secondary_fan(c);
    // the first two vertices of the e0-increasing path 0 -> 20 -> ...
    CHECK(fan.chambers[0].tri.volume_vector[6] == 0);
    CHECK(fan.chambers[20].tri.volume_vector[6] == 3);
    CHECK(fan.chambers[28].tri.volume_vector[6] == 6);
    CHECK(fan.chambers[29].tri.volume_vector[6] == 7);
}

TEST_CASE("flips") {
    auto sq = plane({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    auto ts = regular_triangulations(sq);
    auto cs = circuits(sq);
    REQUIRE(ts.size() == 2);
    CHECK(flip(sq, ts[0], cs[0]) == ts[1]);
    CHECK(flip(sq, ts[1], cs[0]) == ts[0]);

    auto c = fixture_config("example-p2blowup3");
    auto cc = circuits(c);
    std::size_t pairs = 0;
    for (const auto& t : regular_triangulations(c))
        for (const auto& ci : cc) {
            if (!flippable(t, ci)) continue;
            ++pairs;
            CHECK(flip(c, flip(c, t, ci), ci) == t);
        }
    CHECK(pairs > 0);
    auto fail = std::find_if(cc.begin(), cc.end(), [&](const Circuit& ci) { return !flippable(regular_triangulations(c)[0], ci); });
    REQUIRE(fail != cc.end());
    CHECK_THROWS_AS(flip(c, regular_triangulations(c)[0], *fail), Error);
}

TEST_CASE("path edges of the worked example are single flips") {
    auto c = fixture_config("example-p2blowup3");
    auto fan = secondary_fan(c);
    std::vector<std::size_t> path = {0, 20, 23, 24, 28, 29};
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const auto& w = fan.wall_between(path[i], path[i + 1]);
        const auto& ci = fan.circuits[w.circuit];
        CHECK(flip(c, fan.chambers[path[i]].tri, ci) == fan.chambers[path[i + 1]].tri);
    }
}

TEST_CASE("dual complexes") {
    auto tri = plane({{0, 0}, {1, 0}, {0, 1}});
    auto y = dual_complex(tri, regular_triangulations(tri)[0]);
    CHECK(y.count(0) == 1);
    CHECK(y.count(1) == 3);
    CHECK(y.count(1, true) == 0);

    auto sq = plane({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    for (const auto& t : regular_triangulations(sq)) {
        auto ys = dual_complex(sq, t);
        CHECK(ys.count(0) == 2);
        CHECK(ys.count(1, true) == 1);
        CHECK(ys.count(1, false) == 4);
    }

    // the last phase of the worked example: one vertex per triangle, one bounded
    // edge per interior edge, one ray per boundary edge
    auto c = fixture_config("example-p2blowup3");
    auto fan = secondary_fan(c);
    const auto& t5 = fan.chambers[29].tri;
    std::map<std::pair<int, int>, int> edge_use;
    for (const auto& s : t5.simplices)
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) ++edge_use[{s[i], s[j]}];
    std::size_t interior = 0, boundary = 0;
    for (auto& [e, k] : edge_use) (k == 2 ? interior : boundary)++;
    auto y5 = dual_complex(c, t5);
    CHECK(y5.count(0) == t5.simplices.size());
    CHECK(y5.count(1, true) == interior);
    CHECK(y5.count(1, false) == boundary);
}

TEST_CASE("stable complexes of two-dimensional circuits") {
    auto sq = plane({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    auto ts = regular_triangulations(sq);
    auto st = stable_complex(sq, ts[0], ts[1]);
    std::size_t edges = 0;
    for (const auto& c : st) edges += c.dim == 1 && c.bounded;
    CHECK(edges == 1);

    // (1,3) circuit: a point inside a triangle
    auto inner = plane({{0, 0}, {3, 0}, {0, 3}, {1, 1}});
    auto ti = regular_triangulations(inner);
    REQUIRE(ti.size() == 2);
    const auto& coarse = ti[0].simplices.size() == 1 ? ti[0] : ti[1];
    const auto& fine = ti[0].simplices.size() == 1 ? ti[1] : ti[0];
    auto si = stable_complex(inner, coarse, fine);
    std::size_t seg = 0, region = 0, vert = 0;
    for (const auto& c : si) {
        if (!c.bounded) continue;
        if (c.dim == 0) ++vert;
        if (c.dim == 1) ++seg;
        if (c.dim == 2) ++region;
    }
    CHECK(seg == 3);
    CHECK(region == 1);
    CHECK(vert == 3);
    CHECK_THROWS_AS(stable_complex(inner, coarse, coarse), Error);
}

TEST_CASE("configuration validation") {
    CHECK_THROWS_AS(make_configuration({{0, 0}, {0, 0}, {1, 0}}, std::nullopt), Error);
    CHECK_THROWS_AS(make_configuration({{0, 0}, {1, 0}, {2, 0}}, std::nullopt), Error);
    CHECK_THROWS_AS(make_configuration({{0, 0}, {1}, {0, 1}}, std::nullopt), Error);
}

TEST_CASE("enumeration size guard") {
    std::vector<IntVec> pts;
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) pts.push_back({x, y});
    try {
        regular_triangulations(plane(pts));
        FAIL("expected TooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == "TooLarge");
    }
}

}

#include "oracles.hpp"

#include "wallcross/errors.hpp"
#include "wallcross/lg_paths.hpp"
#include "wallcross/workbench.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace wc;

namespace {

SecondaryFan fan_of(const std::string& name, std::map<std::string, std::string> params = {}) {
    return secondary_fan(configuration_of(parse_input(*builtin_fixture(name), params)));
}

const MonotonePath& table_path(const std::vector<MonotonePath>& ps) {
    for (const auto& p : ps)
        if (p.vertices == std::vector<std::size_t>{0, 20, 23, 24, 28, 29}) return p;
    FAIL("path not found");
    return ps.front();
}

std::vector<std::size_t> upper_hull_path(const SecondaryFan& f, const RatVec& xi) {
    std::vector<IntVec> phis;
    for (const auto& c : f.chambers) phis.push_back(c.tri.volume_vector);
    return oracle::upper_hull_path(phis, f.origin(), xi);
}

std::set<std::vector<std::size_t>> vertex_sets(const std::vector<MonotonePath>& ps) {
    std::set<std::vector<std::size_t>> s;
    for (const auto& p : ps) s.insert(p.vertices);
    return s;
}

std::vector<std::size_t> positive_support(const IntVec& v) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] > 0) out.push_back(i);
    return out;
}

}  // namespace

TEST_SUITE("lg_paths") {

TEST_CASE("Hori-Vafa monomials") {
    for (int n = 1; n <= 5; ++n) {
        auto in = parse_input(*builtin_fixture("p11n"), {{"n", std::to_string(n)}});
        auto m = hori_vafa_monomials(configuration_of(in));
        std::set<IntVec> got(m.begin(), m.end());
        CHECK(got == std::set<IntVec>{{1, 0}, {0, 1}, {-n, -1}, {0, 0}});
        auto h = hori_vafa_monomials(configuration_of(parse_input(*builtin_fixture("hirzebruch"), {{"n", std::to_string(n)}})));
        std::set<IntVec> hg(h.begin(), h.end());
        CHECK(hg == std::set<IntVec>{{1, 0}, {0, 1}, {-1, 0}, {-n, -1}, {0, 0}});
    }
    CHECK(format_monomial({-3, -1}) == "x^-3*y^-1");
    CHECK(format_monomial({1, 0}) == "x");
    CHECK(format_monomial({0, 0}) == "1");
}

TEST_CASE("path counts") {
    auto x = fan_of("example-p2blowup3");
    auto ps = monotone_paths(x);
    CHECK(ps.size() == 24);
    std::size_t through = 0;
    for (const auto& p : ps) through += std::count(p.vertices.begin(), p.vertices.end(), 28);
    CHECK(through == 10);
    CHECK(vertex_sets(monotone_paths(x, 4)) == vertex_sets(ps));

    auto p2 = monotone_paths(fan_of("p2"));
    REQUIRE(p2.size() == 1);
    CHECK(p2[0].multiplicities == std::vector<Int>{3});
}

TEST_CASE("multiplicities of the table path") {
    auto x = fan_of("example-p2blowup3");
    auto ps = monotone_paths(x);
    const auto& p = table_path(ps);
    CHECK(p.multiplicities == std::vector<Int>{3, 1, 1, 1, 1});
    CHECK(multiplicities(x, p) == p.multiplicities);
}

TEST_CASE("paths are monotone and telescoping") {
    for (auto name : {"p2", "hirzebruch", "p11n", "example-p2blowup3"}) {
        auto f = fan_of(name);
        for (const auto& p : monotone_paths(f)) {
            Int sum = 0;
            for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
                CHECK(e0_of(f, p.vertices[i + 1]) > e0_of(f, p.vertices[i]));
                CHECK(p.multiplicities[i] > 0);
                sum += p.gcds[i] * p.multiplicities[i];
            }
            CHECK(e0_of(f, p.vertices.back()) - e0_of(f, p.vertices.front()) == sum);
            CHECK(certificate_selects(f, p, p.certificate));
        }
    }
}

TEST_CASE("certificates select their path under planar projection") {
    for (auto name : {"p2", "hirzebruch", "p11n", "example-p2blowup3"}) {
        auto f = fan_of(name);
        for (const auto& p : monotone_paths(f)) {
            CAPTURE(name);
            CHECK(upper_hull_path(f, p.certificate) == p.vertices);
        }
    }
}

TEST_CASE("random projections only produce enumerated paths") {
    for (auto name : {"hirzebruch", "p11n", "example-p2blowup3"}) {
        auto f = fan_of(name);
        auto engine = vertex_sets(monotone_paths(f));
        std::set<std::vector<std::size_t>> seen;
        std::mt19937 rng(5);
        std::uniform_int_distribution<int> d(-60, 60);
        for (int trial = 0; trial < 4000; ++trial) {
            RatVec xi(f.config.size());
            for (auto& v : xi) v = d(rng);
            auto h = upper_hull_path(f, xi);
            if (!h.empty()) seen.insert(h);
        }
        CAPTURE(name);
        for (const auto& s : seen) CHECK(engine.count(s) == 1);
        CHECK(seen == engine);
    }
}

TEST_CASE("a certificate for another path is rejected") {
    auto x = fan_of("example-p2blowup3");
    auto ps = monotone_paths(x);
    CHECK(!certificate_selects(x, ps[0], ps[1].certificate));
    CHECK(!certificate_selects(x, ps[1], ps[0].certificate));
    auto broken = ps[0];
    broken.vertices.pop_back();
    broken.edges.pop_back();
    CHECK(!certificate_selects(x, broken, ps[0].certificate));
}

TEST_CASE("radar screens") {
    auto x = fan_of("example-p2blowup3");
    auto ps = monotone_paths(x);
    auto rs = radar_screen(table_path(ps), x);
    REQUIRE(rs.annuli.size() == 5);
    std::vector<Int> regions;
    for (const auto& a : rs.annuli) {
        regions.push_back(a.a);
        CHECK(a.critical_per_region == 1);
        CHECK(!a.degenerate);
    }
    CHECK(regions == std::vector<Int>{3, 1, 1, 1, 1});
    CHECK(rs.total_critical() == 7);
    // every screen of the fan carries rank K0(X') critical values
    for (const auto& p : ps) CHECK(radar_screen(p, x).total_critical() == e0_of(x, p.vertices.back()) - e0_of(x, p.vertices.front()));

    auto p2 = fan_of("p2");
    auto r2 = radar_screen(monotone_paths(p2)[0], p2);
    REQUIRE(r2.annuli.size() == 1);
    CHECK(r2.total_critical() == 3);
}

TEST_CASE("degenerate circuits") {
    // F_2: the rays (0,1), (-2,-1) and the origin lie on one line
    auto f = fan_of("hirzebruch", {{"n", "2"}});
    std::size_t flagged = 0;
    for (const auto& w : f.walls) flagged += degenerate_edge(f, w.id);
    auto x = fan_of("example-p2blowup3");
    for (const auto& p : monotone_paths(x))
        for (const auto& a : radar_screen(p, x).annuli)
            if (a.degenerate) CHECK(a.critical_per_region == a.b_side_rank);
    CHECK(flagged >= 1);
}

TEST_CASE("paths match the runs they induce") {
    for (auto name : {"p2", "hirzebruch", "p11n", "example-p2blowup3"}) {
        auto f = fan_of(name);
        for (const auto& p : monotone_paths(f)) {
            auto r = run_of_path(f, p);
            CHECK(r.valid);
            auto m = match_path_to_run(f, p, r);
            CAPTURE(name);
            CHECK(m.ok);
            CHECK(!m.mismatch);
            CHECK(std::vector<std::size_t>(r.chambers.rbegin(), r.chambers.rend()) == p.vertices);
        }
    }
}

TEST_CASE("mismatches are reported") {
    auto x = fan_of("example-p2blowup3");
    auto ps = monotone_paths(x);
    const auto& p = table_path(ps);
    auto r = run_of_path(x, p);
    auto swapped = r;
    std::reverse(swapped.crossings.begin(), swapped.crossings.end());
    auto m = match_path_to_run(x, p, swapped);
    CHECK(!m.ok);
    REQUIRE(m.mismatch);
    CHECK(*m.mismatch == 0);

    auto shorter = r;
    shorter.crossings.pop_back();
    auto ms = match_path_to_run(x, p, shorter);
    CHECK(!ms.ok);
    CHECK(ms.reason.find("length") != std::string::npos);
}

TEST_CASE("stable complexes along the table path") {
    auto x = fan_of("example-p2blowup3");
    auto ps = monotone_paths(x);
    const auto& p = table_path(ps);
    auto r = run_of_path(x, p);
    std::size_t n = p.edges.size();
    std::optional<std::size_t> e4, e5;
    for (std::size_t i = 0; i < n; ++i) {
        auto pos = positive_support(r.crossings[n - 1 - i].wall.lambda);
        if (pos == std::vector<std::size_t>{4}) e4 = i;
        if (pos == std::vector<std::size_t>{5}) e5 = i;
    }
    REQUIRE(e4);
    REQUIRE(e5);

    auto last = path_stable_complexes(x, p);
    CHECK(last.target == n);
    CHECK(last.complexes.size() == n);
    CHECK(last.disjoint[*e4][*e5] == 1);
    CHECK(last.disjoint[*e5][*e4] == 1);
    // in the last phase the two cycles touch only in an isolated vertex
    CHECK(last.strictly_disjoint[*e4][*e5] == 0);

    auto in_x = path_stable_complexes(x, p, 4);
    CHECK(in_x.strictly_disjoint[*e4][*e5] == 1);

    // any common simplex of the pushed faces is a maximal one
    const auto& tt = x.chambers[p.vertices.back()].tri;
    for (const auto& a : last.pushed[*e4])
        for (const auto& b : last.pushed[*e5])
            if (!dual_cells_disjoint(tt, a, b)) {
                Cell u;
                std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
                CHECK(u.size() == 3);
            }

    CHECK_THROWS_AS(path_stable_complexes(x, p, 9), Error);
}

TEST_CASE("stable complexes of a single edge") {
    auto p2 = fan_of("p2");
    auto p = monotone_paths(p2)[0];
    auto sc = path_stable_complexes(p2, p);
    CHECK(sc.complexes.size() == 1);
    CHECK(sc.disjoint.size() == 1);
    CHECK(sc.persistent.size() == 1);
}

TEST_CASE("carriers") {
    auto x = fan_of("example-p2blowup3");
    const auto& t = x.chambers[29].tri;
    for (const auto& s : t.simplices) {
        auto c = carrier(x.config, t, s);
        REQUIRE(c);
        CHECK(*c == s);
    }
    // the origin is carried by itself in a fan-type triangulation
    auto o = carrier(x.config, t, {static_cast<int>(x.origin())});
    REQUIRE(o);
    CHECK(*o == Cell{static_cast<int>(x.origin())});
}

}

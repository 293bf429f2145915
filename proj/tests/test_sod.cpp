#include "wallcross/errors.hpp"
#include "wallcross/lg_paths.hpp"
#include "wallcross/sod.hpp"
#include "wallcross/workbench.hpp"

#include <doctest.h>

#include <algorithm>

using namespace wc;

namespace {

SecondaryFan fan_of(const std::string& name, std::map<std::string, std::string> params = {}) {
    return secondary_fan(configuration_of(parse_input(*builtin_fixture(name), params)));
}

MoriRun table_run(const SecondaryFan& f) {
    for (const auto& p : monotone_paths(f))
        if (p.vertices == std::vector<std::size_t>{0, 20, 23, 24, 28, 29}) return run_of_path(f, p);
    FAIL("path not found");
    return {};
}

std::size_t count_kind(const SOD& s, ComponentKind k) {
    return std::count_if(s.components.begin(), s.components.end(), [&](const SODComponent& c) { return c.kind == k; });
}

std::vector<std::string> labels(const SOD& s) {
    std::vector<std::string> out;
    for (const auto& c : s.components) out.push_back(c.label);
    return out;
}

WallData crossing_with_mu(const MoriRun& r, const IntVec& lambda) {
    for (const auto& c : r.crossings)
        if (c.wall.lambda == lambda) return c.wall;
    FAIL("no such crossing");
    return {};
}

}  // namespace

TEST_SUITE("sod") {

TEST_CASE("single wall decompositions") {
    auto x = fan_of("example-p2blowup3");
    auto t = table_run(x);
    auto l2 = crossing_with_mu(t, {0, -1, 0, -1, 0, 1});
    auto s2 = wall_sod(x, l2, -1);
    CHECK(count_kind(s2, ComponentKind::WallPiece) == 1);
    CHECK(count_kind(s2, ComponentKind::StackChamber) == 1);
    CHECK(s2.components.front().kind == ComponentKind::WallPiece);
    CHECK(k0_check(s2, x));

    auto l5 = crossing_with_mu(t, {-1, -1, -1, 0, 0, 0});
    auto s5 = wall_sod(x, l5, 0);
    CHECK(count_kind(s5, ComponentKind::WallPiece) == 3);
    for (const auto& c : s5.components) CHECK(c.rank == 1);
    CHECK(k0_check(s5, x));

    // mu = 0: an equivalence and no wall pieces
    bool found = false;
    for (const auto& w : x.walls) {
        auto wd = wall_data(x, w.id, w.a);
        if (wd.mu != 0 || !x.chambers[w.a].uses_origin) continue;
        auto s = wall_sod(x, wd, 0);
        CHECK(count_kind(s, ComponentKind::WallPiece) == 0);
        CHECK(count_kind(s, ComponentKind::Equivalence) == 1);
        found = true;
    }
    CHECK(found);
}

TEST_CASE("run decompositions of the worked example") {
    auto x = fan_of("example-p2blowup3");
    auto t = table_run(x);
    auto from_x = run_sod(x, restrict_run(t, 28), std::vector<Int>(4, Int(-1)));
    CHECK(from_x.components.size() == 6);
    CHECK(k0_check(from_x, x));
    CHECK(labels(from_x) ==
          std::vector<std::string>{"O(-2D_0)", "O(-D_0)", "O", "O_{D_3+D_4+D_5}", "O_{D_4}", "O_{D_5}"});
    // three line bundles, one connected exceptional divisor, two exceptional curves
    std::size_t bundles = 0, torsion = 0;
    for (const auto& l : labels(from_x)) (l.rfind("O_{", 0) == 0 ? torsion : bundles)++;
    CHECK(bundles == 3);
    CHECK(torsion == 3);

    auto from_xp = run_sod(x, t, std::vector<Int>(5, Int(-1)));
    CHECK(from_xp.components.size() == 7);
    CHECK(k0_check(from_xp, x));
    auto lp = labels(from_xp);
    CHECK(std::find(lp.begin(), lp.end(), "O_{D_4∩D_5}") != lp.end());
}

TEST_CASE("labels do not depend on d") {
    auto x = fan_of("example-p2blowup3");
    auto r = restrict_run(table_run(x), 28);
    auto base = labels(run_sod(x, r, std::vector<Int>(4, Int(0))));
    std::sort(base.begin(), base.end());
    for (int d = -3; d <= 3; ++d) {
        auto s = run_sod(x, r, std::vector<Int>(4, Int(d)));
        auto l = labels(s);
        std::sort(l.begin(), l.end());
        CHECK(l == base);
        for (const auto& c : s.components)
            if (c.kind == ComponentKind::WallPiece) {
                CHECK(c.normalized_twist <= 0);
                CHECK(c.normalized_twist > c.twist - 100);
            }
    }
}

TEST_CASE("projective plane") {
    auto p2 = fan_of("p2");
    auto r = straight_line_run(p2, {4}, {-3});
    auto s = run_sod(p2, r);
    CHECK(labels(s) == std::vector<std::string>{"O(-2)", "O(-1)", "O"});
    CHECK(k0_check(s, p2));
    auto objs = exceptional_collection(build_run_tree(p2, r, 1), p2);
    CHECK(objs.size() == 3);
}

TEST_CASE("weighted projective planes") {
    for (int n = 2; n <= 6; ++n) {
        auto f = fan_of("p11n", {{"n", std::to_string(n)}});
        auto s = find_nef_fano_start(f, 1);
        auto sod = run_sod(f, s.run);
        CHECK(sod.components.size() == static_cast<std::size_t>(n + 2));
        CHECK(k0_check(sod, f));
    }
}

TEST_CASE("a run with no walls") {
    auto x = fan_of("example-p2blowup3");
    MoriRun r;
    r.chambers = {28};
    auto s = run_sod(x, r);
    REQUIRE(s.components.size() == 1);
    CHECK(s.components[0].kind == ComponentKind::StackChamber);
    CHECK(k0_check(s, x));
}

TEST_CASE("invalid runs are rejected") {
    auto x = fan_of("example-p2blowup3");
    auto r = restrict_run(table_run(x), 28);
    r.valid = false;
    try {
        run_sod(x, r);
        FAIL("expected NotAMoriRun");
    } catch (const Error& e) {
        CHECK(e.code() == "NotAMoriRun");
    }
}

TEST_CASE("exceptional collections") {
    auto x = fan_of("example-p2blowup3");
    auto r = restrict_run(table_run(x), 28);
    auto objs = exceptional_collection(build_run_tree(x, r, 28), x);
    CHECK(objs.size() == 6);
    auto nef = find_nef_fano_start(x, 28);
    auto tree = build_run_tree(x, restrict_run(nef.run, 28), 28);
    CHECK(validate_mori_tree(tree, x).ok);
    // the default line crosses a wall with W = P^1, which is refined into two objects
    auto objs2 = exceptional_collection(tree, x);
    CHECK(objs2.size() == 6);

    auto h = fan_of("hirzebruch");
    auto hs = find_nef_fano_start(h, 2);
    auto hobjs = exceptional_collection(build_run_tree(h, hs.run, 2), h);
    CHECK(hobjs.size() == 4);

    auto z3 = expand_characters("E", 3);
    CHECK(z3.size() == 3);
    CHECK(std::set<std::string>(z3.begin(), z3.end()).size() == 3);
    CHECK(expand_characters("E", 1) == std::vector<std::string>{"E"});
}

}

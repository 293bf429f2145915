#include "wallcross/mori.hpp"

#include "wallcross/errors.hpp"
#include "wallcross/lp.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace wc {

namespace {

RatVec axpy(const RatVec& x, const Rat& s, const RatVec& d) {
    RatVec out(x);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += s * d[i];
    return out;
}

RatVec negated(const RatVec& v) {
    RatVec out(v);
    for (auto& x : out) x = -x;
    return out;
}

IntVec negated(const IntVec& v) {
    IntVec out(v);
    for (auto& x : out) x = -x;
    return out;
}

}  // namespace

Int star_volume(const std::vector<IntVec>& points, const RatVec& heights) {
    const std::size_t k = points.empty() ? 0 : points[0].size();
    std::map<IntVec, Rat> merged;
    Rat origin_height = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (is_zero(points[i])) {
            origin_height = std::min(origin_height, heights[i]);
            continue;
        }
        auto it = merged.find(points[i]);
        if (it == merged.end()) merged.emplace(points[i], heights[i]);
        else it->second = std::min(it->second, heights[i]);
    }
    std::vector<IntVec> pts;
    RatVec h;
    for (auto& [p, x] : merged) {
        pts.push_back(p);
        h.push_back(x);
    }
    pts.push_back(IntVec(k, Int(0)));
    h.push_back(origin_height);
    PointConfiguration c = make_configuration(pts, pts.size() - 1);
    const int o = static_cast<int>(pts.size() - 1);
    Int vol = 0;
    for (const auto& cell : regular_subdivision(c, h).cells) {
        if (!std::binary_search(cell.begin(), cell.end(), o)) continue;
        if (cell.size() == k + 1) {
            vol += simplex_volume(c, cell);
        } else {
            std::vector<IntVec> sub;
            for (int i : cell) sub.push_back(pts[i]);
            vol += configuration_volume(make_configuration(sub, std::nullopt));
        }
    }
    return vol;
}

WallData wall_data(const SecondaryFan& fan, std::size_t wall, std::size_t from) {
    const Wall& w = fan.walls.at(wall);
    if (from != w.a && from != w.b)
        fail_engine("NotIncident", "wall " + std::to_string(wall) + " does not bound chamber " +
                                       std::to_string(from));
    WallData wd;
    wd.wall_id = wall;
    wd.from = from;
    wd.to = from == w.a ? w.b : w.a;
    wd.lambda = from == w.a ? w.lambda : negated(w.lambda);
    wd.mu = 0;
    for (const auto& x : wd.lambda) wd.mu += x;

    const DivisorSequence& ds = fan.ds;
    const std::size_t r = ds.rank_G;
    SubProblem& sp = wd.sub;
    std::vector<std::size_t> zero_rays;
    for (std::size_t p = 0; p < fan.config.size(); ++p) {
        int ri = fan.ray_of_point[p];
        if (ri >= 0 && wd.lambda[ri] == 0) {
            sp.zero_points.push_back(static_cast<int>(p));
            zero_rays.push_back(ri);
        }
    }
    // lambda-perp inside G^
    RatVec cov = ds.covector(wd.lambda);
    IntMatrix row(1, r);
    IntVec ci = primitive_of_rational(cov);
    for (std::size_t j = 0; j < r; ++j) row(0, j) = ci[j];
    sp.lattice = integer_kernel(row);
    const std::size_t rl = sp.lattice.cols();
    RatMatrix Lr = to_rat(sp.lattice);
    sp.beta = IntMatrix(rl, zero_rays.size());
    for (std::size_t j = 0; j < zero_rays.size(); ++j) {
        auto y = rational_solve(Lr, to_rat(ds.beta[zero_rays[j]]));
        if (!y) fail_engine("WallData", "beta of a zero-weight ray is not in lambda-perp");
        for (std::size_t i = 0; i < rl; ++i) {
            if ((*y)[i].get_den() != 1) fail_engine("WallData", "lambda-perp is not saturated");
            sp.beta(i, j) = (*y)[i].get_num();
        }
    }
    // interior point of the wall
    LinearSystem sys;
    sys.nvars = r;
    for (auto& [wid, f] : fan.facets(from)) {
        if (wid == wall) sys.equal.push_back(f);
        else sys.strict.push_back(f);
    }
    auto alpha = strictly_feasible(sys);
    if (!alpha) fail_engine("WallData", "wall " + std::to_string(wall) + " has empty interior");
    sp.alpha = *alpha;
    RatVec alpha_l = *rational_solve(Lr, sp.alpha);

    if (zero_rays.empty()) {
        sp.torsion = 1;
        sp.dimension = 0;
        wd.w_rank_k0 = 1;
        return wd;
    }
    SmithForm snf = smith_normal_form(sp.beta);
    sp.torsion = 1;
    for (std::size_t i = 0; i < snf.rank; ++i) sp.torsion *= snf.D(i, i);
    IntMatrix ker = integer_kernel(sp.beta);
    sp.dimension = ker.cols();
    auto a = rational_solve(to_rat(sp.beta), alpha_l);
    if (!a) {
        // no semistable points on the fixed locus
        sp.empty = true;
        wd.w_rank_k0 = 0;
        return wd;
    }
    sp.heights = *a;
    if (sp.dimension == 0) {
        wd.w_rank_k0 = sp.torsion;
        return wd;
    }
    for (std::size_t i = 0; i < ker.rows(); ++i) sp.points.push_back(ker.row(i));
    wd.w_rank_k0 = sp.torsion * star_volume(sp.points, sp.heights);
    return wd;
}

Int rank_k0(const SecondaryFan& fan, const Chamber& c) {
    if (!c.uses_origin)
        fail_engine("NotFanType", "chamber " + std::to_string(c.id) + " does not use the origin");
    return c.tri.volume_vector[fan.origin()];
}

namespace {

struct LineCrossing {
    Rat t;
    std::size_t wall, from, to;
};

// Walks the line start + t*dir for t > 0 through every chamber until it stays
// in one forever. With stop_outside, stops on entering a chamber not using 0.
std::vector<LineCrossing> walk(const SecondaryFan& fan, std::size_t chamber, const RatVec& start,
                               const RatVec& dir, bool stop_outside, std::size_t& last) {
    std::vector<LineCrossing> out;
    std::size_t cur = chamber;
    for (;;) {
        if (stop_outside && !fan.chambers[cur].uses_origin) break;
        std::optional<Rat> best;
        std::vector<std::size_t> hits;
        for (auto& [w, f] : fan.facets(cur)) {
            Rat fd = dot(f, dir);
            if (fd >= 0) continue;
            Rat t = -dot(f, start) / fd;
            if (!best || t < *best) {
                best = t;
                hits = {w};
            } else if (t == *best) {
                hits.push_back(w);
            }
        }
        if (!best) break;
        if (hits.size() > 1)
            fail_engine("NonGenericPath", "line meets a cone of codimension >= 2 at t = " +
                                              best->get_str());
        const Wall& w = fan.walls[hits[0]];
        std::size_t next = w.a == cur ? w.b : w.a;
        out.push_back({*best, hits[0], cur, next});
        cur = next;
        if (out.size() > 4 * fan.chambers.size() + 4)
            fail_engine("NoExit", "line does not leave the fan");
    }
    last = cur;
    return out;
}

}  // namespace

MoriRun straight_line_run(const SecondaryFan& fan, const RatVec& start, const RatVec& direction) {
    if (is_zero(direction)) fail_validation("ZeroDirection", "run direction is zero");
    Location loc = locate_chamber(fan, start);
    if (loc.kind != CellKind::Chamber)
        fail_validation("StartNotInChamber", "run start lies on a cone of codimension " +
                                                 std::to_string(loc.codim));
    MoriRun run;
    run.start = start;
    run.direction = direction;
    std::size_t last = 0;
    auto cs = walk(fan, loc.chambers[0], start, direction, true, last);
    run.chambers.push_back(loc.chambers[0]);
    for (const auto& c : cs) {
        run.crossings.push_back({wall_data(fan, c.wall, c.from), c.t});
        run.chambers.push_back(c.to);
        if (run.crossings.back().wall.mu > 0) run.valid = false;
    }
    run.exited = !fan.chambers[last].uses_origin;
    if (!run.exited) fail_engine("NoExit", "run never leaves the chambers using the origin");
    return run;
}

MoriRun restrict_run(const MoriRun& run, std::size_t chamber) {
    auto it = std::find(run.chambers.begin(), run.chambers.end(), chamber);
    if (it == run.chambers.end())
        fail_engine("NotOnRun", "chamber " + std::to_string(chamber) + " is not visited");
    std::size_t k = static_cast<std::size_t>(it - run.chambers.begin());
    if (k == 0) return run;
    MoriRun out;
    Rat t0 = run.crossings[k - 1].t;
    Rat t1 = k < run.crossings.size() ? run.crossings[k].t : t0 + 2;
    Rat mid = (t0 + t1) / 2;
    out.start = axpy(run.start, mid, run.direction);
    out.direction = run.direction;
    out.chambers.assign(run.chambers.begin() + k, run.chambers.end());
    for (std::size_t i = k; i < run.crossings.size(); ++i) {
        Crossing c = run.crossings[i];
        c.t -= mid;
        out.crossings.push_back(c);
        if (c.wall.mu > 0) out.valid = false;
    }
    out.exited = run.exited;
    return out;
}

RatVec perturb(const RatVec& v, unsigned k) {
    RatVec out(v);
    for (std::size_t j = 0; j < out.size(); ++j) {
        Rat e(static_cast<long>((j * 7 + k * 3) % 11 + 1), 1009L * (k + 1));
        e.canonicalize();
        out[j] += e;
    }
    return out;
}

NefFanoStart find_nef_fano_start(const SecondaryFan& fan, std::size_t target) {
    const Chamber& tc = fan.chambers.at(target);
    if (!tc.uses_origin)
        fail_engine("NotFanType", "target chamber " + std::to_string(target) + " is not fan-type");
    RatVec mk = fan.anticanonical();
    RatVec K = negated(mk);
    for (unsigned attempt = 0; attempt < 24; ++attempt) {
        RatVec u = tc.interior;
        for (std::size_t j = 0; j < tc.rays.size() && attempt > 0; ++j) {
            Rat c((long)((attempt * (j + 3)) % 5), (long)(attempt + 1));
            c.canonicalize();
            for (std::size_t i = 0; i < u.size(); ++i) u[i] += c * Rat(tc.rays[j][i]);
        }
        // chamber containing -K + eps*u for small eps > 0
        std::optional<std::size_t> start_chamber;
        for (const auto& c : fan.chambers) {
            bool ok = true;
            for (auto& [w, f] : fan.facets(c.id)) {
                Rat a = dot(f, mk);
                if (a < 0 || (a == 0 && dot(f, u) <= 0)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                start_chamber = c.id;
                break;
            }
        }
        if (!start_chamber) continue;
        Rat T = 0;
        for (auto& [w, f] : fan.facets(*start_chamber)) {
            Rat a = dot(f, mk);
            if (a > 0) {
                Rat cand = -dot(f, u) / a;
                if (cand > T) T = cand;
            }
        }
        T += 1;
        RatVec start = axpy(u, T, mk);
        try {
            MoriRun run = straight_line_run(fan, start, K);
            if (run.chambers.front() != *start_chamber) continue;
            if (std::find(run.chambers.begin(), run.chambers.end(), target) == run.chambers.end())
                continue;
            if (!run.valid) continue;
            return {*start_chamber, std::move(run)};
        } catch (const Error& e) {
            if (e.code() != "NonGenericPath") throw;
        }
    }
    fail_engine("NoNefFanoRun", "no valid straight-line run from a chamber containing -K through " +
                                    std::to_string(target));
}

MoriTree build_run_tree(const SecondaryFan& fan, const MoriRun& run, std::size_t phase) {
    MoriTree tree;
    tree.phase = phase;
    const RatVec& s = run.start;
    const RatVec& d = run.direction;
    std::size_t c0 = run.chambers.front(), last = 0;
    auto fwd = walk(fan, c0, s, d, false, last);
    auto bwd = walk(fan, c0, s, negated(d), false, last);
    std::vector<LineCrossing> all;
    for (auto it = bwd.rbegin(); it != bwd.rend(); ++it)
        all.push_back({-it->t, it->wall, it->to, it->from});
    all.insert(all.end(), fwd.begin(), fwd.end());

    std::optional<std::size_t> exit_vertex;
    for (const auto& c : all) {
        tree.vertices.push_back({axpy(s, c.t, d), c.wall, c.from});
        tree.main_line.push_back(tree.vertices.size() - 1);
        if (!exit_vertex && c.t > 0 && fan.chambers[c.from].uses_origin &&
            !fan.chambers[c.to].uses_origin)
            exit_vertex = tree.vertices.size() - 1;
    }
    // main line edges
    if (all.empty()) {
        tree.edges.push_back({s, d, std::nullopt, std::nullopt, std::nullopt, std::nullopt, '+'});
    } else {
        tree.edges.push_back({s, d, std::nullopt, all.front().t, std::nullopt, tree.main_line.front(),
                              '+'});
        for (std::size_t i = 0; i + 1 < all.size(); ++i)
            tree.edges.push_back({s, d, all[i].t, all[i + 1].t, tree.main_line[i],
                                  tree.main_line[i + 1], '+'});
        tree.edges.push_back({s, d, all.back().t, std::nullopt, tree.main_line.back(), std::nullopt,
                              '+'});
    }
    if (!exit_vertex) return tree;

    // minus chain from the exit vertex down to the origin
    FanFaces ff = fan_faces(fan);
    const TreeVertex& q = tree.vertices[*exit_vertex];
    std::vector<std::size_t> wall_rays;
    {
        const Chamber& from = fan.chambers[*q.from];
        RatVec f;
        for (auto& [w, g] : fan.facets(from.id))
            if (w == *q.wall) f = g;
        std::map<IntVec, std::size_t> id;
        for (std::size_t i = 0; i < ff.rays.size(); ++i) id[ff.rays[i]] = i;
        for (const auto& r : from.rays)
            if (dot(f, to_rat(r)) == 0) wall_rays.push_back(id.at(r));
        std::sort(wall_rays.begin(), wall_rays.end());
    }
    if (wall_rays.empty()) return tree;  // the wall is the origin itself
    std::size_t cone = *ff.find(wall_rays);
    std::size_t prev_vertex = *exit_vertex;
    for (;;) {
        RatVec here = tree.vertices[prev_vertex].point;
        RatVec target;
        std::optional<std::size_t> next_cone;
        if (ff.cones[cone].dim == 1) {
            target = RatVec(fan.rank(), Rat(0));
        } else {
            next_cone = ff.facets_of(cone).front();
            target = ff.relative_interior_point(*next_cone);
        }
        tree.vertices.push_back({target, std::nullopt, std::nullopt});
        std::size_t v = tree.vertices.size() - 1;
        RatVec dir(here.size());
        for (std::size_t i = 0; i < dir.size(); ++i) dir[i] = target[i] - here[i];
        tree.edges.push_back({here, dir, Rat(0), Rat(1), prev_vertex, v, '-'});
        if (!next_cone) break;
        // plus ray off the chain into a neighbouring cone
        for (std::size_t g : ff.cofacets_of(*next_cone)) {
            if (g == cone) continue;
            tree.edges.push_back({target, ff.relative_interior_point(g), Rat(0), std::nullopt, v,
                                  std::nullopt, '+'});
            break;
        }
        cone = *next_cone;
        prev_vertex = v;
    }
    return tree;
}

namespace {

RatVec edge_point(const TreeEdge& e, const Rat& s) { return axpy(e.base, s, e.dir); }

}  // namespace

TreeVerdict validate_mori_tree(const MoriTree& tree, const SecondaryFan& fan) {
    auto fail = [](std::string msg) { return TreeVerdict{false, std::move(msg)}; };
    const std::size_t nv = tree.vertices.size();
    for (std::size_t i = 0; i < nv; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (tree.vertices[i].point == tree.vertices[j].point)
                return fail("vertices " + std::to_string(j) + " and " + std::to_string(i) +
                            " coincide");
    std::vector<std::vector<char>> out_marks(nv);
    for (const auto& e : tree.edges)
        if (e.tail) out_marks[*e.tail].push_back(e.mark);
    for (std::size_t v = 0; v < nv; ++v) {
        auto& m = out_marks[v];
        std::sort(m.begin(), m.end());
        if (m.size() > 2) return fail("vertex " + std::to_string(v) + " has more than 2 outgoing edges");
        if (m.size() == 2 && !(m[0] == '+' && m[1] == '-'))
            return fail("vertex " + std::to_string(v) + " has two outgoing edges not marked +,-");
        if (m.size() == 1 && m[0] != '+')
            return fail("vertex " + std::to_string(v) + " has a single outgoing edge marked -");
        if (m.empty() && !is_zero(tree.vertices[v].point))
            return fail("root " + std::to_string(v) + " is not mapped to 0");
    }
    std::vector<RatVec> forms;
    for (const auto& w : fan.walls) forms.push_back(w.covector);
    auto m_of = [&](const RatVec& p) { return cone_dimension(fan, p); };
    for (std::size_t ei = 0; ei < tree.edges.size(); ++ei) {
        const TreeEdge& e = tree.edges[ei];
        std::set<Rat> bps;
        for (const auto& f : forms) {
            Rat fd = dot(f, e.dir);
            if (fd == 0) continue;
            Rat s = -dot(f, e.base) / fd;
            if ((e.lo && s <= *e.lo) || (e.hi && s >= *e.hi)) continue;
            bps.insert(s);
        }
        std::vector<Rat> samples;
        if (bps.empty()) {
            if (e.lo && e.hi) samples.push_back((*e.lo + *e.hi) / 2);
            else if (e.lo) samples.push_back(*e.lo + 1);
            else if (e.hi) samples.push_back(*e.hi - 1);
            else samples.push_back(0);
        } else {
            std::vector<Rat> b(bps.begin(), bps.end());
            samples.push_back(e.lo ? Rat((*e.lo + b.front()) / 2) : Rat(b.front() - 1));
            for (std::size_t i = 0; i < b.size(); ++i) {
                samples.push_back(b[i]);
                if (i + 1 < b.size()) samples.push_back((b[i] + b[i + 1]) / 2);
            }
            samples.push_back(e.hi ? Rat((b.back() + *e.hi) / 2) : Rat(b.back() + 1));
        }
        std::size_t me = m_of(edge_point(e, samples[0]));
        for (const auto& s : samples)
            if (m_of(edge_point(e, s)) != me)
                return fail("m is not constant along edge " + std::to_string(ei));
        if (e.tail) {
            std::size_t mv = m_of(tree.vertices[*e.tail].point);
            if (e.mark == '-' && me != mv)
                return fail("minus edge " + std::to_string(ei) + " changes m at its incoming vertex");
            if (e.mark == '+' && me != mv + 1)
                return fail("plus edge " + std::to_string(ei) + " is not one above its incoming vertex");
        }
        if (e.head && me != m_of(tree.vertices[*e.head].point) + 1)
            return fail("edge " + std::to_string(ei) + " is not one above its outgoing vertex");
    }
    for (std::size_t v : tree.main_line) {
        const TreeVertex& tv = tree.vertices[v];
        if (!tv.wall || !fan.chambers[*tv.from].uses_origin) continue;
        if (wall_data(fan, *tv.wall, *tv.from).mu > 0)
            return fail("main line crosses wall " + std::to_string(*tv.wall) + " with mu > 0");
    }
    return {};
}

}  // namespace wc

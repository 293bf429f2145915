#include "wallcross/lg_paths.hpp"

#include "wallcross/combinatorics.hpp"
#include "wallcross/errors.hpp"
#include "wallcross/lp.hpp"
#include "wallcross/parallel.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace wc {

std::vector<IntVec> hori_vafa_monomials(const PointConfiguration& config) {
    return config.points;
}

std::string format_monomial(const IntVec& e) {
    static const char* names[] = {"x", "y", "z", "w", "u", "v"};
    std::ostringstream os;
    bool any = false;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (any) os << "*";
        if (i < 6) os << names[i];
        else os << "x" << i;
        if (e[i] != 1) os << "^" << e[i].get_str();
        any = true;
    }
    if (!any) os << "1";
    return os.str();
}

Int e0_of(const SecondaryFan& fan, std::size_t chamber) {
    return fan.chambers[chamber].tri.volume_vector[fan.origin()];
}

IntVec edge_vector(const SecondaryFan& fan, std::size_t from, std::size_t to) {
    const IntVec& a = fan.chambers[from].tri.volume_vector;
    const IntVec& b = fan.chambers[to].tri.volume_vector;
    IntVec d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = b[i] - a[i];
    return d;
}

namespace {

struct Step {
    std::size_t wall, to;
};

std::vector<Step> steps(const SecondaryFan& fan, std::size_t v) {
    std::vector<Step> out;
    for (std::size_t w : fan.chambers[v].walls) {
        const Wall& wl = fan.walls[w];
        out.push_back({w, wl.a == v ? wl.b : wl.a});
    }
    return out;
}

// Strict rows xi.r > 0 selecting the prefix `verts`.
std::vector<RatVec> selection_rows(const SecondaryFan& fan, const std::vector<std::size_t>& verts) {
    const std::size_t o = fan.origin();
    std::vector<RatVec> rows;
    for (const auto& s : steps(fan, verts.front())) {
        IntVec d = edge_vector(fan, verts.front(), s.to);
        if (d[o] != 0) continue;
        RatVec r(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) r[i] = Rat(-d[i]);
        rows.push_back(std::move(r));
    }
    for (std::size_t k = 0; k + 1 < verts.size(); ++k) {
        std::size_t v = verts[k], c = verts[k + 1];
        IntVec dc = edge_vector(fan, v, c);
        for (const auto& s : steps(fan, v)) {
            if (s.to == c) continue;
            IntVec dj = edge_vector(fan, v, s.to);
            if (dj[o] <= 0) continue;
            RatVec r(dc.size());
            for (std::size_t i = 0; i < r.size(); ++i) r[i] = Rat(dc[i] * dj[o] - dj[i] * dc[o]);
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

bool improving(const SecondaryFan& fan, std::size_t v, std::size_t to) {
    return e0_of(fan, to) > e0_of(fan, v);
}

bool is_terminal(const SecondaryFan& fan, std::size_t v) {
    for (const auto& s : steps(fan, v))
        if (improving(fan, v, s.to)) return false;
    return true;
}

std::optional<RatVec> solve_rows(std::size_t n, std::vector<RatVec> rows) {
    LinearSystem sys;
    sys.nvars = n;
    sys.strict = std::move(rows);
    return strictly_feasible(sys);
}

void extend(const SecondaryFan& fan, MonotonePath& cur, std::vector<MonotonePath>& out) {
    std::size_t v = cur.vertices.back();
    if (is_terminal(fan, v)) {
        auto xi = solve_rows(fan.config.size(), selection_rows(fan, cur.vertices));
        if (!xi) return;
        MonotonePath p = cur;
        p.certificate = *xi;
        out.push_back(std::move(p));
        return;
    }
    for (const auto& s : steps(fan, v)) {
        if (!improving(fan, v, s.to)) continue;
        cur.vertices.push_back(s.to);
        cur.edges.push_back(s.wall);
        if (solve_rows(fan.config.size(), selection_rows(fan, cur.vertices)))
            extend(fan, cur, out);
        cur.vertices.pop_back();
        cur.edges.pop_back();
    }
}

RatVec scaled_sum(const RatVec& a, const Rat& t, const RatVec& b) {
    RatVec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += t * b[i];
    return r;
}

}  // namespace

std::vector<MonotonePath> monotone_paths(const SecondaryFan& fan, unsigned jobs) {
    if (fan.chambers.empty()) return {};
    Int lo = e0_of(fan, 0);
    for (const auto& c : fan.chambers) lo = std::min(lo, e0_of(fan, c.id));
    std::vector<std::size_t> starts;
    for (const auto& c : fan.chambers)
        if (e0_of(fan, c.id) == lo) starts.push_back(c.id);
    std::vector<std::vector<MonotonePath>> found(starts.size());
    parallel_for(starts.size(), jobs, [&](std::size_t k) {
        MonotonePath cur;
        cur.vertices.push_back(starts[k]);
        if (solve_rows(fan.config.size(), selection_rows(fan, cur.vertices)))
            extend(fan, cur, found[k]);
    });
    std::vector<MonotonePath> out;
    for (auto& f : found)
        for (auto& p : f) {
            auto m = multiplicities(fan, p);
            p.multiplicities = m;
            p.gcds.clear();
            for (std::size_t i = 0; i < p.edges.size(); ++i)
                p.gcds.push_back(gcd_of(edge_vector(fan, p.vertices[i], p.vertices[i + 1])));
            out.push_back(std::move(p));
        }
    std::sort(out.begin(), out.end(),
              [](const MonotonePath& a, const MonotonePath& b) { return a.vertices < b.vertices; });
    return out;
}

bool certificate_selects(const SecondaryFan& fan, const MonotonePath& path, const RatVec& xi) {
    if (path.vertices.empty() || xi.size() != fan.config.size()) return false;
    if (path.edges.size() + 1 != path.vertices.size()) return false;
    for (std::size_t k = 0; k < path.edges.size(); ++k) {
        const Wall& w = fan.walls.at(path.edges[k]);
        std::size_t v = path.vertices[k], c = path.vertices[k + 1];
        if (!((w.a == v && w.b == c) || (w.a == c && w.b == v))) return false;
        if (!improving(fan, v, c)) return false;
    }
    if (!is_terminal(fan, path.vertices.back())) return false;
    for (const auto& r : selection_rows(fan, path.vertices))
        if (dot(r, xi) <= 0) return false;
    return true;
}

std::vector<Int> multiplicities(const SecondaryFan& fan, const MonotonePath& path) {
    std::vector<Int> a;
    for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
        IntVec d = edge_vector(fan, path.vertices[i], path.vertices[i + 1]);
        Int g = gcd_of(d);
        a.push_back(g == 0 ? Int(0) : Int(d[fan.origin()] / g));
    }
    return a;
}

bool degenerate_edge(const SecondaryFan& fan, std::size_t wall) {
    const Wall& w = fan.walls.at(wall);
    if (gcd_of(edge_vector(fan, w.a, w.b)) > 1) return true;
    const Circuit& c = fan.circuits.at(w.circuit);
    IntMatrix m(c.support.size(), fan.config.dim + 1);
    for (std::size_t i = 0; i < c.support.size(); ++i) {
        IntVec h = fan.config.homogeneous(c.support[i]);
        for (std::size_t j = 0; j < h.size(); ++j) m(i, j) = h[j];
    }
    return rank_of(m) < fan.config.dim + 1 && c.support.size() < fan.config.dim + 2;
}

Int RadarScreen::total_critical() const {
    Int t = 0;
    for (const auto& a : annuli) t += a.a * a.critical_per_region;
    return t;
}

RadarScreen radar_screen(const MonotonePath& path, const SecondaryFan& fan) {
    RadarScreen rs;
    auto a = multiplicities(fan, path);
    for (std::size_t i = 0; i < path.edges.size(); ++i) {
        if (a[i] == 0) continue;
        Annulus an;
        an.edge = i;
        an.wall = path.edges[i];
        an.a = a[i];
        an.degenerate = degenerate_edge(fan, an.wall);
        // the fixed locus seen from the larger-e0 side, as a run meets it
        an.b_side_rank = wall_data(fan, an.wall, path.vertices[i + 1]).w_rank_k0;
        an.critical_per_region = an.degenerate ? an.b_side_rank : Int(1);
        rs.annuli.push_back(an);
    }
    return rs;
}

MoriRun run_of_path(const SecondaryFan& fan, const MonotonePath& path, std::optional<unsigned> perturbation) {
    RatVec minus_xi(path.certificate.size());
    for (std::size_t i = 0; i < minus_xi.size(); ++i) minus_xi[i] = -path.certificate[i];
    RatVec u = fan.project(minus_xi);
    RatVec mk = fan.anticanonical();
    RatVec K(mk.size());
    for (std::size_t i = 0; i < K.size(); ++i) K[i] = -mk[i];
    Rat T = 0;
    for (auto& [w, f] : fan.facets(path.vertices.back())) {
        Rat a = dot(f, mk);
        if (a > 0) {
            Rat cand = -dot(f, u) / a;
            if (cand > T) T = cand;
        }
    }
    T += 1;
    RatVec start = scaled_sum(u, T, mk);
    if (perturbation) start = perturb(start, *perturbation);
    return straight_line_run(fan, start, K);
}

MatchReport match_path_to_run(const SecondaryFan& fan, const MonotonePath& path, const MoriRun& run) {
    MatchReport rep;
    std::size_t n = path.edges.size();
    if (run.crossings.size() != n) {
        rep.reason = "length mismatch: path has " + std::to_string(n) + " edges, run crosses " +
                     std::to_string(run.crossings.size()) + " walls";
        rep.mismatch = 0;
        return rep;
    }
    auto a = multiplicities(fan, path);
    rep.ok = true;
    for (std::size_t i = 0; i < n; ++i) {
        const WallData& wd = run.crossings[n - 1 - i].wall;
        MatchEntry e;
        e.index = i;
        e.a = a[i];
        e.minus_mu = -wd.mu;
        e.w_rank = wd.w_rank_k0;
        bool degenerate = degenerate_edge(fan, path.edges[i]);
        e.critical_per_region = degenerate ? wd.w_rank_k0 : Int(1);
        const Circuit& cp = fan.circuits.at(fan.walls.at(path.edges[i]).circuit);
        const Circuit& cr = fan.circuits.at(fan.walls.at(wd.wall_id).circuit);
        e.support_equal = cp.support == cr.support;
        e.ok = e.support_equal && e.a * e.critical_per_region == e.minus_mu * e.w_rank;
        if (!e.ok && rep.ok) {
            rep.ok = false;
            rep.mismatch = i;
            rep.reason = e.support_equal ? "multiplicity differs at edge " + std::to_string(i)
                                         : "circuit support differs at edge " + std::to_string(i);
        }
        rep.entries.push_back(e);
    }
    return rep;
}

bool dual_cells_disjoint(const Triangulation& t, const Cell& f1, const Cell& f2) {
    Cell u = set_union(f1, f2);
    for (const auto& s : t.simplices)
        if (is_subset(u, s)) return false;
    return true;
}

std::optional<Cell> carrier(const PointConfiguration& config, const Triangulation& t, const Cell& f) {
    for (const auto& simplex : t.simplices) {
        RatMatrix m(config.dim + 1, simplex.size());
        for (std::size_t j = 0; j < simplex.size(); ++j) {
            IntVec h = config.homogeneous(simplex[j]);
            for (std::size_t i = 0; i < h.size(); ++i) m(i, j) = h[i];
        }
        std::set<int> support;
        bool inside = true;
        for (int p : f) {
            auto b = rational_solve(m, to_rat(config.homogeneous(p)));
            if (!b) {
                inside = false;
                break;
            }
            for (std::size_t j = 0; j < simplex.size() && inside; ++j) {
                if ((*b)[j] < 0) inside = false;
                else if ((*b)[j] > 0) support.insert(simplex[j]);
            }
            if (!inside) break;
        }
        if (inside) return Cell(support.begin(), support.end());
    }
    return std::nullopt;
}

PathStableComplexes path_stable_complexes(const SecondaryFan& fan, const MonotonePath& path,
                                          std::optional<std::size_t> target) {
    PathStableComplexes out;
    out.target = target.value_or(path.vertices.size() - 1);
    if (out.target >= path.vertices.size())
        fail_validation("BadTarget", "target index outside the path");
    const Triangulation& tt = fan.chambers[path.vertices[out.target]].tri;
    std::set<Cell> present;
    for (const auto& f : faces_of(tt)) present.insert(f);
    for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
        out.complexes.push_back(stable_complex(fan.config, fan.chambers[path.vertices[i]].tri,
                                               fan.chambers[path.vertices[i + 1]].tri));
        bool p = true;
        std::set<Cell> moved;
        bool pushable = true;
        for (const auto& c : out.complexes.back()) {
            if (!c.bounded) continue;
            p = p && (c.face.size() == 1 ? tt.uses(c.face[0]) : present.count(c.face) > 0);
            auto cf = carrier(fan.config, tt, c.face);
            if (!cf) pushable = false;
            else moved.insert(*cf);
        }
        out.persistent.push_back(p);
        out.pushed.push_back(pushable ? std::vector<Cell>(moved.begin(), moved.end()) : std::vector<Cell>{});
    }
    const std::size_t n = out.complexes.size();
    const std::size_t top = fan.config.dim + 1;
    out.disjoint.assign(n, std::vector<int>(n, -1));
    out.strictly_disjoint = out.disjoint;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (out.pushed[i].empty() || out.pushed[j].empty()) continue;
            bool dis = true, strict = true;
            for (const auto& x : out.pushed[i])
                for (const auto& y : out.pushed[j]) {
                    if (dual_cells_disjoint(tt, x, y)) continue;
                    strict = false;
                    if (set_union(x, y).size() < top) dis = false;
                }
            out.disjoint[i][j] = dis ? 1 : 0;
            out.strictly_disjoint[i][j] = strict ? 1 : 0;
        }
    return out;
}

}  // namespace wc

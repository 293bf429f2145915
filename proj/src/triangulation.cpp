#include "wallcross/triangulation.hpp"

#include "wallcross/combinatorics.hpp"
#include "wallcross/errors.hpp"
#include "wallcross/lattice.hpp"
#include "wallcross/lp.hpp"
#include "wallcross/parallel.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace wc {

IntVec PointConfiguration::homogeneous(std::size_t i) const {
    IntVec v(points[i]);
    v.push_back(1);
    return v;
}

bool PointConfiguration::on_boundary(const Cell& face) const {
    for (const auto& f : hull) {
        bool all = true;
        for (int i : face) {
            IntVec h = homogeneous(i);
            if (dot(f, h) != 0) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

namespace {

IntMatrix homogeneous_cols(const PointConfiguration& c, const Cell& pts) {
    IntMatrix m(c.dim + 1, pts.size());
    for (std::size_t j = 0; j < pts.size(); ++j) {
        for (std::size_t i = 0; i < c.dim; ++i) m(i, j) = c.points[pts[j]][i];
        m(c.dim, j) = 1;
    }
    return m;
}

// Barycentric coordinates of point p with respect to the simplex s.
RatVec barycentric(const PointConfiguration& c, const Cell& s, std::size_t p) {
    auto sol = rational_solve(to_rat(homogeneous_cols(c, s)), to_rat(c.homogeneous(p)));
    return *sol;
}

void compute_hull(PointConfiguration& c) {
    std::set<IntVec> facets;
    for_each_subset(c.size(), c.dim, [&](const std::vector<int>& s) {
        IntMatrix m = homogeneous_cols(c, s).transpose();  // dim x (dim+1)
        if (rank_of(m) != c.dim) return true;
        IntMatrix k = integer_kernel(m);
        IntVec f = primitive(k.col(0));
        int sign = 0;
        bool ok = true;
        for (std::size_t p = 0; p < c.size() && ok; ++p) {
            Int v = dot(f, c.homogeneous(p));
            int sg = sgn(v);
            if (sg == 0) continue;
            if (sign == 0) sign = sg;
            else if (sg != sign) ok = false;
        }
        if (ok) {
            if (sign < 0)
                for (auto& x : f) x = -x;
            facets.insert(f);
        }
        return true;
    });
    c.hull.assign(facets.begin(), facets.end());
}

}  // namespace

PointConfiguration make_configuration(const std::vector<IntVec>& points,
                                      std::optional<std::size_t> origin) {
    PointConfiguration c;
    if (points.empty()) fail_validation("NotFullDimensional", "empty point configuration");
    c.dim = points[0].size();
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != c.dim)
            fail_validation("DimensionMismatch", "point " + std::to_string(i) + " has wrong length");
        for (std::size_t j = 0; j < i; ++j)
            if (points[i] == points[j])
                fail_validation("DuplicatePoint", "points " + std::to_string(j) + " and " +
                                                      std::to_string(i) + " coincide");
    }
    c.points = points;
    if (origin) {
        if (*origin >= points.size() || !is_zero(points[*origin]))
            fail_validation("BadOrigin", "marked origin is not the zero point");
        c.origin = origin;
    }
    Cell all(points.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    if (rank_of(homogeneous_cols(c, all)) != c.dim + 1)
        fail_validation("NotFullDimensional", "points do not span the lattice affinely");
    compute_hull(c);
    return c;
}

PointConfiguration configuration_from_rays(const std::vector<IntVec>& rays) {
    std::vector<IntVec> pts(rays);
    if (rays.empty()) fail_validation("EmptyFan", "no rays given");
    pts.push_back(IntVec(rays[0].size(), Int(0)));
    return make_configuration(pts, pts.size() - 1);
}

std::vector<Cell> Circuit::side(bool plus) const {
    std::vector<Cell> out;
    for (int z : (plus ? positive : negative)) {
        Cell c;
        for (int x : support)
            if (x != z) c.push_back(x);
        out.push_back(c);
    }
    return out;
}

std::optional<IntVec> affine_relation(const PointConfiguration& config, const Cell& pts) {
    IntMatrix m = homogeneous_cols(config, pts);
    IntMatrix k = integer_kernel(m);
    if (k.cols() != 1) return std::nullopt;
    IntVec r(config.size(), Int(0));
    for (std::size_t j = 0; j < pts.size(); ++j) r[pts[j]] = k(j, 0);
    for (const auto& x : r) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : r) y = -y;
        break;
    }
    return r;
}

std::vector<Circuit> circuits(const PointConfiguration& config) {
    std::vector<Circuit> out;
    for (std::size_t k = 2; k <= config.dim + 2; ++k) {
        for_each_subset(config.size(), k, [&](const std::vector<int>& s) {
            auto rel = affine_relation(config, s);
            if (!rel) return true;
            for (int i : s)
                if ((*rel)[i] == 0) return true;
            Circuit c;
            c.support = s;
            c.relation = *rel;
            for (int i : s) ((*rel)[i] > 0 ? c.positive : c.negative).push_back(i);
            for (std::size_t p = 0; p < config.size(); ++p) {
                if (std::find(s.begin(), s.end(), static_cast<int>(p)) != s.end()) continue;
                for (const auto& cell : c.side(true)) {
                    auto b = rational_solve(to_rat(homogeneous_cols(config, cell)),
                                            to_rat(config.homogeneous(p)));
                    if (!b) continue;
                    bool inside = true;
                    for (const auto& x : *b)
                        if (x < 0) inside = false;
                    if (inside) {
                        c.interior.push_back(static_cast<int>(p));
                        break;
                    }
                }
            }
            out.push_back(std::move(c));
            return true;
        });
    }
    return out;
}

bool Subdivision::is_triangulation(std::size_t dim) const {
    for (const auto& c : cells)
        if (c.size() != dim + 1) return false;
    return true;
}

bool Triangulation::uses(std::size_t i) const {
    return std::binary_search(used_points.begin(), used_points.end(), static_cast<int>(i));
}

Int simplex_volume(const PointConfiguration& config, const Cell& s) {
    return abs_det(homogeneous_cols(config, s));
}

Subdivision regular_subdivision(const PointConfiguration& config, const RatVec& heights) {
    std::set<Cell> cells;
    for_each_subset(config.size(), config.dim + 1, [&](const std::vector<int>& s) {
        IntMatrix m = homogeneous_cols(config, s);
        if (abs_det(m) == 0) return true;
        // affine f with f(s_j) = h_{s_j}: solve m^T coef = h
        RatVec rhs(s.size());
        for (std::size_t j = 0; j < s.size(); ++j) rhs[j] = heights[s[j]];
        RatVec coef = *rational_solve(to_rat(m.transpose()), rhs);
        Cell cell;
        for (std::size_t p = 0; p < config.size(); ++p) {
            Rat f = dot(coef, to_rat(config.homogeneous(p)));
            if (heights[p] < f) return true;
            if (heights[p] == f) cell.push_back(static_cast<int>(p));
        }
        cells.insert(cell);
        return true;
    });
    Subdivision sd;
    sd.cells.assign(cells.begin(), cells.end());
    return sd;
}

IntVec volume_vector(const PointConfiguration& config, const std::vector<Cell>& simplices) {
    IntVec phi(config.size(), Int(0));
    for (const auto& s : simplices) {
        Int v = simplex_volume(config, s);
        for (int i : s) phi[i] += v;
    }
    return phi;
}

Triangulation make_triangulation(const PointConfiguration& config, std::vector<Cell> simplices) {
    for (auto& s : simplices) std::sort(s.begin(), s.end());
    std::sort(simplices.begin(), simplices.end());
    Triangulation t;
    t.simplices = std::move(simplices);
    std::set<int> used;
    for (const auto& s : t.simplices) used.insert(s.begin(), s.end());
    t.used_points.assign(used.begin(), used.end());
    t.volume_vector = volume_vector(config, t.simplices);
    return t;
}

namespace {

std::optional<Triangulation> seed_triangulation(const PointConfiguration& config) {
    for (unsigned base = 2; base < 64; ++base) {
        RatVec h(config.size());
        Int p = 1;
        for (std::size_t i = 0; i < config.size(); ++i) {
            h[i] = Rat(p);
            p *= base;
        }
        Subdivision sd = regular_subdivision(config, h);
        if (sd.is_triangulation(config.dim)) {
            Triangulation t = make_triangulation(config, sd.cells);
            t.weight_certificate = h;
            return t;
        }
    }
    return std::nullopt;
}

}  // namespace

Int configuration_volume(const PointConfiguration& config) {
    auto t = seed_triangulation(config);
    if (!t) fail_engine("NoSeed", "could not find a generic lift");
    Int v = 0;
    for (const auto& s : t->simplices) v += simplex_volume(config, s);
    return v;
}

std::vector<IntVec> chamber_constraints(const PointConfiguration& config, const Triangulation& t) {
    std::set<IntVec> rows;
    for (const auto& s : t.simplices) {
        for (std::size_t p = 0; p < config.size(); ++p) {
            if (std::binary_search(s.begin(), s.end(), static_cast<int>(p))) continue;
            RatVec b = barycentric(config, s, p);
            RatVec r(config.size(), Rat(0));
            r[p] = 1;
            for (std::size_t j = 0; j < s.size(); ++j) r[s[j]] -= b[j];
            rows.insert(primitive_of_rational(r));
        }
    }
    return {rows.begin(), rows.end()};
}

std::optional<RatVec> regularity_certificate(const PointConfiguration& config,
                                             const Triangulation& t) {
    LinearSystem sys;
    sys.nvars = config.size();
    for (const auto& r : chamber_constraints(config, t)) sys.strict.push_back(to_rat(r));
    return strictly_feasible(sys);
}

bool flippable(const Triangulation& t, const Circuit& c) {
    for (bool plus : {true, false}) {
        std::vector<Cell> cells = c.side(plus);
        std::optional<std::vector<Cell>> link0;
        bool ok = true;
        for (const auto& sigma : cells) {
            std::vector<Cell> link;
            for (const auto& s : t.simplices)
                if (is_subset(sigma, s)) link.push_back(set_minus(s, sigma));
            std::sort(link.begin(), link.end());
            if (link.empty() || (link0 && *link0 != link)) {
                ok = false;
                break;
            }
            link0 = link;
        }
        if (ok) return true;
    }
    return false;
}

Triangulation flip(const PointConfiguration& config, const Triangulation& t, const Circuit& c) {
    for (bool plus : {true, false}) {
        std::vector<Cell> cells = c.side(plus);
        std::optional<std::vector<Cell>> link0;
        bool ok = true;
        for (const auto& sigma : cells) {
            std::vector<Cell> link;
            for (const auto& s : t.simplices)
                if (is_subset(sigma, s)) link.push_back(set_minus(s, sigma));
            std::sort(link.begin(), link.end());
            if (link.empty() || (link0 && *link0 != link)) {
                ok = false;
                break;
            }
            link0 = link;
        }
        if (!ok) continue;
        std::set<Cell> removed;
        for (const auto& sigma : cells)
            for (const auto& l : *link0) removed.insert(set_union(sigma, l));
        std::vector<Cell> out;
        for (const auto& s : t.simplices)
            if (!removed.count(s)) out.push_back(s);
        for (const auto& tau : c.side(!plus))
            for (const auto& l : *link0) out.push_back(set_union(tau, l));
        return make_triangulation(config, std::move(out));
    }
    fail_engine("NotFlippable", "circuit " + to_string(c.relation) + " is not flippable here");
}

std::vector<FlipNeighbor> flip_neighbors(const PointConfiguration& config, const Triangulation& t,
                                         const std::vector<Circuit>& cs) {
    std::vector<FlipNeighbor> out;
    for (std::size_t i = 0; i < cs.size(); ++i)
        if (flippable(t, cs[i])) out.push_back({i, flip(config, t, cs[i])});
    return out;
}


std::vector<Triangulation> regular_triangulations(const PointConfiguration& config,
                                                  const EnumerationLimits& lim, unsigned jobs) {
    if (config.size() > lim.max_points || config.dim > lim.max_dim)
        fail_engine("TooLarge", std::to_string(config.size()) + " points in dimension " +
                                    std::to_string(config.dim) + " exceeds the enumeration guard");
    auto seed = seed_triangulation(config);
    if (!seed) fail_engine("NoSeed", "could not find a generic lift");
    std::vector<Circuit> cs = circuits(config);
    std::set<Triangulation> seen{*seed};
    std::vector<Triangulation> found{*seed};
    std::vector<Triangulation> frontier{*seed};
    while (!frontier.empty()) {
        // Expand the whole level in parallel, then merge in frontier order.
        std::vector<std::vector<FlipNeighbor>> nbrs(frontier.size());
        parallel_for(frontier.size(), jobs,
                     [&](std::size_t i) { nbrs[i] = flip_neighbors(config, frontier[i], cs); });
        std::vector<Triangulation> cand;
        std::set<Triangulation> cand_seen;
        for (auto& list : nbrs)
            for (auto& fnb : list)
                if (!seen.count(fnb.result) && cand_seen.insert(fnb.result).second)
                    cand.push_back(std::move(fnb.result));
        std::vector<std::optional<RatVec>> certs(cand.size());
        parallel_for(cand.size(), jobs,
                     [&](std::size_t i) { certs[i] = regularity_certificate(config, cand[i]); });
        frontier.clear();
        for (std::size_t i = 0; i < cand.size(); ++i) {
            seen.insert(cand[i]);
            if (!certs[i]) continue;
            cand[i].weight_certificate = *certs[i];
            found.push_back(cand[i]);
            frontier.push_back(cand[i]);
        }
    }
    std::sort(found.begin(), found.end());
    return found;
}

std::size_t TropicalComplex::count(std::size_t dim) const {
    std::size_t n = 0;
    for (const auto& c : cells)
        if (c.dim == dim) ++n;
    return n;
}

std::size_t TropicalComplex::count(std::size_t dim, bool bounded) const {
    std::size_t n = 0;
    for (const auto& c : cells)
        if (c.dim == dim && c.bounded == bounded) ++n;
    return n;
}

std::vector<Cell> faces_of(const Triangulation& t) {
    std::set<Cell> faces;
    for (const auto& s : t.simplices)
        for (std::size_t k = 2; k <= s.size(); ++k)
            for_each_subset(s.size(), k, [&](const std::vector<int>& idx) {
                Cell f;
                for (int i : idx) f.push_back(s[i]);
                faces.insert(f);
                return true;
            });
    return {faces.begin(), faces.end()};
}

Int face_volume(const PointConfiguration& config, const Cell& face) {
    IntMatrix m(config.dim, face.size() - 1);
    for (std::size_t j = 1; j < face.size(); ++j)
        for (std::size_t i = 0; i < config.dim; ++i)
            m(i, j - 1) = config.points[face[j]][i] - config.points[face[0]][i];
    return lattice_index(m);
}

TropicalComplex dual_complex(const PointConfiguration& config, const Triangulation& t) {
    TropicalComplex tc;
    std::vector<Cell> faces = faces_of(t);
    std::map<Cell, std::size_t> index;
    for (const auto& f : faces) {
        index[f] = tc.cells.size();
        tc.cells.push_back({f, config.dim + 1 - f.size(), !config.on_boundary(f),
                            face_volume(config, f)});
    }
    for (std::size_t j = 0; j < faces.size(); ++j) {
        const Cell& g = faces[j];
        if (g.size() <= 2) continue;
        for (std::size_t drop = 0; drop < g.size(); ++drop) {
            Cell f;
            for (std::size_t k = 0; k < g.size(); ++k)
                if (k != drop) f.push_back(g[k]);
            tc.adjacency.emplace_back(index.at(f), j);
        }
    }
    std::sort(tc.adjacency.begin(), tc.adjacency.end());
    return tc;
}

std::vector<DualCell> stable_complex(const PointConfiguration& config, const Triangulation& t_from,
                                     const Triangulation& t_to) {
    bool adjacent = false;
    for (const auto& c : circuits(config))
        if (flippable(t_from, c) && flip(config, t_from, c) == t_to) {
            adjacent = true;
            break;
        }
    if (!adjacent) fail_engine("NotAdjacent", "triangulations are not one flip apart");
    std::vector<Cell> before = faces_of(t_from);
    std::set<Cell> old(before.begin(), before.end());
    std::vector<DualCell> out;
    // points newly used: their dual regions are stable cells of top dimension
    for (int p : t_to.used_points)
        if (!t_from.uses(static_cast<std::size_t>(p)))
            out.push_back({Cell{p}, config.dim, !config.on_boundary(Cell{p}), Int(1)});
    for (const auto& cell : dual_complex(config, t_to).cells)
        if (!old.count(cell.face)) out.push_back(cell);
    return out;
}

}  // namespace wc

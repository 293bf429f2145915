#include "wallcross/secondary_fan.hpp"

#include "wallcross/combinatorics.hpp"
#include "wallcross/errors.hpp"
#include "wallcross/parallel.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace wc {

RatVec SecondaryFan::project(const RatVec& heights) const { return projection.apply(heights); }

RatVec SecondaryFan::heights_of(const RatVec& chi) const {
    RatVec a = ds.lift(chi);
    RatVec h(config.size(), Rat(0));
    for (std::size_t p = 0; p < config.size(); ++p)
        if (ray_of_point[p] >= 0) h[p] = a[ray_of_point[p]];
    return h;
}

RatVec SecondaryFan::form_of(const IntVec& relation) const {
    IntVec lam(ds.n(), Int(0));
    for (std::size_t p = 0; p < config.size(); ++p)
        if (ray_of_point[p] >= 0) lam[ray_of_point[p]] = relation[p];
    return ds.covector(lam);
}

RatVec SecondaryFan::anticanonical() const { return ds.anticanonical_rat(); }

const Wall& SecondaryFan::wall_between(std::size_t c1, std::size_t c2) const {
    for (std::size_t w : chambers[c1].walls)
        if (walls[w].a == c2 || walls[w].b == c2) return walls[w];
    fail_engine("NotIncident", "chambers " + std::to_string(c1) + " and " + std::to_string(c2) +
                                   " share no wall");
}

std::optional<std::size_t> SecondaryFan::chamber_of(const Triangulation& t) const {
    auto it = std::lower_bound(chambers.begin(), chambers.end(), t,
                               [](const Chamber& c, const Triangulation& x) { return c.tri < x; });
    if (it != chambers.end() && it->tri == t) return it->id;
    return std::nullopt;
}

std::vector<std::pair<std::size_t, RatVec>> SecondaryFan::facets(std::size_t c) const {
    std::vector<std::pair<std::size_t, RatVec>> out;
    for (std::size_t w : chambers[c].walls) {
        RatVec f = walls[w].covector;  // positive on b
        if (walls[w].a == c)
            for (auto& x : f) x = -x;
        out.emplace_back(w, std::move(f));
    }
    return out;
}

namespace {

std::vector<IntVec> cone_rays(const std::vector<RatVec>& forms, std::size_t r) {
    std::set<IntVec> rays;
    if (r == 1) {
        // half-line: the generator is +1 or -1
        IntVec plus{Int(1)}, minus{Int(-1)};
        bool p = true, m = true;
        for (const auto& f : forms) {
            if (f[0] < 0) p = false;
            if (f[0] > 0) m = false;
        }
        if (p) rays.insert(plus);
        if (m) rays.insert(minus);
        return {rays.begin(), rays.end()};
    }
    for_each_subset(forms.size(), r - 1, [&](const std::vector<int>& s) {
        RatMatrix m(s.size(), r);
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = 0; j < r; ++j) m(i, j) = forms[s[i]][j];
        auto ker = rational_kernel(m);
        if (ker.size() != 1) return true;
        IntVec v = primitive_of_rational(ker[0]);
        for (int sign : {1, -1}) {
            bool ok = true;
            for (const auto& f : forms) {
                Rat x = dot(f, to_rat(v)) * sign;
                if (x < 0) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                IntVec w(v);
                if (sign < 0)
                    for (auto& x : w) x = -x;
                rays.insert(w);
            }
        }
        return true;
    });
    return {rays.begin(), rays.end()};
}

}  // namespace

SecondaryFan secondary_fan(const PointConfiguration& config, const EnumerationLimits& lim,
                           unsigned jobs) {
    if (!config.origin) fail_validation("NoOrigin", "the secondary fan needs a marked origin");
    SecondaryFan fan;
    fan.config = config;
    std::vector<IntVec> rays;
    fan.ray_of_point.assign(config.size(), -1);
    for (std::size_t p = 0; p < config.size(); ++p) {
        if (p == *config.origin) continue;
        fan.ray_of_point[p] = static_cast<int>(rays.size());
        rays.push_back(config.points[p]);
    }
    fan.ds = build_divisor_sequence(rays);
    const std::size_t r = fan.ds.rank_G;
    fan.projection = RatMatrix(r, config.size());
    for (std::size_t p = 0; p < config.size(); ++p)
        for (std::size_t j = 0; j < r; ++j)
            fan.projection(j, p) = fan.ray_of_point[p] >= 0
                                       ? Rat(fan.ds.beta[fan.ray_of_point[p]][j])
                                       : -Rat(fan.ds.anticanonical[j]);
    fan.circuits = circuits(config);
    std::vector<Triangulation> ts = regular_triangulations(config, lim, jobs);
    fan.chambers.resize(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        Chamber& c = fan.chambers[i];
        c.id = i;
        c.tri = ts[i];
        c.uses_origin = c.tri.uses(*config.origin);
        c.constraints = chamber_constraints(config, c.tri);
        c.interior = fan.project(c.tri.weight_certificate);
    }
    std::vector<std::vector<FlipNeighbor>> nbrs(ts.size());
    parallel_for(ts.size(), jobs,
                 [&](std::size_t i) { nbrs[i] = flip_neighbors(config, ts[i], fan.circuits); });
    for (std::size_t i = 0; i < ts.size(); ++i) {
        for (const auto& nb : nbrs[i]) {
            auto j = fan.chamber_of(nb.result);
            if (!j || *j < i) continue;
            Wall w;
            w.id = fan.walls.size();
            w.a = i;
            w.b = *j;
            w.circuit = nb.circuit;
            w.normal = fan.circuits[nb.circuit].relation;
            if (dot(to_rat(w.normal), ts[i].weight_certificate) < 0)
                for (auto& x : w.normal) x = -x;
            IntVec neg(w.normal);
            for (auto& x : neg) x = -x;
            IntVec lam(fan.ds.n(), Int(0));
            for (std::size_t p = 0; p < config.size(); ++p)
                if (fan.ray_of_point[p] >= 0) lam[fan.ray_of_point[p]] = neg[p];
            w.lambda = primitive(lam);
            w.covector = fan.ds.covector(w.lambda);
            fan.chambers[i].walls.push_back(w.id);
            fan.chambers[*j].walls.push_back(w.id);
            fan.walls.push_back(std::move(w));
        }
    }
    for (auto& c : fan.chambers) {
        std::vector<RatVec> forms;
        for (auto& [w, f] : fan.facets(c.id)) forms.push_back(f);
        c.rays = cone_rays(forms, r);
    }
    return fan;
}

bool is_fan_type(const Chamber& c) { return c.uses_origin; }

std::optional<StackyFan> fan_type(const SecondaryFan& fan, const Chamber& c) {
    if (!c.uses_origin) return std::nullopt;
    const int o = static_cast<int>(fan.origin());
    StackyFan sf;
    std::set<int> used;
    for (const auto& s : c.tri.simplices) {
        if (!std::binary_search(s.begin(), s.end(), o)) continue;
        Cell cone;
        for (int i : s)
            if (i != o) cone.push_back(i);
        used.insert(cone.begin(), cone.end());
        sf.cones.push_back(cone);
        sf.multiplicities.push_back(simplex_volume(fan.config, s));
    }
    sf.ray_points.assign(used.begin(), used.end());
    return sf;
}

Location locate_chamber(const SecondaryFan& fan, const RatVec& chi) {
    Location loc;
    std::optional<std::vector<RatVec>> vanishing;
    for (const auto& c : fan.chambers) {
        bool inside = true;
        std::vector<RatVec> zero;
        std::vector<std::size_t> zero_walls;
        for (auto& [w, f] : fan.facets(c.id)) {
            Rat v = dot(f, chi);
            if (v < 0) {
                inside = false;
                break;
            }
            if (v == 0) {
                zero.push_back(f);
                zero_walls.push_back(w);
            }
        }
        if (!inside) continue;
        loc.chambers.push_back(c.id);
        if (!vanishing) {
            vanishing = zero;
            if (zero_walls.size() == 1) loc.wall = zero_walls[0];
        }
    }
    if (loc.chambers.empty()) fail_engine("Incomplete", "no chamber contains " + to_string(chi));
    if (vanishing->empty()) {
        loc.codim = 0;
    } else {
        RatMatrix m(vanishing->size(), fan.rank());
        for (std::size_t i = 0; i < vanishing->size(); ++i)
            for (std::size_t j = 0; j < fan.rank(); ++j) m(i, j) = (*vanishing)[i][j];
        loc.codim = rank_of(m);
    }
    loc.kind = loc.codim == 0 ? CellKind::Chamber : loc.codim == 1 ? CellKind::Wall : CellKind::Lower;
    if (loc.kind != CellKind::Wall) loc.wall.reset();
    loc.outside = true;
    for (std::size_t c : loc.chambers)
        if (fan.chambers[c].uses_origin) loc.outside = false;
    return loc;
}

std::size_t cone_dimension(const SecondaryFan& fan, const RatVec& chi) {
    return fan.rank() - locate_chamber(fan, chi).codim;
}

std::optional<std::size_t> FanFaces::find(const std::vector<std::size_t>& r) const {
    for (std::size_t i = 0; i < cones.size(); ++i)
        if (cones[i].rays == r) return i;
    return std::nullopt;
}

namespace {

bool includes(const std::vector<std::size_t>& big, const std::vector<std::size_t>& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

std::vector<std::size_t> FanFaces::facets_of(std::size_t c) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cones.size(); ++i)
        if (cones[i].dim + 1 == cones[c].dim && includes(cones[c].rays, cones[i].rays))
            out.push_back(i);
    return out;
}

std::vector<std::size_t> FanFaces::cofacets_of(std::size_t c) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cones.size(); ++i)
        if (cones[i].dim == cones[c].dim + 1 && includes(cones[i].rays, cones[c].rays))
            out.push_back(i);
    return out;
}

RatVec FanFaces::relative_interior_point(std::size_t c) const {
    RatVec p(rays[0].size(), Rat(0));
    for (std::size_t r : cones[c].rays)
        for (std::size_t j = 0; j < p.size(); ++j) p[j] += Rat(rays[r][j]);
    return p;
}

FanFaces fan_faces(const SecondaryFan& fan) {
    FanFaces ff;
    std::map<IntVec, std::size_t> ray_id;
    for (const auto& c : fan.chambers)
        for (const auto& r : c.rays) ray_id.emplace(r, 0);
    for (auto& [r, id] : ray_id) {
        id = ff.rays.size();
        ff.rays.push_back(r);
    }
    std::set<std::vector<std::size_t>> seen;
    std::vector<FanCone> cones;
    for (const auto& c : fan.chambers) {
        auto fs = fan.facets(c.id);
        std::size_t k = fs.size();
        for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
            std::vector<std::size_t> rs;
            for (const auto& r : c.rays) {
                bool zero = true;
                for (std::size_t i = 0; i < k && zero; ++i)
                    if ((mask >> i & 1) && dot(fs[i].second, to_rat(r)) != 0) zero = false;
                if (zero) rs.push_back(ray_id.at(r));
            }
            if (rs.empty()) continue;
            std::sort(rs.begin(), rs.end());
            if (!seen.insert(rs).second) continue;
            RatMatrix m(rs.size(), fan.rank());
            for (std::size_t i = 0; i < rs.size(); ++i)
                for (std::size_t j = 0; j < fan.rank(); ++j) m(i, j) = Rat(ff.rays[rs[i]][j]);
            cones.push_back({rs, rank_of(m)});
        }
    }
    std::sort(cones.begin(), cones.end(), [](const FanCone& x, const FanCone& y) {
        return x.dim != y.dim ? x.dim < y.dim : x.rays < y.rays;
    });
    ff.cones = std::move(cones);
    return ff;
}

}  // namespace wc

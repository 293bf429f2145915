#include "wallcross/sod.hpp"

#include "wallcross/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace wc {

namespace {

Int reduce_twist(const Int& twist, const Int& m) {
    Int r = twist % m;
    if (r < 0) r += m;
    return r == 0 ? Int(0) : Int(r - m);
}

std::vector<std::size_t> point_of_ray(const SecondaryFan& fan) {
    std::vector<std::size_t> out(fan.ds.rays.size());
    for (std::size_t p = 0; p < fan.ray_of_point.size(); ++p)
        if (fan.ray_of_point[p] >= 0) out[static_cast<std::size_t>(fan.ray_of_point[p])] = p;
    return out;
}

Int chamber_rank(const SecondaryFan& fan, std::size_t c) {
    return fan.chambers[c].uses_origin ? rank_k0(fan, fan.chambers[c]) : Int(0);
}

// Line bundle class for a wall without positive weights.
std::string fiber_class(const SecondaryFan& fan, std::size_t source, const WallData& wd) {
    auto pr = point_of_ray(fan);
    std::optional<std::size_t> h;
    for (std::size_t i = 0; i < wd.lambda.size(); ++i) {
        if (wd.lambda[i] == 0) continue;
        if (!h || (abs(wd.lambda[*h]) != 1 && abs(wd.lambda[i]) == 1)) h = i;
    }
    if (!h) return "";
    return format_divisor(pullback_divisor(fan, source, wd.from, pr[*h]));
}

std::string twisted_line_bundle(const std::string& cls, const Int& l, bool plain) {
    if (l == 0) return "O";
    if (plain) return "O(" + l.get_str() + ")";
    bool compound = cls.find_first_of("+-", 1) != std::string::npos;
    std::string c = compound ? "(" + cls + ")" : cls;
    if (l == 1) return "O(" + c + ")";
    if (l == -1) return "O(-" + c + ")";
    return "O(" + l.get_str() + c + ")";
}

std::string piece_label(const SecondaryFan& fan, std::size_t source, const WallData& wd, const Int& l) {
    bool any_positive = false;
    for (const auto& x : wd.lambda) any_positive = any_positive || x > 0;
    if (!any_positive) return twisted_line_bundle(fiber_class(fan, source, wd), l, fan.rank() == 1);
    std::string base = wall_piece_base(fan, source, wd);
    if (l != 0) base += "(" + l.get_str() + ")";
    return base;
}

void append_block(const SecondaryFan& fan, std::size_t source, const WallData& wd, const Int& d,
                  std::vector<SODComponent>& out) {
    Int m = abs(wd.mu);
    std::vector<SODComponent> block;
    for (Int j = 1; j <= m; ++j) {
        SODComponent c;
        c.kind = ComponentKind::WallPiece;
        c.chamber = wd.from;
        c.wall = wd.wall_id;
        c.copy = j.get_ui();
        c.twist = -d - (j - 1);
        c.normalized_twist = reduce_twist(c.twist, m);
        c.rank = wd.w_rank_k0;
        c.label = piece_label(fan, source, wd, c.normalized_twist);
        block.push_back(c);
    }
    std::stable_sort(block.begin(), block.end(), [](const SODComponent& a, const SODComponent& b) {
        return a.normalized_twist < b.normalized_twist;
    });
    out.insert(out.end(), block.begin(), block.end());
}

SODComponent chamber_component(const SecondaryFan& fan, std::size_t c) {
    SODComponent s;
    s.kind = ComponentKind::StackChamber;
    s.chamber = c;
    s.rank = chamber_rank(fan, c);
    s.label = "D(Y_" + std::to_string(c) + ")";
    return s;
}

}  // namespace

std::string format_divisor(const RatVec& coeff) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeff.size(); ++i) {
        const Rat& c = coeff[i];
        if (c == 0) continue;
        if (c < 0) os << "-";
        else if (!first) os << "+";
        Rat a = abs(c);
        if (a != 1) os << a.get_str();
        os << "D_" << i;
        first = false;
    }
    return first ? "0" : os.str();
}

RatVec pullback_divisor(const SecondaryFan& fan, std::size_t source, std::size_t from, std::size_t ray) {
    RatVec out(fan.config.size(), Rat(0));
    auto src = fan_type(fan, fan.chambers.at(source));
    auto tgt = fan_type(fan, fan.chambers.at(from));
    if (!src || !tgt) fail_engine("NotFanType", "pullback needs two fan-type chambers");
    for (int r : src->ray_points) {
        const IntVec& v = fan.config.points[r];
        for (const auto& cone : tgt->cones) {
            RatMatrix m(v.size(), cone.size());
            for (std::size_t j = 0; j < cone.size(); ++j)
                for (std::size_t i = 0; i < v.size(); ++i) m(i, j) = fan.config.points[cone[j]][i];
            auto c = rational_solve(m, to_rat(v));
            if (!c) continue;
            bool inside = std::all_of(c->begin(), c->end(), [](const Rat& x) { return x >= 0; });
            if (!inside) continue;
            for (std::size_t j = 0; j < cone.size(); ++j)
                if (static_cast<std::size_t>(cone[j]) == ray) out[r] = (*c)[j];
            break;
        }
    }
    return out;
}

std::string wall_piece_base(const SecondaryFan& fan, std::size_t source, const WallData& wd) {
    auto pr = point_of_ray(fan);
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < wd.lambda.size(); ++i)
        if (wd.lambda[i] > 0) support.push_back(pr[i]);
    if (support.empty()) return twisted_line_bundle(fiber_class(fan, source, wd), 0, fan.rank() == 1);
    if (support.size() == 1)
        return "O_{" + format_divisor(pullback_divisor(fan, source, wd.from, support[0])) + "}";
    std::string s = "O_{";
    for (std::size_t k = 0; k < support.size(); ++k) {
        if (k) s += "∩";
        s += "D_" + std::to_string(support[k]);
    }
    return s + "}";
}

SOD wall_sod(const SecondaryFan& fan, const WallData& wd, const Int& d) {
    SOD sod;
    sod.d_choices = {d};
    if (wd.mu == 0) {
        sod.source = wd.from;
        SODComponent c;
        c.kind = ComponentKind::Equivalence;
        c.chamber = wd.from;
        c.wall = wd.wall_id;
        c.rank = chamber_rank(fan, wd.from);
        c.label = "D(Y_" + std::to_string(wd.to) + ")";
        sod.components.push_back(c);
        return sod;
    }
    if (wd.mu < 0) {
        sod.source = wd.from;
        append_block(fan, wd.from, wd, d, sod.components);
        if (fan.chambers[wd.to].uses_origin) sod.components.push_back(chamber_component(fan, wd.to));
        return sod;
    }
    sod.source = wd.to;
    sod.attached_to_target = true;
    WallData back = wall_data(fan, wd.wall_id, wd.to);
    if (fan.chambers[wd.to].uses_origin) append_block(fan, wd.to, back, d, sod.components);
    if (fan.chambers[wd.from].uses_origin) sod.components.push_back(chamber_component(fan, wd.from));
    return sod;
}

SOD run_sod(const SecondaryFan& fan, const MoriRun& run, std::vector<Int> d_choices) {
    if (!run.valid) fail_engine("NotAMoriRun", "run crosses a wall with positive mu");
    d_choices.resize(run.crossings.size(), Int(0));
    SOD sod;
    sod.source = run.chambers.front();
    sod.d_choices = d_choices;
    if (!run.exited) sod.components.push_back(chamber_component(fan, run.chambers.back()));
    for (std::size_t k = run.crossings.size(); k-- > 0;)
        append_block(fan, sod.source, run.crossings[k].wall, d_choices[k], sod.components);
    if (run.crossings.empty() && run.exited && fan.chambers[sod.source].uses_origin)
        sod.components.push_back(chamber_component(fan, sod.source));
    return sod;
}

bool k0_check(const SOD& sod, const SecondaryFan& fan) {
    Int total = 0;
    for (const auto& c : sod.components) total += c.rank;
    return total == chamber_rank(fan, sod.source);
}

std::vector<std::string> expand_characters(const std::string& base, const Int& order) {
    if (order <= 1) return {base};
    std::vector<std::string> out;
    for (Int k = 0; k < order; ++k) out.push_back(base + "⊗χ_" + k.get_str());
    return out;
}

namespace {

std::vector<std::string> chamber_labels(const SecondaryFan& fan, std::size_t c);

// Collection on the fixed locus W, or nullopt when W is not presented by
// distinct primitive rays with generic heights.
std::optional<std::vector<std::string>> fixed_locus_labels(const SubProblem& sp) {
    // repeated rays keep their lowest height; zero rays lower the origin
    std::map<IntVec, Rat> merged;
    Rat origin_height = 0;
    for (std::size_t i = 0; i < sp.points.size(); ++i) {
        if (is_zero(sp.points[i])) {
            origin_height = std::min(origin_height, sp.heights[i]);
            continue;
        }
        auto it = merged.find(sp.points[i]);
        if (it == merged.end()) merged.emplace(sp.points[i], sp.heights[i]);
        else it->second = std::min(it->second, sp.heights[i]);
    }
    std::vector<IntVec> rays;
    RatVec h;
    for (auto& [p, x] : merged) {
        rays.push_back(p);
        h.push_back(x);
    }
    h.push_back(origin_height);
    try {
        PointConfiguration cfg = configuration_from_rays(rays);
        Subdivision sub = regular_subdivision(cfg, h);
        if (!sub.is_triangulation(cfg.dim)) return std::nullopt;
        SecondaryFan wf = secondary_fan(cfg);
        auto c = wf.chamber_of(make_triangulation(cfg, sub.cells));
        if (!c || !wf.chambers[*c].uses_origin) return std::nullopt;
        return chamber_labels(wf, *c);
    } catch (const Error&) {
        return std::nullopt;
    }
}

std::vector<std::string> chamber_labels(const SecondaryFan& fan, std::size_t c) {
    NefFanoStart st = find_nef_fano_start(fan, c);
    SOD sod = run_sod(fan, restrict_run(st.run, c));
    std::vector<std::string> out;
    for (const auto& o : exceptional_collection(sod, fan)) out.push_back(o.label);
    return out;
}

}  // namespace

std::vector<ExceptionalObject> exceptional_collection(const SOD& sod, const SecondaryFan& fan) {
    std::vector<ExceptionalObject> out;
    for (const auto& c : sod.components) {
        if (c.kind != ComponentKind::WallPiece) {
            if (c.rank == 0) continue;
            for (auto& l : chamber_labels(fan, c.chamber)) out.push_back({l, c.wall, true});
            continue;
        }
        WallData wd = wall_data(fan, c.wall, c.chamber);
        std::vector<std::string> inner;
        if (wd.sub.dimension == 0) {
            inner = {c.label};
        } else {
            Int local = wd.w_rank_k0 / wd.sub.torsion;
            auto w = fixed_locus_labels(wd.sub);
            if (w && Int(w->size()) == local) {
                for (auto& l : *w) inner.push_back(c.label + "⊠" + l);
            } else {
                for (Int k = 0; k < local; ++k) inner.push_back(c.label + "⊠E_" + k.get_str());
            }
        }
        for (auto& l : inner)
            for (auto& x : expand_characters(l, wd.sub.torsion)) out.push_back({x, c.wall, false});
    }
    return out;
}

std::vector<ExceptionalObject> exceptional_collection(const MoriTree& tree, const SecondaryFan& fan) {
    if (tree.edges.empty()) fail_validation("EmptyTree", "tree has no edges");
    MoriRun run = straight_line_run(fan, tree.edges[0].base, tree.edges[0].dir);
    return exceptional_collection(run_sod(fan, restrict_run(run, tree.phase)), fan);
}

}  // namespace wc

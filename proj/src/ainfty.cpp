#include "wallcross/ainfty.hpp"

#include "wallcross/errors.hpp"
#include "wallcross/lattice.hpp"
#include "wallcross/parallel.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace wc {

bool operator<(const Path& x, const Path& y) {
    if (x.arrows.size() != y.arrows.size()) return x.arrows.size() < y.arrows.size();
    if (x.arrows != y.arrows) return x.arrows < y.arrows;
    return x.vertex < y.vertex;
}

bool operator==(const Path& x, const Path& y) { return x.arrows == y.arrows && x.vertex == y.vertex; }

std::size_t GradedQuiver::source(const Path& p) const {
    return p.empty() ? p.vertex : arrows[p.arrows.back()].source;
}

std::size_t GradedQuiver::target(const Path& p) const {
    return p.empty() ? p.vertex : arrows[p.arrows.front()].target;
}

int GradedQuiver::degree(const Path& p) const {
    int s = 0;
    for (auto a : p.arrows) s += arrows[a].degree;
    return s;
}

bool GradedQuiver::composable(const Path& p) const {
    for (std::size_t k = 0; k + 1 < p.arrows.size(); ++k)
        if (arrows[p.arrows[k]].source != arrows[p.arrows[k + 1]].target) return false;
    return true;
}

std::optional<std::size_t> GradedQuiver::arrow_index(const std::string& label) const {
    for (std::size_t k = 0; k < arrows.size(); ++k)
        if (arrows[k].label == label) return k;
    return std::nullopt;
}

std::optional<std::size_t> GradedQuiver::vertex_index(const std::string& name) const {
    for (std::size_t k = 0; k < vertices.size(); ++k)
        if (vertices[k] == name) return k;
    return std::nullopt;
}

std::string GradedQuiver::format(const Path& p, const std::map<std::string, std::string>& aliases) const {
    if (p.empty()) return "e" + vertices[p.vertex];
    std::string out;
    for (std::size_t k = 0; k < p.arrows.size(); ++k) {
        if (k) out += ' ';
        const auto& l = arrows[p.arrows[k]].label;
        auto it = aliases.find(l);
        out += it == aliases.end() ? l : it->second;
    }
    return out;
}

Path parse_path(const GradedQuiver& q, const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> tokens;
    for (std::string t; in >> t;) tokens.push_back(t);
    if (tokens.empty()) fail_validation("EmptyPath", "empty path");
    if (tokens.size() == 1 && !q.arrow_index(tokens[0]) && tokens[0].size() > 1 && tokens[0][0] == 'e') {
        std::string name = tokens[0].substr(tokens[0][1] == '_' ? 2 : 1);
        auto v = q.vertex_index(name);
        if (!v) fail_validation("UnknownVertex", "no vertex '" + name + "'");
        return Path::idempotent(*v);
    }
    Path p;
    for (const auto& t : tokens) {
        auto a = q.arrow_index(t);
        if (!a) fail_validation("UnknownArrow", "no arrow '" + t + "'");
        p.arrows.push_back(*a);
    }
    if (!q.composable(p)) fail_validation("NotComposable", "path '" + text + "' is not composable");
    return p;
}

void validate_quiver(const GradedQuiver& q) {
    for (const auto& a : q.arrows)
        if (a.source >= q.vertices.size() || a.target >= q.vertices.size())
            fail_validation("UnknownVertex", "arrow " + a.label + " has an endpoint out of range");
    for (std::size_t r = 0; r < q.relations.size(); ++r) {
        const auto& rel = q.relations[r];
        for (const auto& [c, p] : rel) {
            if (!q.composable(p)) fail_validation("NotComposable", "relation " + std::to_string(r + 1));
            const auto& [c0, p0] = rel.front();
            if (q.source(p) != q.source(p0) || q.target(p) != q.target(p0) || q.degree(p) != q.degree(p0))
                fail_validation("InhomogeneousRelation",
                                "relation " + std::to_string(r + 1) + ": '" + q.format(p0) + "' and '" +
                                    q.format(p) + "' differ in endpoints or degree");
        }
    }
}

namespace {

Path splice(const std::vector<std::size_t>& u, const Path& q, const std::vector<std::size_t>& w) {
    if (u.empty() && w.empty()) return q;
    Path p;
    p.arrows = u;
    p.arrows.insert(p.arrows.end(), q.arrows.begin(), q.arrows.end());
    p.arrows.insert(p.arrows.end(), w.begin(), w.end());
    return p;
}

std::vector<std::size_t> slice(const std::vector<std::size_t>& v, std::size_t a, std::size_t b) {
    return std::vector<std::size_t>(v.begin() + static_cast<std::ptrdiff_t>(a), v.begin() + static_cast<std::ptrdiff_t>(b));
}

void add_term(std::map<Path, Rat>& m, const Path& p, const Rat& c) {
    if (c == 0) return;
    auto& x = m[p];
    x += c;
    if (x == 0) m.erase(p);
}

void add_to(Vec& v, std::size_t k, const Rat& c) {
    if (c == 0) return;
    auto& x = v[k];
    x += c;
    if (x == 0) v.erase(k);
}

void axpy(Vec& y, const Rat& c, const Vec& x) {
    for (const auto& [k, v] : x) add_to(y, k, c * v);
}

std::optional<std::size_t> find_word(const std::vector<std::size_t>& hay, const std::vector<std::size_t>& needle) {
    if (needle.size() > hay.size()) return std::nullopt;
    auto it = std::search(hay.begin(), hay.end(), needle.begin(), needle.end());
    if (it == hay.end()) return std::nullopt;
    return static_cast<std::size_t>(it - hay.begin());
}

std::map<Path, Rat> reduce_with(const std::vector<RewriteRule>& rules, const PathCombination& c) {
    std::map<Path, Rat> work, out;
    for (const auto& [x, p] : c) add_term(work, p, x);
    while (!work.empty()) {
        auto it = std::prev(work.end());
        Path p = it->first;
        Rat x = it->second;
        work.erase(it);
        bool rewritten = false;
        for (const auto& r : rules) {
            auto pos = find_word(p.arrows, r.lead.arrows);
            if (!pos) continue;
            auto u = slice(p.arrows, 0, *pos);
            auto w = slice(p.arrows, *pos + r.lead.arrows.size(), p.arrows.size());
            for (const auto& [y, q] : r.rest) add_term(work, splice(u, q, w), x * y);
            rewritten = true;
            break;
        }
        if (!rewritten) add_term(out, p, x);
    }
    return out;
}


PathCombination times(const std::vector<std::size_t>& u, const PathCombination& c, const std::vector<std::size_t>& w,
                      const Rat& s) {
    PathCombination out;
    for (const auto& [x, p] : c) out.emplace_back(s * x, splice(u, p, w));
    return out;
}

// lead - rest as a combination.
PathCombination relation_of(const RewriteRule& r) {
    PathCombination c{{Rat(1), r.lead}};
    for (const auto& [x, p] : r.rest) c.emplace_back(-x, p);
    return c;
}

std::vector<PathCombination> critical_pairs(const RewriteRule& A, const RewriteRule& B, bool same) {
    std::vector<PathCombination> out;
    const auto& a = A.lead.arrows;
    const auto& b = B.lead.arrows;
    // a = u v, b = v w with v proper and nonempty: u restB - restA w.
    for (std::size_t k = 1; k < std::min(a.size(), b.size()); ++k) {
        if (!std::equal(a.end() - static_cast<std::ptrdiff_t>(k), a.end(), b.begin())) continue;
        auto u = slice(a, 0, a.size() - k);
        auto w = slice(b, k, b.size());
        auto s = times(u, B.rest, {}, 1);
        auto t = times({}, A.rest, w, -1);
        s.insert(s.end(), t.begin(), t.end());
        out.push_back(std::move(s));
    }
    // b inside a: restA - u restB w.
    if (!same) {
        for (std::size_t p = 0; p + b.size() <= a.size(); ++p) {
            if (!std::equal(b.begin(), b.end(), a.begin() + static_cast<std::ptrdiff_t>(p))) continue;
            auto u = slice(a, 0, p);
            auto w = slice(a, p + b.size(), a.size());
            PathCombination s = A.rest;
            auto t = times(u, B.rest, w, -1);
            s.insert(s.end(), t.begin(), t.end());
            out.push_back(std::move(s));
        }
    }
    return out;
}

class RuleSet {
public:
    explicit RuleSet(const GradedQuiver& q) : q_(q) {}

    // Returns the number of rules added.
    std::size_t absorb(std::deque<PathCombination> queue) {
        std::size_t added = 0;
        while (!queue.empty()) {
            auto nf = reduce_with(rules, queue.front());
            queue.pop_front();
            if (nf.empty()) continue;
            auto lead = std::prev(nf.end());
            if (lead->first.empty())
                fail_validation("DegenerateRelation", "a relation identifies the idempotent e" +
                                                          q_.vertices[lead->first.vertex] + " with other paths");
            RewriteRule r;
            r.lead = lead->first;
            Rat c = lead->second;
            for (auto it = nf.begin(); it != lead; ++it) r.rest.emplace_back(-it->second / c, it->first);
            for (std::size_t k = 0; k < rules.size();) {
                if (find_word(rules[k].lead.arrows, r.lead.arrows)) {
                    queue.push_back(relation_of(rules[k]));
                    rules.erase(rules.begin() + static_cast<std::ptrdiff_t>(k));
                } else {
                    ++k;
                }
            }
            rules.push_back(std::move(r));
            ++added;
        }
        return added;
    }

    std::deque<PathCombination> unresolved() const {
        std::deque<PathCombination> out;
        for (std::size_t x = 0; x < rules.size(); ++x)
            for (std::size_t y = 0; y < rules.size(); ++y)
                for (auto& s : critical_pairs(rules[x], rules[y], x == y))
                    if (!reduce_with(rules, s).empty()) out.push_back(std::move(s));
        return out;
    }

    std::vector<RewriteRule> rules;

private:
    const GradedQuiver& q_;
};

}  // namespace

std::map<Path, Rat> PathBasis::normal_form(const PathCombination& c) const { return reduce_with(rules, c); }

Vec PathBasis::reduce(const PathCombination& c) const {
    Vec v;
    for (const auto& [p, x] : normal_form(c)) {
        auto it = index.find(p);
        if (it == index.end()) fail_engine("NonConfluent", "normal form outside the basis");
        v[it->second] = x;
    }
    return v;
}

PathBasis normalize_paths(const GradedQuiver& q, std::size_t max_steps, bool complete, std::size_t max_basis) {
    validate_quiver(q);
    RuleSet rs(q);
    rs.absorb(std::deque<PathCombination>(q.relations.begin(), q.relations.end()));
    std::size_t steps = 0;
    for (;;) {
        auto open = rs.unresolved();
        if (open.empty()) break;
        if (!complete)
            fail_engine("NonConfluent", "critical pair does not resolve: " +
                                            q.format(open.front().empty() ? Path{} : open.front().front().second));
        steps += rs.absorb(std::move(open));
        if (steps > max_steps)
            fail_engine("NonConfluent", "completion did not finish within " + std::to_string(max_steps) + " steps");
    }

    PathBasis out;
    out.rules = std::move(rs.rules);
    std::sort(out.rules.begin(), out.rules.end(), [](const auto& x, const auto& y) { return x.lead < y.lead; });
    std::vector<Path> level;
    for (std::size_t v = 0; v < q.vertices.size(); ++v) out.basis.push_back(Path::idempotent(v));
    auto is_normal_prefix = [&](const Path& p) {
        for (const auto& r : out.rules) {
            const auto& l = r.lead.arrows;
            if (l.size() <= p.arrows.size() && std::equal(l.begin(), l.end(), p.arrows.begin())) return false;
        }
        return true;
    };
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        Path p = Path::word({a});
        if (is_normal_prefix(p)) level.push_back(p);
    }
    while (!level.empty()) {
        std::sort(level.begin(), level.end());
        out.basis.insert(out.basis.end(), level.begin(), level.end());
        if (out.basis.size() > max_basis)
            fail_engine("InfiniteBasis", "more than " + std::to_string(max_basis) + " normal paths");
        std::vector<Path> next;
        for (const auto& p : level)
            for (std::size_t a = 0; a < q.arrows.size(); ++a) {
                if (q.arrows[a].source != q.target(p)) continue;
                Path x;
                x.arrows.push_back(a);
                x.arrows.insert(x.arrows.end(), p.arrows.begin(), p.arrows.end());
                if (is_normal_prefix(x)) next.push_back(std::move(x));
            }
        level = std::move(next);
    }
    std::sort(out.basis.begin(), out.basis.end());
    for (std::size_t k = 0; k < out.basis.size(); ++k) out.index[out.basis[k]] = k;
    return out;
}

std::string DGQuiverAlgebra::label(std::size_t i, const std::map<std::string, std::string>& aliases) const {
    return quiver.format(paths.basis[i], aliases);
}

Vec DGQuiverAlgebra::multiply(const Vec& x, const Vec& y) const {
    Vec out;
    for (const auto& [i, a] : x)
        for (const auto& [j, b] : y) {
            auto it = products.find({i, j});
            if (it != products.end()) axpy(out, a * b, it->second);
        }
    return out;
}

Vec DGQuiverAlgebra::differential(const Vec& x) const {
    Vec out;
    for (const auto& [i, a] : x) axpy(out, a, d[i]);
    return out;
}

namespace {

// Leibniz on a word, unreduced.
PathCombination d_of_word(const GradedQuiver& q, const std::vector<PathCombination>& dd, const Path& p) {
    PathCombination out;
    int prefix = 0;
    for (std::size_t k = 0; k < p.arrows.size(); ++k) {
        auto u = slice(p.arrows, 0, k);
        auto w = slice(p.arrows, k + 1, p.arrows.size());
        auto t = times(u, dd[p.arrows[k]], w, prefix % 2 ? -1 : 1);
        out.insert(out.end(), t.begin(), t.end());
        prefix += q.arrows[p.arrows[k]].degree;
    }
    return out;
}

PathCombination d_of(const GradedQuiver& q, const std::vector<PathCombination>& dd, const PathCombination& c) {
    PathCombination out;
    for (const auto& [x, p] : c)
        for (auto& [y, r] : d_of_word(q, dd, p)) out.emplace_back(x * y, r);
    return out;
}

int sign(long k) { return k % 2 ? -1 : 1; }

}  // namespace

DGQuiverAlgebra make_dg_algebra(GradedQuiver q, std::vector<PathCombination> arrow_differential, std::size_t max_steps) {
    DGQuiverAlgebra a;
    a.paths = normalize_paths(q, max_steps);
    arrow_differential.resize(q.arrows.size());
    for (std::size_t k = 0; k < q.arrows.size(); ++k)
        for (const auto& [x, p] : arrow_differential[k]) {
            if (!q.composable(p))
                fail_validation("NotComposable", "d(" + q.arrows[k].label + ") contains a non-composable path");
            if (q.source(p) != q.arrows[k].source || q.target(p) != q.arrows[k].target)
                fail_validation("DifferentialEndpoints",
                                "d(" + q.arrows[k].label + ") contains '" + q.format(p) + "' with other endpoints");
        }
    a.quiver = std::move(q);
    a.arrow_differential = std::move(arrow_differential);
    const auto& basis = a.paths.basis;
    a.d.resize(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        a.d[i] = a.paths.reduce(d_of_word(a.quiver, a.arrow_differential, basis[i]));
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (a.source(i) != a.target(j)) continue;
            Path p = basis[i].empty() ? basis[j] : basis[j].empty() ? basis[i] : splice(basis[i].arrows, basis[j], {});
            auto v = a.paths.reduce({{Rat(1), p}});
            if (!v.empty()) a.products[{i, j}] = std::move(v);
        }
    return a;
}

std::string format_vec(const Vec& v, const std::vector<std::string>& names) {
    if (v.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, x] : v) {
        Rat c = x;
        if (!first) {
            out += c < 0 ? " - " : " + ";
            if (c < 0) c = -c;
        }
        if (c == -1)
            out += "-";
        else if (c != 1)
            out += c.get_str() + "*";
        out += names[k];
        first = false;
    }
    return out;
}

Verdict validate_dg(const DGQuiverAlgebra& a) {
    const auto& q = a.quiver;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < a.size(); ++i) names.push_back(a.label(i));
    for (std::size_t k = 0; k < q.arrows.size(); ++k)
        for (const auto& [x, p] : a.arrow_differential[k])
            if (q.degree(p) != q.arrows[k].degree + 1)
                return {false, "d(" + q.arrows[k].label + ") contains '" + q.format(p) + "' of degree " +
                                   std::to_string(q.degree(p)) + ", expected " +
                                   std::to_string(q.arrows[k].degree + 1)};
    for (std::size_t r = 0; r < q.relations.size(); ++r) {
        auto v = a.paths.reduce(d_of(q, a.arrow_differential, q.relations[r]));
        if (!v.empty())
            return {false, "d does not preserve relation " + std::to_string(r + 1) + ": " + format_vec(v, names)};
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto dd = a.differential(a.d[i]);
        if (!dd.empty()) return {false, "d^2(" + names[i] + ") = " + format_vec(dd, names)};
    }
    for (const auto& [ij, prod] : a.products) {
        auto [i, j] = ij;
        auto lhs = a.differential(prod);
        Vec ei{{i, Rat(1)}}, ej{{j, Rat(1)}};
        auto rhs = a.multiply(a.d[i], ej);
        axpy(rhs, sign(a.degree(i)), a.multiply(ei, a.d[j]));
        if (lhs != rhs) return {false, "Leibniz fails on (" + names[i] + ", " + names[j] + ")"};
    }
    return {};
}

namespace {

Vec apply_map(const std::vector<Vec>& m, const Vec& x) {
    Vec out;
    for (const auto& [k, c] : x) axpy(out, c, m[k]);
    return out;
}

// Row echelon form over sparse vectors, remembering how each row was made
// from the inserted generators.
class Echelon {
public:
    // Reduces v (and its provenance) against the rows.
    void reduce(Vec& v, Vec& combo) const {
        auto it = v.begin();
        while (it != v.end()) {
            auto row = rows_.find(it->first);
            if (row == rows_.end()) {
                ++it;
                continue;
            }
            std::size_t j = it->first;
            Rat c = it->second;
            axpy(v, -c, row->second.first);
            axpy(combo, -c, row->second.second);
            it = v.upper_bound(j);
        }
    }
    // True if v was independent of the rows; then it becomes generator `g`.
    bool insert(Vec v, std::size_t g) {
        Vec combo{{g, Rat(1)}};
        reduce(v, combo);
        if (v.empty()) return false;
        std::size_t p = v.begin()->first;
        Rat c = v.begin()->second;
        for (auto& [k, x] : v) x /= c;
        for (auto& [k, x] : combo) x /= c;
        rows_[p] = {std::move(v), std::move(combo)};
        return true;
    }

private:
    std::map<std::size_t, std::pair<Vec, Vec>> rows_;
};

BasisNames names_or_default(const DGQuiverAlgebra& a, const BasisNames& names) {
    if (!names.empty()) return names;
    BasisNames out;
    for (std::size_t k = 0; k < a.size(); ++k) out.push_back(a.label(k));
    return out;
}

std::string class_name(const Vec& rep, const BasisNames& names) {
    if (rep.size() == 1 && rep.begin()->second == 1) return names[rep.begin()->first];
    return "[" + format_vec(rep, names) + "]";
}

}  // namespace

Verdict validate_transfer(const DGQuiverAlgebra& a, const TransferData& t) {
    std::size_t n = a.size(), c = t.i.size();
    if (t.pi.size() != n || t.h.size() != n || t.class_names.size() != c)
        return {false, "transfer data sizes do not match the algebra"};
    std::vector<std::string> names;
    for (std::size_t k = 0; k < n; ++k) names.push_back(a.label(k));
    std::vector<int> cdeg(c, 0);
    for (std::size_t x = 0; x < c; ++x) {
        if (t.i[x].empty()) return {false, "i(" + t.class_names[x] + ") = 0"};
        cdeg[x] = a.degree(t.i[x].begin()->first);
        for (const auto& [k, v] : t.i[x])
            if (a.degree(k) != cdeg[x]) return {false, "i(" + t.class_names[x] + ") is not homogeneous"};
        if (!a.differential(t.i[x]).empty()) return {false, "d(i(" + t.class_names[x] + ")) != 0"};
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (const auto& [x, v] : t.pi[k])
            if (x >= c || cdeg[x] != a.degree(k)) return {false, "pi(" + names[k] + ") has the wrong degree"};
        for (const auto& [j, v] : t.h[k])
            if (j >= n || a.degree(j) != a.degree(k) - 1) return {false, "h(" + names[k] + ") is not of degree -1"};
        if (!apply_map(t.pi, a.d[k]).empty()) return {false, "pi(d(" + names[k] + ")) != 0"};
    }
    for (std::size_t x = 0; x < c; ++x) {
        auto v = apply_map(t.pi, t.i[x]);
        if (v != Vec{{x, Rat(1)}}) return {false, "pi(i(" + t.class_names[x] + ")) != " + t.class_names[x]};
    }
    for (std::size_t k = 0; k < n; ++k) {
        Vec lhs = apply_map(t.i, t.pi[k]);
        Vec rhs{{k, Rat(1)}};
        axpy(rhs, -1, a.differential(t.h[k]));
        axpy(rhs, -1, apply_map(t.h, a.d[k]));
        if (lhs != rhs) return {false, "i pi != 1 - dh - hd on " + names[k]};
        auto hh = apply_map(t.h, t.h[k]);
        if (!hh.empty()) return {false, "h^2(" + names[k] + ") = " + format_vec(hh, names)};
    }
    return {};
}

TransferData auto_transfer(const DGQuiverAlgebra& a, const BasisNames& basis_names) {
    std::size_t n = a.size();
    auto names = names_or_default(a, basis_names);
    std::vector<std::size_t> L;
    std::vector<Vec> B;
    {
        Echelon e;
        for (std::size_t k = 0; k < n; ++k)
            if (!a.d[k].empty() && e.insert(a.d[k], k)) {
                L.push_back(k);
                B.push_back(a.d[k]);
            }
    }
    // Cocycles, one homogeneous block at a time, completed against B.
    std::map<std::tuple<std::size_t, std::size_t, int>, std::vector<std::size_t>> blocks;
    std::vector<std::tuple<std::size_t, std::size_t, int>> order;
    for (std::size_t k = 0; k < n; ++k) {
        auto key = std::make_tuple(a.source(k), a.target(k), a.degree(k));
        if (!blocks.count(key)) order.push_back(key);
        blocks[key].push_back(k);
    }
    std::vector<Vec> H;
    {
        Echelon e;
        for (std::size_t b = 0; b < B.size(); ++b) e.insert(B[b], b);
        std::size_t g = B.size();
        for (const auto& key : order) {
            const auto& idx = blocks[key];
            RatMatrix m(n, idx.size());
            for (std::size_t c = 0; c < idx.size(); ++c)
                for (const auto& [r, v] : a.d[idx[c]]) m(r, c) = v;
            for (const auto& z : rational_kernel(m)) {
                Vec v;
                for (std::size_t c = 0; c < idx.size(); ++c)
                    if (z[c] != 0) v[idx[c]] = z[c];
                if (e.insert(v, g++)) H.push_back(std::move(v));
            }
        }
    }
    // Coordinates in the splitting H + B + L.
    Echelon full;
    std::size_t g = 0;
    for (const auto& v : H) full.insert(v, g++);
    for (const auto& v : B) full.insert(v, g++);
    for (auto l : L) full.insert(Vec{{l, Rat(1)}}, g++);
    if (g != H.size() + B.size() + L.size()) fail_engine("SplittingFailed", "generators are dependent");

    TransferData t;
    t.i = H;
    for (const auto& v : H) t.class_names.push_back(class_name(v, names));
    t.pi.resize(n);
    t.h.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        Vec v{{k, Rat(1)}}, combo;
        full.reduce(v, combo);
        if (!v.empty()) fail_engine("SplittingFailed", "splitting does not span");
        for (const auto& [gen, c] : combo) {
            Rat x = -c;  // reduce() records what was subtracted
            if (gen < H.size())
                add_to(t.pi[k], gen, x);
            else if (gen < H.size() + B.size())
                add_to(t.h[k], L[gen - H.size()], x);
        }
    }
    return t;
}

TransferData standard_transfer(const DGQuiverAlgebra& a, const std::vector<std::pair<std::size_t, Vec>>& h,
                               const BasisNames& basis_names) {
    std::size_t n = a.size();
    auto names = names_or_default(a, basis_names);
    TransferData t;
    t.h.assign(n, Vec{});
    std::vector<bool> used(n, false);
    for (const auto& [k, v] : h) {
        if (!t.h[k].empty() && t.h[k] != v)
            fail_validation("ConflictingHomotopy", "h(" + a.label(k) + ") is given twice with different values");
        t.h[k] = v;
        used[k] = true;
        for (const auto& [j, c] : v) used[j] = true;
    }
    t.pi.assign(n, Vec{});
    for (std::size_t k = 0; k < n; ++k) {
        if (used[k]) continue;
        t.pi[k][t.i.size()] = 1;
        t.i.push_back(Vec{{k, Rat(1)}});
        t.class_names.push_back(names[k]);
    }
    return t;
}

Vec AInftyAlgebra::value(const std::vector<std::size_t>& tuple) const {
    if (tuple.size() < 2 || tuple.size() >= m.size()) return {};
    auto it = m[tuple.size()].find(tuple);
    return it == m[tuple.size()].end() ? Vec{} : it->second;
}

namespace {

struct Transfer {
    const DGQuiverAlgebra& a;
    const TransferData& t;
    std::vector<int> deg;

    Vec i_of(std::size_t x) const { return t.i[x]; }
    Vec pi(const Vec& v) const { return apply_map(t.pi, v); }
    Vec h(const Vec& v) const { return apply_map(t.h, v); }

    Vec lambda(const std::vector<std::size_t>& xs) const {
        std::size_t n = xs.size();
        // lam[a][b] for the sub-tuple xs[a..b)
        std::vector<std::vector<Vec>> lam(n + 1, std::vector<Vec>(n + 1));
        auto G = [&](std::size_t lo, std::size_t hi) {
            if (hi - lo == 1) {
                Vec v = i_of(xs[lo]);
                for (auto& [k, c] : v) c = -c;
                return v;
            }
            return h(lam[lo][hi]);
        };
        for (std::size_t len = 2; len <= n; ++len)
            for (std::size_t lo = 0; lo + len <= n; ++lo) {
                std::size_t hi = lo + len;
                Vec out;
                long dx = 0;
                for (std::size_t s = 1; s < len; ++s) {
                    dx += deg[xs[lo + s - 1]];
                    std::size_t tt = len - s;
                    long dg = tt == 1 ? 0 : 1 - static_cast<long>(tt);
                    int sg = sign(static_cast<long>(s) + 1) * sign(dg * dx);
                    axpy(out, sg, a.multiply(G(lo, lo + s), G(lo + s, hi)));
                }
                lam[lo][hi] = std::move(out);
            }
        return lam[0][n];
    }
};

void composable_tuples(const std::vector<std::size_t>& src, const std::vector<std::size_t>& tgt, std::size_t n,
                       std::vector<std::size_t>& cur, std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == n) {
        out.push_back(cur);
        return;
    }
    for (std::size_t x = 0; x < src.size(); ++x) {
        if (!cur.empty() && src[cur.back()] != tgt[x]) continue;
        cur.push_back(x);
        composable_tuples(src, tgt, n, cur, out);
        cur.pop_back();
    }
}

std::string format_tuple(const AInftyAlgebra& A, const std::vector<std::size_t>& xs) {
    std::string s = "(";
    for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? ", " : "") + A.classes[xs[k]];
    return s + ")";
}

}  // namespace

AInftyAlgebra transfer_mn(const DGQuiverAlgebra& a, const TransferData& t, std::size_t n_max, unsigned jobs) {
    if (n_max < 2) n_max = 2;
    AInftyAlgebra A;
    A.n_max = n_max;
    A.classes = t.class_names;
    for (const auto& v : t.i) {
        if (v.empty()) fail_validation("InvalidTransfer", "a class has i = 0");
        std::size_t k = v.begin()->first;
        A.degrees.push_back(a.degree(k));
        A.sources.push_back(a.source(k));
        A.targets.push_back(a.target(k));
    }
    Transfer T{a, t, A.degrees};
    A.m.resize(n_max + 1);
    for (std::size_t n = 2; n <= n_max; ++n) {
        std::vector<std::vector<std::size_t>> tuples;
        std::vector<std::size_t> cur;
        composable_tuples(A.sources, A.targets, n, cur, tuples);
        std::vector<Vec> vals(tuples.size());
        parallel_for(tuples.size(), jobs, [&](std::size_t k) { vals[k] = T.pi(T.lambda(tuples[k])); });
        for (std::size_t k = 0; k < tuples.size(); ++k) {
            if (vals[k].empty()) continue;
            long want = 2 - static_cast<long>(n);
            for (auto x : tuples[k]) want += A.degrees[x];
            for (const auto& [c, v] : vals[k])
                if (A.degrees[c] != want)
                    fail_engine("DegreeMismatch", "m_" + std::to_string(n) + format_tuple(A, tuples[k]) +
                                                      " has a term of the wrong degree");
            A.m[n][tuples[k]] = std::move(vals[k]);
        }
    }
    // sum over r+s+t = N, s >= 2, r+1+t >= 2 of
    // (-1)^(r+st) (-1)^((2-s)(|x_1|+..+|x_r|)) m_{r+1+t}(.., m_s(..), ..)
    for (std::size_t N = 3; N <= n_max + 1; ++N) {
        std::vector<std::vector<std::size_t>> tuples;
        std::vector<std::size_t> cur;
        composable_tuples(A.sources, A.targets, N, cur, tuples);
        std::vector<Vec> bad(tuples.size());
        parallel_for(tuples.size(), jobs, [&](std::size_t k) {
            const auto& xs = tuples[k];
            Vec total;
            for (std::size_t s = 2; s < N; ++s)
                for (std::size_t r = 0; r + s <= N; ++r) {
                    std::size_t tt = N - r - s;
                    std::vector<std::size_t> inner(xs.begin() + static_cast<std::ptrdiff_t>(r),
                                                   xs.begin() + static_cast<std::ptrdiff_t>(r + s));
                    Vec mid = A.value(inner);
                    if (mid.empty()) continue;
                    long dx = 0;
                    for (std::size_t j = 0; j < r; ++j) dx += A.degrees[xs[j]];
                    int sg = sign(static_cast<long>(r + s * tt)) * sign((2 - static_cast<long>(s)) * dx);
                    for (const auto& [c, v] : mid) {
                        std::vector<std::size_t> outer(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(r));
                        outer.push_back(c);
                        outer.insert(outer.end(), xs.begin() + static_cast<std::ptrdiff_t>(r + s), xs.end());
                        axpy(total, sg * v, A.value(outer));
                    }
                }
            bad[k] = std::move(total);
        });
        for (std::size_t k = 0; k < tuples.size(); ++k)
            if (!bad[k].empty())
                fail_engine("SignConvention", "A-infinity identity of arity " + std::to_string(N) + " fails on " +
                                                  format_tuple(A, tuples[k]) + ": " + format_vec(bad[k], A.classes));
        A.identities_checked = N;
    }
    return A;
}

bool check_formality(const DGQuiverAlgebra& a, const TransferData& t, std::size_t n_max) {
    auto A = transfer_mn(a, t, n_max);
    for (std::size_t n = 3; n <= n_max; ++n)
        if (!A.m[n].empty()) return false;
    return true;
}

}  // namespace wc

#include "wallcross/workbench.hpp"

#include "wallcross/errors.hpp"
#include "wallcross/lattice.hpp"

#include <cstdint>
#include <cstdio>
#include <regex>
#include <sstream>

namespace wc {

std::vector<IntVec> WorkbenchInput::rays() const {
    std::vector<IntVec> out;
    for (std::size_t k = 0; k < points.size(); ++k)
        if (!origin || *origin != k) out.push_back(points[k]);
    return out;
}

namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& msg) {
    fail_validation("ParseError", "line " + std::to_string(line) + ": " + msg);
}

bool is_integer(const std::string& s) {
    static const std::regex re("-?[0-9]+");
    return std::regex_match(s, re);
}

bool is_rational(const std::string& s) {
    static const std::regex re("-?[0-9]+(/[0-9]+)?");
    return std::regex_match(s, re);
}

Int to_int(const std::string& s, std::size_t line) {
    if (!is_integer(s)) parse_error(line, "expected an integer, got '" + s + "'");
    return Int(s);
}

Rat to_rat(const std::string& s, std::size_t line) {
    if (!is_rational(s)) parse_error(line, "expected a rational, got '" + s + "'");
    Rat r(s);
    if (r.get_den() == 0) parse_error(line, "zero denominator");
    r.canonicalize();
    return r;
}

std::size_t to_index(const std::string& s, std::size_t line) {
    Int v = to_int(s, line);
    if (v < 0 || !v.fits_ulong_p()) parse_error(line, "expected a nonnegative index, got '" + s + "'");
    return v.get_ui();
}

Path path_of(const GradedQuiver& q, const std::vector<std::string>& words, std::size_t line) {
    std::string text;
    for (const auto& w : words) text += (text.empty() ? "" : " ") + w;
    try {
        return parse_path(q, text);
    } catch (const Error& e) {
        parse_error(line, e.what());
    }
}

// term {("+" | "-") term}, term = [rational] path, or the single token 0.
PathCombination combination(const GradedQuiver& q, const std::vector<std::string>& toks, std::size_t line) {
    PathCombination out;
    if (toks.size() == 1 && toks[0] == "0") return out;
    if (toks.empty()) parse_error(line, "empty combination");
    std::size_t k = 0;
    bool first = true;
    while (k < toks.size()) {
        Rat sign = 1;
        if (toks[k] == "+" || toks[k] == "-") {
            if (toks[k] == "-") sign = -1;
            ++k;
        } else if (!first) {
            parse_error(line, "expected + or - before '" + toks[k] + "'");
        }
        Rat c = 1;
        if (k < toks.size() && is_rational(toks[k])) c = to_rat(toks[k++], line);
        std::vector<std::string> words;
        while (k < toks.size() && toks[k] != "+" && toks[k] != "-") words.push_back(toks[k++]);
        if (words.empty()) parse_error(line, "term without a path");
        out.emplace_back(sign * c, path_of(q, words, line));
        first = false;
    }
    return out;
}

std::string format_combination(const GradedQuiver& q, const PathCombination& c) {
    if (c.empty()) return "0";
    std::string out;
    for (std::size_t k = 0; k < c.size(); ++k) {
        Rat x = c[k].first;
        bool neg = x < 0;
        if (neg) x = -x;
        if (k == 0)
            out += neg ? "- " : "";
        else
            out += neg ? " - " : " + ";
        if (x != 1) out += x.get_str() + " ";
        out += q.format(c[k].second);
    }
    return out;
}

std::string substitute(std::string line, const std::map<std::string, std::string>& values) {
    for (const auto& [k, v] : values) {
        std::string key = "{" + k + "}";
        for (std::size_t pos; (pos = line.find(key)) != std::string::npos;) line.replace(pos, key.size(), v);
    }
    return line;
}

}  // namespace

WorkbenchInput parse_input(const std::string& text, const std::map<std::string, std::string>& params) {
    std::vector<std::string> lines;
    {
        std::istringstream in(text);
        for (std::string l; std::getline(in, l);) {
            auto hash = l.find('#');
            if (hash != std::string::npos) l.erase(hash);
            lines.push_back(l);
        }
    }
    std::map<std::string, std::string> values;
    for (std::size_t n = 0; n < lines.size(); ++n) {
        std::istringstream in(lines[n]);
        std::string head, name, def, extra;
        in >> head;
        if (head != "param") continue;
        if (!(in >> name >> def) || (in >> extra)) parse_error(n + 1, "param takes a name and a default");
        values[name] = def;
    }
    for (const auto& [k, v] : params) {
        if (!values.count(k)) fail_validation("UnknownParam", "the input declares no param '" + k + "'");
        values[k] = v;
    }

    WorkbenchInput w;
    bool have_kind = false, have_rank = false;
    auto& q = w.quiver.quiver;
    for (std::size_t n = 0; n < lines.size(); ++n) {
        std::size_t ln = n + 1;
        std::istringstream in(substitute(lines[n], values));
        std::vector<std::string> t;
        for (std::string s; in >> s;) t.push_back(s);
        if (t.empty() || t[0] == "param") continue;
        const std::string& head = t[0];
        if (head != "kind" && !have_kind) parse_error(ln, "the first statement must be 'kind'");
        auto need_kind = [&](std::initializer_list<InputKind> ks) {
            for (auto k : ks)
                if (w.kind == k) return;
            parse_error(ln, "'" + head + "' is not allowed for this kind");
        };
        if (head == "kind") {
            if (have_kind) parse_error(ln, "duplicate kind");
            if (t.size() != 2) parse_error(ln, "kind takes one word");
            if (t[1] == "fan")
                w.kind = InputKind::Fan;
            else if (t[1] == "configuration")
                w.kind = InputKind::Configuration;
            else if (t[1] == "quiver")
                w.kind = InputKind::Quiver;
            else
                parse_error(ln, "unknown kind '" + t[1] + "'");
            have_kind = true;
        } else if (head == "name") {
            if (t.size() != 2) parse_error(ln, "name takes one word");
            w.name = t[1];
        } else if (head == "rank") {
            need_kind({InputKind::Fan, InputKind::Configuration});
            if (t.size() != 2) parse_error(ln, "rank takes one integer");
            w.rank = to_index(t[1], ln);
            have_rank = true;
        } else if (head == "ray" || head == "point") {
            need_kind({head == "ray" ? InputKind::Fan : InputKind::Configuration});
            if (!have_rank) parse_error(ln, "rank must come before " + head + "s");
            std::size_t m = t.size() - 1;
            bool marked = head == "point" && t.back() == "origin";
            if (marked) --m;
            if (m != w.rank)
                parse_error(ln, head + " has " + std::to_string(m) + " coordinates, rank is " + std::to_string(w.rank));
            IntVec v;
            for (std::size_t k = 1; k <= m; ++k) v.push_back(to_int(t[k], ln));
            if (marked) {
                if (w.origin) parse_error(ln, "a second origin");
                if (!is_zero(v)) parse_error(ln, "the origin must be the zero vector");
                w.origin = w.points.size();
            }
            if (head == "ray" && gcd_of(v) != 1)
                fail_validation("NonPrimitiveRay", "ray " + std::to_string(w.points.size()) + " = " + to_string(v) +
                                                       " is not primitive (line " + std::to_string(ln) + ")");
            w.points.push_back(std::move(v));
        } else if (head == "character") {
            need_kind({InputKind::Fan, InputKind::Configuration});
            if (t.size() < 3) parse_error(ln, "character takes a name and coefficients");
            IntVec c;
            for (std::size_t k = 2; k < t.size(); ++k) c.push_back(to_int(t[k], ln));
            w.characters.emplace_back(t[1], std::move(c));
        } else if (head == "basis") {
            need_kind({InputKind::Fan, InputKind::Configuration});
            for (std::size_t k = 1; k < t.size(); ++k) w.basis.push_back(to_index(t[k], ln));
        } else if (head == "vertices") {
            need_kind({InputKind::Quiver});
            if (!q.vertices.empty()) parse_error(ln, "duplicate vertices");
            for (std::size_t k = 1; k < t.size(); ++k) {
                if (q.vertex_index(t[k])) parse_error(ln, "duplicate vertex '" + t[k] + "'");
                q.vertices.push_back(t[k]);
            }
        } else if (head == "arrow") {
            need_kind({InputKind::Quiver});
            if (t.size() != 5) parse_error(ln, "arrow takes label, source, target, degree");
            if (q.arrow_index(t[1])) parse_error(ln, "duplicate arrow '" + t[1] + "'");
            if (is_rational(t[1]) || t[1] == "+" || t[1] == "-") parse_error(ln, "bad arrow label '" + t[1] + "'");
            auto s = q.vertex_index(t[2]), g = q.vertex_index(t[3]);
            if (!s || !g) parse_error(ln, "unknown vertex");
            Int d = to_int(t[4], ln);
            if (!d.fits_sint_p()) parse_error(ln, "degree out of range");
            q.arrows.push_back(Arrow{t[1], *s, *g, static_cast<int>(d.get_si())});
        } else if (head == "relation") {
            need_kind({InputKind::Quiver});
            auto eq = std::find(t.begin(), t.end(), "=");
            if (eq == t.end()) parse_error(ln, "relation needs '='");
            auto lhs = combination(q, {t.begin() + 1, eq}, ln);
            auto rhs = combination(q, {eq + 1, t.end()}, ln);
            for (auto& [c, p] : rhs) lhs.emplace_back(-c, p);
            if (lhs.empty()) parse_error(ln, "empty relation");
            q.relations.push_back(std::move(lhs));
        } else if (head == "differential") {
            need_kind({InputKind::Quiver});
            if (t.size() < 4 || t[2] != "=") parse_error(ln, "differential takes 'arrow = combination'");
            auto a = q.arrow_index(t[1]);
            if (!a) parse_error(ln, "unknown arrow '" + t[1] + "'");
            for (const auto& [id, c] : w.quiver.differential)
                if (id == *a) parse_error(ln, "second differential for '" + t[1] + "'");
            w.quiver.differential.emplace_back(*a, combination(q, {t.begin() + 3, t.end()}, ln));
        } else if (head == "alias") {
            need_kind({InputKind::Quiver});
            if (t.size() != 3 || !q.arrow_index(t[1])) parse_error(ln, "alias takes a known arrow and a name");
            w.quiver.aliases.emplace_back(t[1], t[2]);
        } else if (head == "label") {
            need_kind({InputKind::Quiver});
            if (t.size() < 2) parse_error(ln, "label takes a path");
            w.quiver.labels.push_back(path_of(q, {t.begin() + 1, t.end()}, ln));
        } else if (head == "homotopy") {
            need_kind({InputKind::Quiver});
            auto arrow = std::find(t.begin(), t.end(), "->");
            if (arrow == t.end() || arrow == t.begin() + 1) parse_error(ln, "homotopy takes 'path -> combination'");
            Path p = path_of(q, {t.begin() + 1, arrow}, ln);
            w.quiver.homotopy.emplace_back(std::move(p), combination(q, {arrow + 1, t.end()}, ln));
        } else {
            parse_error(ln, "unknown statement '" + head + "'");
        }
    }
    if (!have_kind) parse_error(lines.size(), "empty input");
    if (w.kind == InputKind::Quiver) {
        if (q.vertices.empty()) parse_error(lines.size(), "a quiver needs vertices");
        validate_quiver(q);
    } else {
        if (w.points.empty()) parse_error(lines.size(), "no points");
        std::size_t nr = w.rays().size();
        for (const auto& [name, c] : w.characters)
            if (c.size() != nr)
                parse_error(lines.size(), "character '" + name + "' needs " + std::to_string(nr) + " coefficients");
        for (auto b : w.basis)
            if (b >= nr) parse_error(lines.size(), "basis index " + std::to_string(b) + " out of range");
    }
    return w;
}

std::string emit_input(const WorkbenchInput& w) {
    std::ostringstream out;
    const auto& q = w.quiver.quiver;
    switch (w.kind) {
        case InputKind::Fan: out << "kind fan\n"; break;
        case InputKind::Configuration: out << "kind configuration\n"; break;
        case InputKind::Quiver: out << "kind quiver\n"; break;
    }
    if (!w.name.empty()) out << "name " << w.name << "\n";
    if (w.kind != InputKind::Quiver) {
        out << "rank " << w.rank << "\n";
        for (std::size_t k = 0; k < w.points.size(); ++k) {
            out << (w.kind == InputKind::Fan ? "ray" : "point");
            for (const auto& x : w.points[k]) out << ' ' << x.get_str();
            if (w.origin && *w.origin == k) out << " origin";
            out << "\n";
        }
        for (const auto& [name, c] : w.characters) {
            out << "character " << name;
            for (const auto& x : c) out << ' ' << x.get_str();
            out << "\n";
        }
        if (!w.basis.empty()) {
            out << "basis";
            for (auto b : w.basis) out << ' ' << b;
            out << "\n";
        }
        return out.str();
    }
    out << "vertices";
    for (const auto& v : q.vertices) out << ' ' << v;
    out << "\n";
    for (const auto& a : q.arrows)
        out << "arrow " << a.label << ' ' << q.vertices[a.source] << ' ' << q.vertices[a.target] << ' ' << a.degree
            << "\n";
    for (const auto& r : q.relations) out << "relation " << format_combination(q, r) << " = 0\n";
    for (const auto& [a, c] : w.quiver.differential)
        out << "differential " << q.arrows[a].label << " = " << format_combination(q, c) << "\n";
    for (const auto& [a, b] : w.quiver.aliases) out << "alias " << a << ' ' << b << "\n";
    for (const auto& p : w.quiver.labels) out << "label " << q.format(p) << "\n";
    for (const auto& [p, c] : w.quiver.homotopy)
        out << "homotopy " << q.format(p) << " -> " << format_combination(q, c) << "\n";
    return out.str();
}

PointConfiguration configuration_of(const WorkbenchInput& in) {
    if (in.kind == InputKind::Quiver) fail_validation("WrongKind", "a quiver input has no point configuration");
    if (in.kind == InputKind::Fan) return configuration_from_rays(in.points);
    return make_configuration(in.points, in.origin);
}

DGQuiverAlgebra algebra_of(const WorkbenchInput& in) {
    if (in.kind != InputKind::Quiver) fail_validation("WrongKind", "the input is not a quiver");
    std::vector<PathCombination> d(in.quiver.quiver.arrows.size());
    for (const auto& [a, c] : in.quiver.differential) d[a] = c;
    return make_dg_algebra(in.quiver.quiver, std::move(d));
}

BasisNames basis_names(const WorkbenchInput& in, const DGQuiverAlgebra& a) {
    std::map<std::string, std::string> aliases(in.quiver.aliases.begin(), in.quiver.aliases.end());
    BasisNames names;
    for (std::size_t k = 0; k < a.size(); ++k) names.push_back(a.label(k, aliases));
    for (const auto& p : in.quiver.labels) {
        auto v = a.paths.reduce({{Rat(1), p}});
        if (v.size() != 1 || v.begin()->second != 1)
            fail_validation("InvalidLabel", "label '" + a.quiver.format(p) + "' is not a basis element");
        names[v.begin()->first] = a.quiver.format(p, aliases);
    }
    return names;
}

std::optional<TransferData> transfer_of(const WorkbenchInput& in, const DGQuiverAlgebra& a) {
    if (in.quiver.homotopy.empty()) return std::nullopt;
    std::vector<std::pair<std::size_t, Vec>> h;
    for (const auto& [p, c] : in.quiver.homotopy) {
        auto lhs = a.paths.reduce({{Rat(1), p}});
        auto rhs = a.paths.reduce(c);
        if (lhs.empty()) {
            if (!rhs.empty())
                fail_validation("InvalidHomotopy", "h(" + a.quiver.format(p) + "): the path is zero but the value is not");
            continue;
        }
        if (lhs.size() != 1)
            fail_validation("InvalidHomotopy", "h(" + a.quiver.format(p) + "): the path is not a basis element");
        Rat s = lhs.begin()->second;
        for (auto& [k, x] : rhs) x /= s;
        h.emplace_back(lhs.begin()->first, std::move(rhs));
    }
    return standard_transfer(a, h, basis_names(in, a));
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace wc

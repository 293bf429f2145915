#pragma once

#include "wallcross/arith.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>

namespace wc {

struct Arrow {
    std::string label;
    std::size_t source = 0, target = 0;
    int degree = 0;
};

// A path in written order: arrows[0] is traversed last, so `b a` means a
// then b. The empty path is the idempotent at `vertex`; for nonempty paths
// `vertex` is 0 and ignored.
struct Path {
    std::vector<std::size_t> arrows;
    std::size_t vertex = 0;

    static Path idempotent(std::size_t v) { return Path{{}, v}; }
    static Path word(std::vector<std::size_t> a) { return Path{std::move(a), 0}; }
    bool empty() const { return arrows.empty(); }
};

// Length first, then lexicographic in arrow declaration order.
bool operator<(const Path& x, const Path& y);
bool operator==(const Path& x, const Path& y);

using PathCombination = std::vector<std::pair<Rat, Path>>;

struct GradedQuiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    std::vector<PathCombination> relations;  // each combination is zero

    std::size_t source(const Path& p) const;
    std::size_t target(const Path& p) const;
    int degree(const Path& p) const;
    bool composable(const Path& p) const;
    std::optional<std::size_t> arrow_index(const std::string& label) const;
    std::optional<std::size_t> vertex_index(const std::string& name) const;
    // `aliases` renames arrows for display only.
    std::string format(const Path& p, const std::map<std::string, std::string>& aliases = {}) const;
};

// Validation errors "UnknownArrow", "UnknownVertex", "NotComposable".
// Words are written left to right as in `format`; "e_v" or "e<name>" is an
// idempotent.
Path parse_path(const GradedQuiver& q, const std::string& text);

// Validation "InhomogeneousRelation" naming the first bad relation.
void validate_quiver(const GradedQuiver& q);

struct RewriteRule {
    Path lead;
    PathCombination rest;  // lead -> rest
};

using Vec = std::map<std::size_t, Rat>;  // sparse vector over a basis

struct PathBasis {
    std::vector<RewriteRule> rules;
    std::vector<Path> basis;               // deglex order
    std::map<Path, std::size_t> index;

    std::map<Path, Rat> normal_form(const PathCombination& c) const;
    Vec reduce(const PathCombination& c) const;
};

// Rewrites leading terms (deglex) to the rest. With `complete` unresolved
// critical pairs become new rules; otherwise, or after max_steps new rules,
// engine error "NonConfluent". An infinite basis is engine error
// "InfiniteBasis".
PathBasis normalize_paths(const GradedQuiver& q, std::size_t max_steps = 256, bool complete = true,
                          std::size_t max_basis = 20000);

struct DGQuiverAlgebra {
    GradedQuiver quiver;
    PathBasis paths;
    std::vector<PathCombination> arrow_differential;  // one per arrow
    std::vector<Vec> d;                               // on basis elements
    std::map<std::pair<std::size_t, std::size_t>, Vec> products;  // composable pairs, nonzero only

    std::size_t size() const { return paths.basis.size(); }
    int degree(std::size_t i) const { return quiver.degree(paths.basis[i]); }
    std::size_t source(std::size_t i) const { return quiver.source(paths.basis[i]); }
    std::size_t target(std::size_t i) const { return quiver.target(paths.basis[i]); }
    std::string label(std::size_t i, const std::map<std::string, std::string>& aliases = {}) const;

    Vec multiply(const Vec& x, const Vec& y) const;
    Vec differential(const Vec& x) const;
};

// Missing arrow differentials are zero.
DGQuiverAlgebra make_dg_algebra(GradedQuiver q, std::vector<PathCombination> arrow_differential = {},
                                std::size_t max_steps = 256);

struct Verdict {
    bool ok = true;
    std::string violation;
};

// Degrees and endpoints of d, d of every relation, d^2 = 0, Leibniz.
Verdict validate_dg(const DGQuiverAlgebra& a);

struct TransferData {
    std::vector<std::string> class_names;
    std::vector<Vec> i;   // per class, over the algebra basis
    std::vector<Vec> pi;  // per basis element, over classes
    std::vector<Vec> h;   // per basis element, over the basis
};

// Degrees, chain maps, pi i = 1, i pi = 1 - dh - hd, h^2 = 0.
Verdict validate_transfer(const DGQuiverAlgebra& a, const TransferData& t);

// Display names for classes come from `names` (one per basis element, default
// the normal form labels).
using BasisNames = std::vector<std::string>;

// Splitting by exact elimination in basis order.
TransferData auto_transfer(const DGQuiverAlgebra& a, const BasisNames& names = {});

// h given on some basis elements, zero on the rest. The classes are the
// basis elements outside the support of h (source and image) and pi is the
// coordinate projection onto them.
TransferData standard_transfer(const DGQuiverAlgebra& a, const std::vector<std::pair<std::size_t, Vec>>& h,
                               const BasisNames& names = {});

std::string format_vec(const Vec& v, const std::vector<std::string>& names);

struct AInftyAlgebra {
    std::vector<std::string> classes;
    std::vector<int> degrees;
    std::vector<std::size_t> sources, targets;
    std::size_t n_max = 2;
    std::size_t identities_checked = 0;  // highest arity of the identity check
    // m[n] for 2 <= n <= n_max, keyed by class tuples, nonzero values only.
    std::vector<std::map<std::vector<std::size_t>, Vec>> m;

    Vec value(const std::vector<std::size_t>& tuple) const;
};

// Tree sum with operators lambda_n = sum (-1)^(s+1) lambda_2(G lambda_s, G lambda_t),
// G lambda_1 = -i, G lambda_k = h lambda_k, Koszul signs on tensor maps;
// m_n = pi lambda_n. Identities are checked for arities 3..n_max+1; a
// failure is engine error "SignConvention" naming the tuple.
AInftyAlgebra transfer_mn(const DGQuiverAlgebra& a, const TransferData& t, std::size_t n_max, unsigned jobs = 1);

bool check_formality(const DGQuiverAlgebra& a, const TransferData& t, std::size_t n_max);

}  // namespace wc

#pragma once

#include "wallcross/mori.hpp"

#include <optional>
#include <string>

namespace wc {

// Exponent vector of z^alpha for every point of A (the origin gives 0).
std::vector<IntVec> hori_vafa_monomials(const PointConfiguration& config);
std::string format_monomial(const IntVec& exponent);

struct MonotonePath {
    std::vector<std::size_t> vertices;  // chamber ids, <e0, phi> increasing
    std::vector<std::size_t> edges;     // wall ids
    RatVec certificate;                 // functional xi on Q^A
    std::vector<Int> multiplicities;    // a_i
    std::vector<Int> gcds;              // g_i
};

Int e0_of(const SecondaryFan& fan, std::size_t chamber);
IntVec edge_vector(const SecondaryFan& fan, std::size_t from, std::size_t to);

// All coherent monotone edge paths from the e0-minimal face to the maximum.
std::vector<MonotonePath> monotone_paths(const SecondaryFan& fan, unsigned jobs = 1);

// Direct check that xi selects exactly this path (no LP involved).
bool certificate_selects(const SecondaryFan& fan, const MonotonePath& path, const RatVec& xi);

std::vector<Int> multiplicities(const SecondaryFan& fan, const MonotonePath& path);

// A circuit is degenerate when its relation vector is divisible, or its
// support does not span the lattice affinely.
bool degenerate_edge(const SecondaryFan& fan, std::size_t wall);

struct Annulus {
    std::size_t edge = 0;               // position in the path
    std::size_t wall = 0;
    Int a;                              // radial regions
    Int critical_per_region;
    bool degenerate = false;
    Int b_side_rank;                    // w_rank_k0 of the matching wall, for reference
};

struct RadarScreen {
    std::vector<Annulus> annuli;
    Int total_critical() const;
};

RadarScreen radar_screen(const MonotonePath& path, const SecondaryFan& fan);

// The straight line run read off a path certificate: it visits the path
// backwards. Error "NonGenericPath" if the line is not generic; with
// `perturbation` k the start is moved by perturb(start, k) first.
MoriRun run_of_path(const SecondaryFan& fan, const MonotonePath& path, std::optional<unsigned> perturbation = {});

struct MatchEntry {
    std::size_t index = 0;
    Int a, critical_per_region, minus_mu, w_rank;
    bool support_equal = false;
    bool ok = false;
};

struct MatchReport {
    bool ok = false;
    std::optional<std::size_t> mismatch;
    std::string reason;
    std::vector<MatchEntry> entries;
};

MatchReport match_path_to_run(const SecondaryFan& fan, const MonotonePath& path, const MoriRun& run);

struct PathStableComplexes {
    std::size_t target = 0;                     // index into path.vertices
    std::vector<std::vector<DualCell>> complexes;
    std::vector<bool> persistent;               // every bounded cell's face still in the target
    // Faces carrying the bounded cells in the target triangulation (the
    // smallest face whose hull contains the original face); empty if some
    // face has no carrier.
    std::vector<std::vector<Cell>> pushed;
    // 1 disjoint, 0 meeting, -1 undefined (no push-forward). `disjoint`
    // ignores contact in isolated vertices of Y (dual to maximal simplices);
    // `strictly_disjoint` does not.
    std::vector<std::vector<int>> disjoint;
    std::vector<std::vector<int>> strictly_disjoint;
};

// Pushes every edge's stable complex forward to Y of path.vertices[target];
// target defaults to the last vertex.
PathStableComplexes path_stable_complexes(const SecondaryFan& fan, const MonotonePath& path,
                                          std::optional<std::size_t> target = std::nullopt);

// Smallest face of t whose convex hull contains the points of f, if any.
std::optional<Cell> carrier(const PointConfiguration& config, const Triangulation& t, const Cell& f);

// Two dual cells meet iff the union of their faces lies in one simplex.
bool dual_cells_disjoint(const Triangulation& t, const Cell& f1, const Cell& f2);

}  // namespace wc

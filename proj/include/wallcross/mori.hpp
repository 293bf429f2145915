#pragma once

#include "wallcross/secondary_fan.hpp"

#include <optional>
#include <string>

namespace wc {

// The fixed-locus GIT problem attached to a wall.
struct SubProblem {
    Cell zero_points;                   // rays i with lambda_i = 0, as point indices of A
    IntMatrix lattice;                  // columns: a basis of lambda-perp in G^
    IntMatrix beta;                     // beta'_i in that basis, one column per zero ray
    RatVec alpha;                       // interior wall character, G^ coordinates
    Int torsion = 1;                    // index of span(beta') in lambda-perp
    std::vector<IntVec> points;         // rays of W (rows of the kernel of beta')
    RatVec heights;                     // lift of alpha to the rays of W
    std::size_t dimension = 0;          // dim W
    bool empty = false;                 // alpha outside the span of beta': W is empty
};

struct WallData {
    std::size_t wall_id = 0;
    std::size_t from = 0, to = 0;       // chambers
    IntVec lambda;                      // weights on the rays, <lambda, to> >= 0
    Int mu;                             // -<lambda, K>
    SubProblem sub;
    Int w_rank_k0;
};

// Error "NotIncident".
WallData wall_data(const SecondaryFan& fan, std::size_t wall, std::size_t from);

// Sum of volumes of simplices through the origin. Error "NotFanType".
Int rank_k0(const SecondaryFan& fan, const Chamber& c);

// Star volume of the origin in the regular subdivision of (points, 0) under
// the given heights. Used for W.
Int star_volume(const std::vector<IntVec>& points, const RatVec& heights);

struct Crossing {
    WallData wall;
    Rat t;
};

struct MoriRun {
    RatVec start, direction;
    std::vector<std::size_t> chambers;  // visited in order; the last is Outside
    std::vector<Crossing> crossings;
    bool valid = true;                  // every mu <= 0
    bool exited = false;                // reached a chamber not using the origin
};

// Errors: "NonGenericPath", "StartNotInChamber", "NoExit".
MoriRun straight_line_run(const SecondaryFan& fan, const RatVec& start, const RatVec& direction);

// The sub-run that starts inside chamber c (which must be visited).
MoriRun restrict_run(const MoriRun& run, std::size_t chamber);

struct NefFanoStart {
    std::size_t chamber;
    MoriRun run;
};

// Aborts with engine error "NoNefFanoRun" if every candidate line fails.
NefFanoStart find_nef_fano_start(const SecondaryFan& fan, std::size_t target);

// Deterministic rational perturbation used by the CLI --perturb flag.
RatVec perturb(const RatVec& v, unsigned k);

struct TreeVertex {
    RatVec point;
    std::optional<std::size_t> wall;    // main-line vertices: wall crossed here
    std::optional<std::size_t> from;    // chamber before the crossing
};

// The open set {base + s*dir : lo < s < hi}; a missing bound is infinite.
// tail sits at s = lo and head at s = hi when present.
struct TreeEdge {
    RatVec base, dir;
    std::optional<Rat> lo, hi;
    std::optional<std::size_t> tail, head;
    char mark = '+';
};

struct MoriTree {
    std::vector<TreeVertex> vertices;
    std::vector<TreeEdge> edges;
    std::vector<std::size_t> main_line;  // vertex ids in flow order
    std::size_t phase = 0;               // chamber of the stack the tree is for
};

struct TreeVerdict {
    bool ok = true;
    std::string violation;
};

// Main line through every crossing of the run's line, a minus chain from the
// exit vertex down to the origin, and plus rays off that chain.
MoriTree build_run_tree(const SecondaryFan& fan, const MoriRun& run, std::size_t phase);

TreeVerdict validate_mori_tree(const MoriTree& tree, const SecondaryFan& fan);

}  // namespace wc

#pragma once

#include "wallcross/arith.hpp"

#include <optional>
#include <set>

namespace wc {

using Cell = std::vector<int>;  // sorted point indices

struct PointConfiguration {
    std::size_t dim = 0;
    std::vector<IntVec> points;
    std::optional<std::size_t> origin;
    // Facets of conv(A) as (normal, offset) with normal.x + offset >= 0 on Q.
    std::vector<IntVec> hull;

    std::size_t size() const { return points.size(); }
    IntVec homogeneous(std::size_t i) const;  // (p, 1)
    bool on_boundary(const Cell& face) const;
};

// Validates distinct points spanning the lattice affinely.
// Errors: "DuplicatePoint", "DimensionMismatch", "NotFullDimensional".
PointConfiguration make_configuration(const std::vector<IntVec>& points,
                                      std::optional<std::size_t> origin);
// Rays followed by the origin as the last point.
PointConfiguration configuration_from_rays(const std::vector<IntVec>& rays);

struct Circuit {
    Cell support;
    IntVec relation;  // over all of A, zero off the support; first nonzero entry positive
    Cell positive, negative;
    Cell interior;    // points of A inside conv(support) but not in it
    std::pair<std::size_t, std::size_t> signature() const {
        return {positive.size(), negative.size()};
    }
    // Triangulations of conv(support): Z \ {z} for z in the chosen side.
    std::vector<Cell> side(bool plus) const;
};

std::vector<Circuit> circuits(const PointConfiguration& config);

// Primitive affine dependence on a point set with a one dimensional
// relation space, or nullopt.
std::optional<IntVec> affine_relation(const PointConfiguration& config, const Cell& pts);

struct Subdivision {
    std::vector<Cell> cells;
    bool is_triangulation(std::size_t dim) const;
};

struct Triangulation {
    std::vector<Cell> simplices;   // sorted, each sorted
    Cell used_points;
    IntVec volume_vector;          // phi_T
    RatVec weight_certificate;     // heights reproducing T, empty if unknown
    bool operator==(const Triangulation& o) const { return simplices == o.simplices; }
    bool operator<(const Triangulation& o) const { return simplices < o.simplices; }
    bool uses(std::size_t i) const;
};

Int simplex_volume(const PointConfiguration& config, const Cell& s);
Int configuration_volume(const PointConfiguration& config);

Subdivision regular_subdivision(const PointConfiguration& config, const RatVec& heights);

// Fills used points and the volume vector.
Triangulation make_triangulation(const PointConfiguration& config, std::vector<Cell> simplices);
IntVec volume_vector(const PointConfiguration& config, const std::vector<Cell>& simplices);

// Strict chamber constraints c.h > 0 on heights h (primitive, deduplicated,
// sorted). Each is an affine relation on A.
std::vector<IntVec> chamber_constraints(const PointConfiguration& config, const Triangulation& t);

// Heights in the open chamber of t, or nullopt if t is not regular.
std::optional<RatVec> regularity_certificate(const PointConfiguration& config,
                                             const Triangulation& t);

struct EnumerationLimits {
    std::size_t max_points = 12;
    std::size_t max_dim = 4;
};

// Breadth-first search over the regular flip graph. Error: "TooLarge".
std::vector<Triangulation> regular_triangulations(const PointConfiguration& config,
                                                  const EnumerationLimits& lim = {},
                                                  unsigned jobs = 1);

// Error "NotFlippable".
Triangulation flip(const PointConfiguration& config, const Triangulation& t, const Circuit& c);
bool flippable(const Triangulation& t, const Circuit& c);

struct FlipNeighbor {
    std::size_t circuit;
    Triangulation result;
};
std::vector<FlipNeighbor> flip_neighbors(const PointConfiguration& config, const Triangulation& t,
                                         const std::vector<Circuit>& cs);

struct DualCell {
    Cell face;          // face of T this cell is dual to
    std::size_t dim;    // d - dim(face)
    bool bounded;
    Int weight;         // lattice volume of the face
};

struct TropicalComplex {
    std::vector<DualCell> cells;
    std::vector<std::pair<std::size_t, std::size_t>> adjacency;  // (i, j): face_i is a facet of face_j
    std::size_t count(std::size_t dim) const;
    std::size_t count(std::size_t dim, bool bounded) const;
};

// All faces of t with at least two vertices, sorted.
std::vector<Cell> faces_of(const Triangulation& t);
Int face_volume(const PointConfiguration& config, const Cell& face);
TropicalComplex dual_complex(const PointConfiguration& config, const Triangulation& t);

// Dual cells of simplices present in t_to but not in t_from, including the
// regions dual to newly used points. Error "NotAdjacent".
std::vector<DualCell> stable_complex(const PointConfiguration& config, const Triangulation& t_from,
                                     const Triangulation& t_to);

}  // namespace wc

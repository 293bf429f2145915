#pragma once

#include "wallcross/lattice.hpp"
#include "wallcross/triangulation.hpp"

#include <optional>

namespace wc {

struct StackyFan {
    std::vector<int> ray_points;        // indices into A of the rays used
    std::vector<Cell> cones;            // maximal cones, as point indices (origin dropped)
    std::vector<Int> multiplicities;    // lattice index per cone
};

struct Chamber {
    std::size_t id = 0;
    Triangulation tri;
    std::vector<IntVec> constraints;    // strict inequalities on heights in Q^A
    std::vector<std::size_t> walls;     // incident wall ids
    RatVec interior;                    // a point of the open cone, in G^ coordinates
    std::vector<IntVec> rays;           // primitive generators, G^ coordinates
    bool uses_origin = false;
};

struct Wall {
    std::size_t id = 0;
    std::size_t a = 0, b = 0;           // chambers, a < b
    std::size_t circuit = 0;
    IntVec normal;                      // relation on A, positive on chamber a
    IntVec lambda;                      // weights on the rays, positive on chamber b
    RatVec covector;                    // lambda as a linear form on G^, positive on b
};

enum class CellKind { Chamber, Wall, Lower };

struct Location {
    CellKind kind = CellKind::Lower;
    std::size_t codim = 0;
    std::vector<std::size_t> chambers;  // every chamber whose closure contains the point
    std::optional<std::size_t> wall;
    bool outside = false;               // no containing chamber uses the origin
};

struct SecondaryFan {
    PointConfiguration config;
    DivisorSequence ds;                 // built from the non-origin points
    std::vector<int> ray_of_point;      // -1 for the origin
    RatMatrix projection;               // rank_G x |A|
    std::vector<Circuit> circuits;
    std::vector<Chamber> chambers;
    std::vector<Wall> walls;

    std::size_t origin() const { return *config.origin; }
    std::size_t rank() const { return ds.rank_G; }
    RatVec project(const RatVec& heights) const;
    // Heights (a, 0) over A whose projection is chi.
    RatVec heights_of(const RatVec& chi) const;
    // Linear form on G^ induced by a relation on A.
    RatVec form_of(const IntVec& relation) const;
    RatVec anticanonical() const;       // -K in G^ coordinates
    const Wall& wall_between(std::size_t c1, std::size_t c2) const;
    std::optional<std::size_t> chamber_of(const Triangulation& t) const;
    // Walls of chamber c as forms that are positive inside c.
    std::vector<std::pair<std::size_t, RatVec>> facets(std::size_t c) const;
};

// Errors: "NoOrigin" (validation), propagated "TooLarge".
SecondaryFan secondary_fan(const PointConfiguration& config, const EnumerationLimits& lim = {},
                           unsigned jobs = 1);

bool is_fan_type(const Chamber& c);
std::optional<StackyFan> fan_type(const SecondaryFan& fan, const Chamber& c);

Location locate_chamber(const SecondaryFan& fan, const RatVec& chi);

// Dimension of the smallest cone containing chi.
std::size_t cone_dimension(const SecondaryFan& fan, const RatVec& chi);

// A cone of the fan, as the set of global ray ids, with its dimension.
struct FanCone {
    std::vector<std::size_t> rays;
    std::size_t dim = 0;
};

// The face poset of the complete fan in G^.
struct FanFaces {
    std::vector<IntVec> rays;
    std::vector<FanCone> cones;  // every nonzero cone, sorted by (dim, rays)
    std::optional<std::size_t> find(const std::vector<std::size_t>& rays) const;
    // Cones of dimension dim(c) - 1 contained in c, and of dim(c) + 1 containing c.
    std::vector<std::size_t> facets_of(std::size_t c) const;
    std::vector<std::size_t> cofacets_of(std::size_t c) const;
    RatVec relative_interior_point(std::size_t c) const;
};

FanFaces fan_faces(const SecondaryFan& fan);

}  // namespace wc

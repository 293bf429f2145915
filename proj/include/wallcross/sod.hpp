#pragma once

#include "wallcross/mori.hpp"

#include <optional>
#include <string>

namespace wc {

enum class ComponentKind { StackChamber, WallPiece, Equivalence };

struct SODComponent {
    ComponentKind kind = ComponentKind::WallPiece;
    std::size_t chamber = 0;            // StackChamber; for wall pieces the side crossed from
    std::size_t wall = 0;               // WallPiece / Equivalence
    std::size_t copy = 0;               // 1..|mu|
    Int twist;                          // raw twist: -d - (copy - 1) for mu < 0
    Int normalized_twist;               // twist reduced into mu+1..0
    Int rank;                           // K0 rank carried by this component
    std::string label;
};

struct SOD {
    std::size_t source = 0;             // chamber whose category is decomposed
    std::vector<SODComponent> components;
    std::vector<Int> d_choices;
    bool attached_to_target = false;    // mu > 0: the pieces decompose the far side
};

// One wall crossing out of `from` (the chamber of wd.from).
SOD wall_sod(const SecondaryFan& fan, const WallData& wd, const Int& d);

// Blocks in reverse crossing order, the terminal chamber first when the run
// stays inside the effective cone. Error "NotAMoriRun" for a run with mu > 0.
// Missing d choices default to 0.
SOD run_sod(const SecondaryFan& fan, const MoriRun& run, std::vector<Int> d_choices = {});

// Sum of component ranks against rank K0 of the source chamber.
bool k0_check(const SOD& sod, const SecondaryFan& fan);

// Label of a wall piece seen from chamber `source`, without the twist:
// O_{D_s} (pulled back) for one positive weight, O_{D_a∩D_b} for several,
// and the pulled back line bundle class for none.
std::string wall_piece_base(const SecondaryFan& fan, std::size_t source, const WallData& wd);

// Pullback of the toric divisor of point `ray` from chamber `from` to
// chamber `source`, as coefficients per point of A (zero off the fan).
RatVec pullback_divisor(const SecondaryFan& fan, std::size_t source, std::size_t from, std::size_t ray);

std::string format_divisor(const RatVec& coefficients);

struct ExceptionalObject {
    std::string label;
    std::size_t wall = 0;
    bool from_chamber = false;
};

// Refines the decomposition of the tree's run, restricted to the tree's
// phase, until every piece has rank one. Positive dimensional fixed loci
// recurse into their own secondary fan; a finite group of order t gives t
// characters.
std::vector<ExceptionalObject> exceptional_collection(const MoriTree& tree, const SecondaryFan& fan);
std::vector<ExceptionalObject> exceptional_collection(const SOD& sod, const SecondaryFan& fan);

// The t characters of a finite abelian group of order t on one object.
std::vector<std::string> expand_characters(const std::string& base, const Int& order);

}  // namespace wc

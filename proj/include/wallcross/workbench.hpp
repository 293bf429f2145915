#pragma once

#include "wallcross/ainfty.hpp"
#include "wallcross/triangulation.hpp"

#include <map>
#include <optional>
#include <string>

namespace wc {

enum class InputKind { Fan, Configuration, Quiver };

struct QuiverInput {
    GradedQuiver quiver;
    std::vector<std::pair<std::size_t, PathCombination>> differential;  // arrow id, d(arrow)
    std::vector<std::pair<std::string, std::string>> aliases;
    std::vector<std::pair<Path, PathCombination>> homotopy;              // h(path) = combination
    std::vector<Path> labels;                                            // preferred display paths
};

struct WorkbenchInput {
    InputKind kind = InputKind::Fan;
    std::string name;
    std::size_t rank = 0;
    std::vector<IntVec> points;                  // rays for kind fan
    std::optional<std::size_t> origin;           // kind configuration
    // Named characters as divisor coefficients, one per ray.
    std::vector<std::pair<std::string, IntVec>> characters;
    std::vector<std::size_t> basis;              // ray indices whose classes form a basis of G^
    QuiverInput quiver;

    // Rays: the points without the origin, in order.
    std::vector<IntVec> rays() const;
};

// Lines `param <name> <default>` declare `{name}` placeholders; `params`
// overrides the defaults. Malformed input is Validation "ParseError" with a
// line number; a non-primitive ray is Validation "NonPrimitiveRay".
WorkbenchInput parse_input(const std::string& text, const std::map<std::string, std::string>& params = {});

// Canonical form: parse_input(emit_input(x)) emits the same text.
std::string emit_input(const WorkbenchInput& in);

PointConfiguration configuration_of(const WorkbenchInput& in);
DGQuiverAlgebra algebra_of(const WorkbenchInput& in);
// The homotopy lines as a standard transfer, or nullopt if there are none.
std::optional<TransferData> transfer_of(const WorkbenchInput& in, const DGQuiverAlgebra& a);
// Display name per basis element: a `label` path whose normal form is that
// element, else the normal form itself; arrows renamed by `alias`.
BasisNames basis_names(const WorkbenchInput& in, const DGQuiverAlgebra& a);

// Fixtures shipped with the library (fixtures/*.txt).
std::optional<std::string> builtin_fixture(const std::string& name);
std::vector<std::string> builtin_fixture_names();

// 64-bit FNV-1a as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace wc

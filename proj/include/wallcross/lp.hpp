#pragma once

#include "wallcross/arith.hpp"

#include <optional>

namespace wc {

// Homogeneous system over Q^n: strict rows a.x > 0, weak rows a.x >= 0,
// equality rows a.x = 0.
struct LinearSystem {
    std::size_t nvars = 0;
    std::vector<RatVec> strict;
    std::vector<RatVec> weak;
    std::vector<RatVec> equal;
};

// Maximizes a shared slack eps (capped at 1) with x in [-1,1]^n. Returns a
// witness x satisfying every row exactly iff the optimum is positive.
std::optional<RatVec> strictly_feasible(const LinearSystem& sys);

}  // namespace wc

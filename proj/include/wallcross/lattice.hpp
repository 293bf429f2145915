#pragma once

#include "wallcross/arith.hpp"

#include <optional>

namespace wc {

struct SmithForm {
    IntMatrix U, D, V;  // U * m * V == D
    std::size_t rank = 0;
};

// Deterministic pivoting: smallest nonzero |entry|, first in row-major order.
SmithForm smith_normal_form(const IntMatrix& m);

// Divides by the gcd of the entries. Throws Validation "ZeroVector" on 0.
IntVec primitive(const IntVec& v);

// Saturated integer basis of {x : m x = 0}, as columns.
IntMatrix integer_kernel(const IntMatrix& m);

// Rank over Q.
std::size_t rank_of(const RatMatrix& m);
std::size_t rank_of(const IntMatrix& m);

// Basis of the rational nullspace, one vector per free column (RREF order).
std::vector<RatVec> rational_kernel(const RatMatrix& m);

// Some rational solution of m x = b, or nullopt.
std::optional<RatVec> rational_solve(const RatMatrix& m, const RatVec& b);

// |det| of a square integer matrix.
Int abs_det(const IntMatrix& m);

// gcd of all k x k minors of a d x k integer matrix of rank k: the lattice
// index of its column span inside the saturation.
Int lattice_index(const IntMatrix& m);

// The sequence 0 -> M -> Z^n -> G^ -> 0 for a list of primitive rays.
struct DivisorSequence {
    std::size_t dim = 0;                // rank of N
    std::vector<IntVec> rays;           // v_i
    std::size_t rank_M = 0;
    std::size_t rank_G = 0;             // free rank of G^
    std::vector<Int> torsion;           // invariant factors > 1
    IntMatrix delta;                    // n x dim, rows are the rays
    IntMatrix gamma;                    // rank_G x n, free part of the cokernel map
    IntMatrix gamma_torsion;            // one row per torsion factor (entries mod factor)
    std::vector<IntVec> beta;           // beta_i = gamma e_i
    IntVec anticanonical;               // -K = sum beta_i
    IntMatrix U, Uinv;                  // from the Smith form of delta

    std::size_t n() const { return rays.size(); }

    // Characters are rational vectors in free G^ coordinates.
    RatVec character_of(const RatVec& a) const;
    // A rational a with gamma a = chi.
    RatVec lift(const RatVec& chi) const;
    // Cocharacters are integer relations lambda (sum lambda_i v_i = 0).
    // Returns the covector c with <lambda, chi> = c . chi.
    RatVec covector(const IntVec& lambda) const;
    Rat pair(const IntVec& lambda, const RatVec& chi) const;
    RatVec anticanonical_rat() const;
};

// Validation errors: "NonPrimitiveRay", "ZeroVector", "DimensionMismatch".
DivisorSequence build_divisor_sequence(const std::vector<IntVec>& rays);

}  // namespace wc

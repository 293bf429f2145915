#include "wallcross/lattice.hpp"

#include "wallcross/errors.hpp"

#include <utility>

namespace wc {

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
// row[dst] += q * row[src]
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += q * m(src, j);
}
void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += q * m(i, src);
}
void neg_row(IntMatrix& m, std::size_t r) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
    SmithForm s;
    s.D = m;
    s.U = IntMatrix::identity(m.rows());
    s.V = IntMatrix::identity(m.cols());
    IntMatrix& D = s.D;
    const std::size_t R = m.rows(), C = m.cols();
    std::size_t t = 0;
    for (; t < std::min(R, C); ++t) {
        // pivot search
        bool found = false;
        std::size_t pi = 0, pj = 0;
        Int best;
        for (std::size_t i = t; i < R; ++i)
            for (std::size_t j = t; j < C; ++j)
                if (D(i, j) != 0 && (!found || abs(D(i, j)) < best)) {
                    found = true;
                    best = abs(D(i, j));
                    pi = i;
                    pj = j;
                }
        if (!found) break;
        swap_rows(D, t, pi);
        swap_rows(s.U, t, pi);
        swap_cols(D, t, pj);
        swap_cols(s.V, t, pj);
        for (;;) {
            bool changed = false;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (D(i, t) == 0) continue;
                Int q = floor_div(D(i, t), D(t, t));
                add_row(D, i, t, -q);
                add_row(s.U, i, t, -q);
                if (D(i, t) != 0) {
                    swap_rows(D, t, i);
                    swap_rows(s.U, t, i);
                    changed = true;
                }
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (D(t, j) == 0) continue;
                Int q = floor_div(D(t, j), D(t, t));
                add_col(D, j, t, -q);
                add_col(s.V, j, t, -q);
                if (D(t, j) != 0) {
                    swap_cols(D, t, j);
                    swap_cols(s.V, t, j);
                    changed = true;
                }
            }
            if (changed) continue;
            bool clean = true;
            for (std::size_t i = t + 1; i < R && clean; ++i)
                if (D(i, t) != 0) clean = false;
            for (std::size_t j = t + 1; j < C && clean; ++j)
                if (D(t, j) != 0) clean = false;
            if (!clean) continue;
            // divisibility of the remaining block
            bool fixed = false;
            for (std::size_t i = t + 1; i < R && !fixed; ++i)
                for (std::size_t j = t + 1; j < C && !fixed; ++j) {
                    Int r;
                    mpz_fdiv_r(r.get_mpz_t(), D(i, j).get_mpz_t(), D(t, t).get_mpz_t());
                    if (r != 0) {
                        add_row(D, t, i, Int(1));
                        add_row(s.U, t, i, Int(1));
                        fixed = true;
                    }
                }
            if (!fixed) break;
        }
        if (D(t, t) < 0) {
            neg_row(D, t);
            neg_row(s.U, t);
        }
    }
    s.rank = t;
    return s;
}

IntVec primitive(const IntVec& v) {
    Int g = gcd_of(v);
    if (g == 0) fail_validation("ZeroVector", "primitive() of the zero vector");
    IntVec out(v);
    for (auto& x : out) x /= g;
    return out;
}

IntMatrix integer_kernel(const IntMatrix& m) {
    SmithForm s = smith_normal_form(m);
    std::size_t k = m.cols() - s.rank;
    IntMatrix ker(m.cols(), k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < m.cols(); ++i) ker(i, j) = s.V(i, s.rank + j);
    return ker;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& a) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c) == 0) ++p;
        if (p == a.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
        Rat inv = 1 / a(r, c);
        for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c) == 0) continue;
            Rat f = a(i, c);
            for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

}  // namespace

std::size_t rank_of(const RatMatrix& m) {
    RatMatrix a = m;
    return rref(a).size();
}

std::size_t rank_of(const IntMatrix& m) { return rank_of(to_rat(m)); }

std::vector<RatVec> rational_kernel(const RatMatrix& m) {
    RatMatrix a = m;
    auto piv = rref(a);
    std::vector<bool> is_piv(m.cols(), false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<RatVec> out;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_piv[f]) continue;
        RatVec v(m.cols(), Rat(0));
        v[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a(r, f);
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<RatVec> rational_solve(const RatMatrix& m, const RatVec& b) {
    RatMatrix a(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
        a(i, m.cols()) = b[i];
    }
    auto piv = rref(a);
    if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
    RatVec x(m.cols(), Rat(0));
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = a(r, m.cols());
    return x;
}

Int abs_det(const IntMatrix& m) {
    RatMatrix a = to_rat(m);
    const std::size_t n = a.rows();
    Rat det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c) == 0) continue;
            Rat f = a(i, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return abs(det.get_num());
}

Int lattice_index(const IntMatrix& m) {
    SmithForm s = smith_normal_form(m);
    Int p = 1;
    for (std::size_t i = 0; i < s.rank; ++i) p *= s.D(i, i);
    return p;
}

RatVec DivisorSequence::character_of(const RatVec& a) const {
    return to_rat(gamma).apply(a);
}

RatVec DivisorSequence::lift(const RatVec& chi) const {
    RatVec y(n(), Rat(0));
    for (std::size_t j = 0; j < rank_G; ++j) y[n() - rank_G + j] = chi[j];
    return to_rat(Uinv).apply(y);
}

RatVec DivisorSequence::covector(const IntVec& lambda) const {
    // lambda^T U^{-1}, restricted to the free coordinates
    RatVec c(rank_G, Rat(0));
    for (std::size_t j = 0; j < rank_G; ++j) {
        std::size_t col = n() - rank_G + j;
        Rat s = 0;
        for (std::size_t i = 0; i < n(); ++i) s += Rat(lambda[i] * Uinv(i, col));
        c[j] = s;
    }
    return c;
}

Rat DivisorSequence::pair(const IntVec& lambda, const RatVec& chi) const {
    return dot(covector(lambda), chi);
}

RatVec DivisorSequence::anticanonical_rat() const { return to_rat(anticanonical); }

DivisorSequence build_divisor_sequence(const std::vector<IntVec>& rays) {
    DivisorSequence ds;
    if (rays.empty()) fail_validation("EmptyFan", "no rays given");
    ds.dim = rays[0].size();
    for (std::size_t i = 0; i < rays.size(); ++i) {
        if (rays[i].size() != ds.dim)
            fail_validation("DimensionMismatch", "ray " + std::to_string(i) + " has wrong length");
        Int g = gcd_of(rays[i]);
        if (g == 0) fail_validation("ZeroVector", "ray " + std::to_string(i) + " is zero");
        if (g != 1)
            fail_validation("NonPrimitiveRay",
                            "ray " + std::to_string(i) + " " + to_string(rays[i]) + " is not primitive");
    }
    ds.rays = rays;
    const std::size_t n = rays.size();
    ds.delta = IntMatrix::from_rows(rays);
    SmithForm s = smith_normal_form(ds.delta);
    ds.rank_M = s.rank;
    ds.U = s.U;
    // U is unimodular; invert exactly over Q and read back integers.
    {
        RatMatrix a(n, 2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) a(i, j) = Rat(s.U(i, j));
            a(i, n + i) = 1;
        }
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t p = c;
            while (a(p, c) == 0) ++p;
            if (p != c)
                for (std::size_t j = 0; j < 2 * n; ++j) std::swap(a(p, j), a(c, j));
            Rat inv = 1 / a(c, c);
            for (std::size_t j = 0; j < 2 * n; ++j) a(c, j) *= inv;
            for (std::size_t i = 0; i < n; ++i) {
                if (i == c || a(i, c) == 0) continue;
                Rat f = a(i, c);
                for (std::size_t j = 0; j < 2 * n; ++j) a(i, j) -= f * a(c, j);
            }
        }
        ds.Uinv = IntMatrix(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) ds.Uinv(i, j) = a(i, n + j).get_num();
    }
    ds.rank_G = n - s.rank;
    for (std::size_t i = 0; i < s.rank; ++i)
        if (s.D(i, i) > 1) ds.torsion.push_back(s.D(i, i));
    ds.gamma = IntMatrix(ds.rank_G, n);
    for (std::size_t j = 0; j < ds.rank_G; ++j)
        for (std::size_t i = 0; i < n; ++i) ds.gamma(j, i) = s.U(s.rank + j, i);
    std::size_t nt = 0;
    ds.gamma_torsion = IntMatrix(ds.torsion.size(), n);
    for (std::size_t r = 0; r < s.rank; ++r) {
        if (s.D(r, r) <= 1) continue;
        for (std::size_t i = 0; i < n; ++i) {
            Int v;
            mpz_fdiv_r(v.get_mpz_t(), s.U(r, i).get_mpz_t(), s.D(r, r).get_mpz_t());
            ds.gamma_torsion(nt, i) = v;
        }
        ++nt;
    }
    ds.beta.resize(n);
    ds.anticanonical = IntVec(ds.rank_G, Int(0));
    for (std::size_t i = 0; i < n; ++i) {
        ds.beta[i] = ds.gamma.col(i);
        for (std::size_t j = 0; j < ds.rank_G; ++j) ds.anticanonical[j] += ds.beta[i][j];
    }
    return ds;
}

}  // namespace wc

#include "wallcross/lp.hpp"

namespace wc {

namespace {

// Dense tableau for: max c.y  s.t.  M y <= b, y >= 0, with b >= 0 so the
// slack basis is feasible. Bland's rule, exact rationals.
struct Tableau {
    std::size_t m, n;                // constraints, structural vars
    std::vector<RatVec> t;           // m rows of n + m + 1 (last is rhs)
    RatVec obj;                      // reduced costs, n + m + 1
    std::vector<std::size_t> basis;

    Tableau(const std::vector<RatVec>& M, const RatVec& b, const RatVec& c)
        : m(M.size()), n(c.size()), t(m, RatVec(c.size() + M.size() + 1, Rat(0))),
          obj(c.size() + M.size() + 1, Rat(0)), basis(m) {
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) t[i][j] = M[i][j];
            t[i][n + i] = 1;
            t[i][n + m] = b[i];
            basis[i] = n + i;
        }
        for (std::size_t j = 0; j < n; ++j) obj[j] = -c[j];
    }

    void pivot(std::size_t r, std::size_t col) {
        Rat inv = 1 / t[r][col];
        for (auto& x : t[r]) x *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || t[i][col] == 0) continue;
            Rat f = t[i][col];
            for (std::size_t j = 0; j < t[i].size(); ++j)
                if (t[r][j] != 0) t[i][j] -= f * t[r][j];
        }
        if (obj[col] != 0) {
            Rat f = obj[col];
            for (std::size_t j = 0; j < obj.size(); ++j)
                if (t[r][j] != 0) obj[j] -= f * t[r][j];
        }
        basis[r] = col;
    }

    // Returns false if unbounded (cannot happen with the caps used here).
    bool solve() {
        const std::size_t W = n + m;
        for (;;) {
            std::size_t col = W;
            for (std::size_t j = 0; j < W; ++j)
                if (obj[j] < 0) {
                    col = j;
                    break;
                }
            if (col == W) return true;
            std::size_t row = m;
            Rat best;
            for (std::size_t i = 0; i < m; ++i) {
                if (t[i][col] <= 0) continue;
                Rat ratio = t[i][W] / t[i][col];
                if (row == m || ratio < best || (ratio == best && basis[i] < basis[row])) {
                    row = i;
                    best = ratio;
                }
            }
            if (row == m) return false;
            pivot(row, col);
        }
    }

    RatVec solution() const {
        RatVec y(n, Rat(0));
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < n) y[basis[i]] = t[i][n + m];
        return y;
    }
};

}  // namespace

std::optional<RatVec> strictly_feasible(const LinearSystem& sys) {
    const std::size_t k = sys.nvars;
    // y = (x+, x-, eps)
    const std::size_t N = 2 * k + 1;
    std::vector<RatVec> M;
    RatVec b;
    auto push = [&](const RatVec& a, int sign, bool with_eps) {
        RatVec row(N, Rat(0));
        for (std::size_t j = 0; j < k; ++j) {
            row[j] = -sign * a[j];
            row[k + j] = sign * a[j];
        }
        if (with_eps) row[2 * k] = 1;
        M.push_back(std::move(row));
        b.push_back(0);
    };
    for (const auto& a : sys.strict) push(a, 1, true);
    for (const auto& a : sys.weak) push(a, 1, false);
    for (const auto& a : sys.equal) {
        push(a, 1, false);
        push(a, -1, false);
    }
    for (std::size_t j = 0; j < N; ++j) {
        RatVec row(N, Rat(0));
        row[j] = 1;
        M.push_back(std::move(row));
        b.push_back(1);
    }
    RatVec c(N, Rat(0));
    c[2 * k] = 1;
    Tableau tab(M, b, c);
    tab.solve();
    RatVec y = tab.solution();
    if (y[2 * k] <= 0) return std::nullopt;
    RatVec x(k);
    for (std::size_t j = 0; j < k; ++j) x[j] = y[j] - y[k + j];
    return x;
}

}  // namespace wc

#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <vector>

namespace wc {

// Calls f on every k-subset of {0..n-1} in lexicographic order. Stops early
// if f returns false.
inline void for_each_subset(std::size_t n, std::size_t k,
                            const std::function<bool(const std::vector<int>&)>& f) {
    if (k > n) return;
    std::vector<int> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = static_cast<int>(i);
    for (;;) {
        if (!f(idx)) return;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == static_cast<int>(n - k + i - 1)) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

inline bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t j = 0;
    for (int x : a) {
        while (j < b.size() && b[j] < x) ++j;
        if (j == b.size() || b[j] != x) return false;
        ++j;
    }
    return true;
}

inline std::vector<int> set_minus(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    for (int x : a) {
        bool found = false;
        for (int y : b)
            if (x == y) found = true;
        if (!found) out.push_back(x);
    }
    return out;
}

inline std::vector<int> set_union(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out(a);
    for (int y : b) {
        bool found = false;
        for (int x : a)
            if (x == y) found = true;
        if (!found) out.push_back(y);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace wc

#pragma once

// Test-only oracles, independent of the library's implementation paths:
// permutation models for well-known Coxeter types, exhaustive Menger checks
// on small graphs, and closed-form counting formulas.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "chambers/graph.hpp"

namespace oracles {

// --- permutation models ----------------------------------------------------

// Type A_{n-1} word -> one-line permutation of {0..n-1} (right multiplication
// by s_i swaps positions i, i+1).
inline std::vector<int> perm_of_word_a(int n, const std::vector<int>& word) {
    std::vector<int> p(static_cast<size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    for (int g : word) std::swap(p[static_cast<size_t>(g)], p[static_cast<size_t>(g) + 1]);
    return p;
}

// Type B_n word -> signed one-line notation; generator 0 negates the first
// entry, generator i swaps positions i, i+1.
inline std::vector<int> perm_of_word_b(int n, const std::vector<int>& word) {
    std::vector<int> p(static_cast<size_t>(n));
    std::iota(p.begin(), p.end(), 1);
    for (int g : word) {
        if (g == 0)
            p[0] = -p[0];
        else
            std::swap(p[static_cast<size_t>(g) - 1], p[static_cast<size_t>(g)]);
    }
    return p;
}

// Dihedral I_2(m) word -> permutation of the m-gon vertices. s: x -> -x,
// t: x -> 1-x; the word acts by composing right-to-left.
inline std::vector<int> perm_of_word_i2(int m, const std::vector<int>& word) {
    auto apply_gen = [m](int g, int x) {
        int y = g == 0 ? (-x) : (1 - x);
        return ((y % m) + m) % m;
    };
    std::vector<int> p(static_cast<size_t>(m));
    std::iota(p.begin(), p.end(), 0);
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        for (auto& x : p) x = apply_gen(*it, x);
    return p;
}

// --- exhaustive Menger oracles ---------------------------------------------

inline bool connects_avoiding(const chambers::ChamberGraph& g, int u, int v,
                              const std::vector<char>& removed) {
    std::vector<char> seen(static_cast<size_t>(g.vertex_count()), 0);
    std::vector<int> stack{u};
    seen[static_cast<size_t>(u)] = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        if (x == v) return true;
        for (int w : g.neighbors(x)) {
            if (!seen[static_cast<size_t>(w)] && !removed[static_cast<size_t>(w)]) {
                seen[static_cast<size_t>(w)] = 1;
                stack.push_back(w);
            }
        }
    }
    return false;
}

// Minimum u-v vertex cut by subset enumeration (u, v non-adjacent).
inline int brute_min_vertex_cut(const chambers::ChamberGraph& g, int u, int v) {
    int n = g.vertex_count();
    std::vector<int> others;
    for (int x = 0; x < n; ++x)
        if (x != u && x != v) others.push_back(x);
    int k = static_cast<int>(others.size());
    for (int size = 0; size <= k; ++size) {
        for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
            if (__builtin_popcount(mask) != size) continue;
            std::vector<char> removed(static_cast<size_t>(n), 0);
            for (int i = 0; i < k; ++i)
                if (mask & (1u << i)) removed[static_cast<size_t>(others[static_cast<size_t>(i)])] = 1;
            if (!connects_avoiding(g, u, v, removed)) return size;
        }
    }
    return k;
}

// Maximum internally disjoint path packing by backtracking over simple paths.
// Only for small sparse instances.
inline int brute_max_disjoint_paths(const chambers::ChamberGraph& g, int u, int v) {
    std::vector<std::vector<int>> all_paths;
    std::vector<int> cur{u};
    std::vector<char> on_path(static_cast<size_t>(g.vertex_count()), 0);
    on_path[static_cast<size_t>(u)] = 1;
    auto dfs = [&](auto&& self, int x) -> void {
        if (x == v) {
            all_paths.push_back(cur);
            return;
        }
        for (int w : g.neighbors(x)) {
            if (on_path[static_cast<size_t>(w)]) continue;
            on_path[static_cast<size_t>(w)] = 1;
            cur.push_back(w);
            self(self, w);
            cur.pop_back();
            on_path[static_cast<size_t>(w)] = 0;
        }
    };
    dfs(dfs, u);

    int best = 0;
    std::vector<char> used(static_cast<size_t>(g.vertex_count()), 0);
    auto pick = [&](auto&& self, size_t from, int count) -> void {
        best = std::max(best, count);
        for (size_t i = from; i < all_paths.size(); ++i) {
            const auto& p = all_paths[i];
            bool free = true;
            for (size_t j = 1; j + 1 < p.size(); ++j)
                if (used[static_cast<size_t>(p[j])]) {
                    free = false;
                    break;
                }
            if (!free) continue;
            for (size_t j = 1; j + 1 < p.size(); ++j) used[static_cast<size_t>(p[j])] = 1;
            self(self, i + 1, count + 1);
            for (size_t j = 1; j + 1 < p.size(); ++j) used[static_cast<size_t>(p[j])] = 0;
        }
    };
    pick(pick, 0, 0);
    return best;
}

inline chambers::ChamberGraph random_graph(std::mt19937& rng, int n, double edge_prob) {
    chambers::ChamberGraph g(n, "generic");
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (coin(rng) < edge_prob) g.add_edge(a, b);
    g.finalize();
    return g;
}

// --- counting formulas -----------------------------------------------------

// Number of complete flags of F_p^n: the Gaussian factorial
// [n]_p! = prod_{i=1..n} (1 + p + ... + p^{i-1}).
inline long long gaussian_flag_count(int n, int p) {
    long long total = 1;
    for (int i = 1; i <= n; ++i) {
        long long q = 1, sum = 0;
        for (int j = 0; j < i; ++j) {
            sum += q;
            q *= p;
        }
        total *= sum;
    }
    return total;
}

inline long long factorial(int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Maximal chains of the partition lattice of [n]: n! (n-1)! / 2^{n-1}.
inline long long partition_chain_count(int n) {
    long long num = factorial(n) * factorial(n - 1);
    for (int i = 0; i < n - 1; ++i) num /= 2;
    return num;
}

} // namespace oracles

#pragma once

#include "cpart/multigraph.hpp"

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

namespace cpart {

// Multigraph isomorphism by backtracking, intended for desk-scale checks
// (duality invariants, gadget sanity). Parallel edges and self-loops are
// matched by multiplicity.

namespace iso_detail {

inline std::map<std::pair<int, int>, int> edge_multiplicities(const MultiGraph& g) {
    std::map<std::pair<int, int>, int> mult;
    for (const auto& e : g.edges) {
        int u = std::min(e[0], e[1]), v = std::max(e[0], e[1]);
        mult[{u, v}]++;
    }
    return mult;
}

inline int multiplicity(const std::map<std::pair<int, int>, int>& mult, int u, int v) {
    auto it = mult.find({std::min(u, v), std::max(u, v)});
    return it == mult.end() ? 0 : it->second;
}

}  // namespace iso_detail

// Returns a node bijection g1 -> g2 preserving edge multiplicities, or an
// empty vector when none exists.
inline std::vector<int> find_isomorphism(const MultiGraph& g1, const MultiGraph& g2) {
    if (g1.n != g2.n || g1.edge_count() != g2.edge_count()) return {};
    auto m1 = iso_detail::edge_multiplicities(g1);
    auto m2 = iso_detail::edge_multiplicities(g2);
    std::vector<int> d1 = degrees(g1), d2 = degrees(g2);
    {
        std::vector<int> s1 = d1, s2 = d2;
        std::sort(s1.begin(), s1.end());
        std::sort(s2.begin(), s2.end());
        if (s1 != s2) return {};
    }

    const int n = g1.n;
    std::vector<int> map_to(n, -1);
    std::vector<char> used(n, 0);
    // Match high-degree nodes first; they constrain the search most.
    std::vector<int> order(n);
    for (int i = 0; i < n; i++) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return d1[a] > d1[b]; });

    auto rec = [&](auto&& self, int idx) -> bool {
        if (idx == n) return true;
        int v = order[idx];
        for (int w = 0; w < n; w++) {
            if (used[w] || d1[v] != d2[w]) continue;
            if (iso_detail::multiplicity(m1, v, v) != iso_detail::multiplicity(m2, w, w)) continue;
            bool ok = true;
            for (int j = 0; j < idx && ok; j++) {
                int u = order[j];
                ok = iso_detail::multiplicity(m1, v, u) ==
                     iso_detail::multiplicity(m2, w, map_to[u]);
            }
            if (!ok) continue;
            map_to[v] = w;
            used[w] = 1;
            if (self(self, idx + 1)) return true;
            map_to[v] = -1;
            used[w] = 0;
        }
        return false;
    };
    if (!rec(rec, 0)) return {};
    return map_to;
}

inline bool is_isomorphic(const MultiGraph& g1, const MultiGraph& g2) {
    if (g1.n != g2.n) return false;
    if (g1.n == 0) return g1.edge_count() == g2.edge_count();
    return !find_isomorphism(g1, g2).empty();
}

}  // namespace cpart

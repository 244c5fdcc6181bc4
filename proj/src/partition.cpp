#include "cpart/partition.hpp"

#include "cpart/errors.hpp"

#include <algorithm>
#include <limits>

namespace cpart {

std::vector<int> Partition::block_sizes() const {
    std::vector<int> s(k, 0);
    for (int b : assign) ++s[b];
    return s;
}

std::vector<long long> Partition::block_weights(const std::vector<long long>& node_weights) const {
    std::vector<long long> s(k, 0);
    for (int v = 0; v < static_cast<int>(assign.size()); ++v) s[assign[v]] += node_weights[v];
    return s;
}

EdgeSet cut(const MultiGraph& g, const Partition& p) {
    EdgeSet c(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e)
        if (p.assign[g.edges[e][0]] != p.assign[g.edges[e][1]]) c.set(e);
    return c;
}

Partition comp(const MultiGraph& g, const EdgeSet& j) {
    EdgeSet keep = j.complement();
    auto [ids, count] = components(g, &keep);
    // components() already numbers components by first occurrence, which is
    // the minimum node id order.
    return Partition(count, ids);
}

bool is_connected_partition(const MultiGraph& g, const Partition& p) {
    auto adj = g.adjacency();
    auto sizes = p.block_sizes();
    for (int b = 0; b < p.k; ++b) {
        if (sizes[b] <= 1) continue;
        std::vector<char> in(g.n, 0);
        for (int v = 0; v < g.n; ++v) in[v] = (p.assign[v] == b);
        if (!is_connected_node_subset(g, adj, in, sizes[b])) return false;
    }
    return true;
}

bool is_eps_balanced(const MultiGraph& g, const Partition& p, double eps,
                     const std::vector<long long>* weights) {
    if (eps < 0) throw precondition_error("is_eps_balanced: eps must be nonnegative");
    if (p.k != 2) throw precondition_error("is_eps_balanced: defined for 2-partitions");
    std::vector<long long> w = weights ? *weights : std::vector<long long>(g.n, 1);
    auto bw = p.block_weights(w);
    BigRat lo = BigRat(1) - rat_from_double(eps);
    BigRat hi = BigRat(1) + rat_from_double(eps);
    BigRat a(bw[0]), b(bw[1]);
    // Both ratio directions; comparisons multiplied out to stay exact even
    // when a block is empty.
    return lo * b <= a && a <= hi * b && lo * a <= b && b <= hi * a;
}

bool is_within_apd(const Partition& p, const std::vector<long long>& weights, double apd_percent) {
    if (apd_percent < 0) throw precondition_error("is_within_apd: percentage must be nonnegative");
    auto bw = p.block_weights(weights);
    long long total = 0;
    for (auto w : bw) total += w;
    BigRat x = rat_from_double(apd_percent) / 100;
    BigRat ideal = BigRat(total) / p.k;
    BigRat lo = ideal * (BigRat(1) - x), hi = ideal * (BigRat(1) + x);
    for (auto w : bw)
        if (BigRat(w) < lo || BigRat(w) > hi) return false;
    return true;
}

Partition canonical_unordered(const Partition& p) {
    const int none = std::numeric_limits<int>::max();
    std::vector<int> min_node(p.k, none);
    for (int v = static_cast<int>(p.assign.size()) - 1; v >= 0; --v) min_node[p.assign[v]] = v;
    std::vector<int> order(p.k);
    for (int b = 0; b < p.k; ++b) order[b] = b;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return min_node[a] < min_node[b]; });
    std::vector<int> relabel(p.k);
    for (int i = 0; i < p.k; ++i) relabel[order[i]] = i;
    Partition out(p.k, p.assign);
    for (auto& a : out.assign) a = relabel[a];
    return out;
}

}  // namespace cpart

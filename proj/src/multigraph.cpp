#include "cpart/multigraph.hpp"

#include "cpart/errors.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace cpart {

int MultiGraph::add_edge(int u, int v) {
    edges.push_back({u, v});
    return edge_count() - 1;
}

std::vector<std::vector<std::pair<int, int>>> MultiGraph::adjacency() const {
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (int e = 0; e < edge_count(); ++e) {
        adj[edges[e][0]].push_back({edges[e][1], e});
        adj[edges[e][1]].push_back({edges[e][0], e});
    }
    return adj;
}

void MultiGraph::check_valid() const {
    for (int e = 0; e < edge_count(); ++e)
        for (int s = 0; s < 2; ++s)
            if (edges[e][s] < 0 || edges[e][s] >= n)
                throw precondition_error("edge " + std::to_string(e) + " endpoint out of range");
    if (!node_weight.empty() && static_cast<int>(node_weight.size()) != n)
        throw precondition_error("node weight vector length does not match node count");
}

int EdgeSet::count() const {
    int c = 0;
    for (auto w : bits) c += std::popcount(w);
    return c;
}

bool EdgeSet::empty() const {
    for (auto w : bits)
        if (w) return false;
    return true;
}

std::vector<int> EdgeSet::to_vector() const {
    std::vector<int> out;
    for (int e = 0; e < m; ++e)
        if (test(e)) out.push_back(e);
    return out;
}

EdgeSet EdgeSet::from_vector(int universe, const std::vector<int>& ids) {
    EdgeSet s(universe);
    for (int e : ids) {
        if (e < 0 || e >= universe)
            throw precondition_error("edge id " + std::to_string(e) + " out of range");
        s.set(e);
    }
    return s;
}

EdgeSet EdgeSet::operator&(const EdgeSet& o) const {
    EdgeSet r(m);
    for (std::size_t i = 0; i < bits.size(); ++i) r.bits[i] = bits[i] & o.bits[i];
    return r;
}

EdgeSet EdgeSet::operator|(const EdgeSet& o) const {
    EdgeSet r(m);
    for (std::size_t i = 0; i < bits.size(); ++i) r.bits[i] = bits[i] | o.bits[i];
    return r;
}

EdgeSet EdgeSet::complement() const {
    EdgeSet r(m);
    for (std::size_t i = 0; i < bits.size(); ++i) r.bits[i] = ~bits[i];
    if (m & 63) r.bits.back() &= (std::uint64_t{1} << (m & 63)) - 1;
    return r;
}

bool EdgeSet::operator<(const EdgeSet& o) const {
    if (m != o.m) return m < o.m;
    return bits < o.bits;
}

std::size_t EdgeSetHash::operator()(const EdgeSet& s) const {
    std::size_t h = 0x9e3779b97f4a7c15ULL ^ s.m;
    for (auto w : s.bits) h = (h ^ w) * 0x100000001b3ULL;
    return h;
}

DisjointSets::DisjointSets(int n) : parent(n), rank_(n, 0) {
    std::iota(parent.begin(), parent.end(), 0);
}

int DisjointSets::find(int x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

bool DisjointSets::unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (rank_[x] < rank_[y]) std::swap(x, y);
    parent[y] = x;
    if (rank_[x] == rank_[y]) ++rank_[x];
    return true;
}

std::pair<std::vector<int>, int> components(const MultiGraph& g, const EdgeSet* subset) {
    DisjointSets ds(g.n);
    for (int e = 0; e < g.edge_count(); ++e) {
        if (subset && !subset->test(e)) continue;
        ds.unite(g.edges[e][0], g.edges[e][1]);
    }
    std::vector<int> comp(g.n, -1);
    int count = 0;
    for (int v = 0; v < g.n; ++v) {
        int r = ds.find(v);
        if (comp[r] == -1) comp[r] = count++;
        comp[v] = comp[r];
    }
    return {comp, count};
}

bool is_connected(const MultiGraph& g) { return g.n <= 1 || h0(g) == 1; }

int h0(const MultiGraph& g) { return components(g).second; }

int h1(const MultiGraph& g) { return g.edge_count() - g.n + h0(g); }

int h1_of_subset(const MultiGraph& g, const EdgeSet& j) {
    DisjointSets ds(g.n);
    int edges_in = 0;
    std::vector<char> covered(g.n, 0);
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!j.test(e)) continue;
        ++edges_in;
        covered[g.edges[e][0]] = covered[g.edges[e][1]] = 1;
        ds.unite(g.edges[e][0], g.edges[e][1]);
    }
    int covered_nodes = 0, comps = 0;
    std::vector<char> seen_root(g.n, 0);
    for (int v = 0; v < g.n; ++v) {
        if (!covered[v]) continue;
        ++covered_nodes;
        int r = ds.find(v);
        if (!seen_root[r]) {
            seen_root[r] = 1;
            ++comps;
        }
    }
    return edges_in - covered_nodes + comps;
}

namespace {

// Bridge finding on the subgraph (V, J) by iterative DFS with low links.
// Parallel edges are handled through edge ids: an edge is only skipped as the
// "parent edge" once.
std::vector<int> bridges_of_subset(const MultiGraph& g, const EdgeSet* j) {
    std::vector<std::vector<std::pair<int, int>>> adj(g.n);
    for (int e = 0; e < g.edge_count(); ++e) {
        if (j && !j->test(e)) continue;
        int u = g.edges[e][0], v = g.edges[e][1];
        if (u == v) continue;  // self-loops are never bridges
        adj[u].push_back({v, e});
        adj[v].push_back({u, e});
    }
    std::vector<int> disc(g.n, -1), low(g.n, 0), it(g.n, 0), parent_edge(g.n, -1), stack;
    std::vector<int> out;
    int timer = 0;
    for (int start = 0; start < g.n; ++start) {
        if (disc[start] != -1 || adj[start].empty()) continue;
        stack.push_back(start);
        disc[start] = low[start] = timer++;
        while (!stack.empty()) {
            int v = stack.back();
            if (it[v] < static_cast<int>(adj[v].size())) {
                auto [w, e] = adj[v][it[v]++];
                if (e == parent_edge[v]) continue;
                if (disc[w] == -1) {
                    disc[w] = low[w] = timer++;
                    parent_edge[w] = e;
                    stack.push_back(w);
                } else {
                    low[v] = std::min(low[v], disc[w]);
                }
            } else {
                stack.pop_back();
                if (!stack.empty()) {
                    int p = stack.back();
                    low[p] = std::min(low[p], low[v]);
                    if (low[v] > disc[p]) out.push_back(parent_edge[v]);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

bool is_bridgeless_subset(const MultiGraph& g, const EdgeSet& j) {
    return bridges_of_subset(g, &j).empty();
}

std::vector<int> bridges(const MultiGraph& g) { return bridges_of_subset(g, nullptr); }

std::vector<std::vector<int>> biconnected_components(const MultiGraph& g) {
    std::vector<std::vector<int>> comps;
    std::vector<std::vector<std::pair<int, int>>> adj(g.n);
    for (int e = 0; e < g.edge_count(); ++e) {
        int u = g.edges[e][0], v = g.edges[e][1];
        if (u == v) {
            comps.push_back({e});  // each self-loop is its own component
            continue;
        }
        adj[u].push_back({v, e});
        adj[v].push_back({u, e});
    }
    std::vector<int> disc(g.n, -1), low(g.n, 0), it(g.n, 0), parent_edge(g.n, -1);
    std::vector<int> stack, estack;
    int timer = 0;
    for (int start = 0; start < g.n; ++start) {
        if (disc[start] != -1) continue;
        stack.push_back(start);
        disc[start] = low[start] = timer++;
        while (!stack.empty()) {
            int v = stack.back();
            if (it[v] < static_cast<int>(adj[v].size())) {
                auto [w, e] = adj[v][it[v]++];
                if (e == parent_edge[v]) continue;
                if (disc[w] == -1) {
                    estack.push_back(e);
                    disc[w] = low[w] = timer++;
                    parent_edge[w] = e;
                    stack.push_back(w);
                } else if (disc[w] < disc[v]) {
                    // back edge, seen once from its lower endpoint
                    estack.push_back(e);
                    low[v] = std::min(low[v], disc[w]);
                }
            } else {
                stack.pop_back();
                if (stack.empty()) continue;
                int p = stack.back();
                low[p] = std::min(low[p], low[v]);
                if (low[v] >= disc[p]) {
                    // v's subtree plus the edge to p closes one component
                    std::vector<int> comp;
                    while (!estack.empty()) {
                        int e = estack.back();
                        estack.pop_back();
                        comp.push_back(e);
                        if (e == parent_edge[v]) break;
                    }
                    comps.push_back(std::move(comp));
                }
            }
        }
    }
    return comps;
}

bool is_cubic(const MultiGraph& g) {
    auto d = degrees(g);
    return std::all_of(d.begin(), d.end(), [](int x) { return x == 3; });
}

std::vector<int> degrees(const MultiGraph& g) {
    std::vector<int> d(g.n, 0);
    for (const auto& e : g.edges) {
        ++d[e[0]];
        ++d[e[1]];
    }
    return d;
}

bool is_connected_node_subset(const MultiGraph& g,
                              const std::vector<std::vector<std::pair<int, int>>>& adj,
                              const std::vector<char>& in_subset, int subset_size) {
    if (subset_size <= 1) return true;
    int start = -1;
    for (int v = 0; v < g.n; ++v)
        if (in_subset[v]) {
            start = v;
            break;
        }
    std::vector<int> stack{start};
    std::vector<char> seen(g.n, 0);
    seen[start] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (auto [w, e] : adj[v]) {
            (void)e;
            if (in_subset[w] && !seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == subset_size;
}

GraphRewrite contract_edges(const MultiGraph& g, const EdgeSet& j) {
    DisjointSets ds(g.n);
    for (int e = 0; e < g.edge_count(); ++e)
        if (j.test(e)) ds.unite(g.edges[e][0], g.edges[e][1]);
    GraphRewrite out;
    out.node_map.assign(g.n, -1);
    int next = 0;
    for (int v = 0; v < g.n; ++v) {
        int r = ds.find(v);
        if (out.node_map[r] == -1) out.node_map[r] = next++;
        out.node_map[v] = out.node_map[r];
    }
    out.graph.n = next;
    if (g.weighted()) {
        out.graph.node_weight.assign(next, 0);
        for (int v = 0; v < g.n; ++v) out.graph.node_weight[out.node_map[v]] += g.node_weight[v];
    }
    out.edge_map.assign(g.edge_count(), -1);
    for (int e = 0; e < g.edge_count(); ++e) {
        if (j.test(e)) continue;
        int u = out.node_map[g.edges[e][0]], v = out.node_map[g.edges[e][1]];
        if (u == v) continue;  // self-loop arising from the contraction
        out.edge_map[e] = out.graph.add_edge(u, v);
    }
    return out;
}

GraphRewrite delete_edges(const MultiGraph& g, const EdgeSet& j) {
    GraphRewrite out;
    out.graph.n = g.n;
    out.graph.node_weight = g.node_weight;
    out.node_map.resize(g.n);
    std::iota(out.node_map.begin(), out.node_map.end(), 0);
    out.edge_map.assign(g.edge_count(), -1);
    for (int e = 0; e < g.edge_count(); ++e)
        if (!j.test(e)) out.edge_map[e] = out.graph.add_edge(g.edges[e][0], g.edges[e][1]);
    return out;
}

long long total_node_weight(const MultiGraph& g) {
    if (!g.weighted()) return g.n;
    long long t = 0;
    for (auto w : g.node_weight) t += w;
    return t;
}

std::vector<long long> effective_node_weights(const MultiGraph& g) {
    if (g.weighted()) return g.node_weight;
    return std::vector<long long>(g.n, 1);
}

}  // namespace cpart

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cpart {

// Undirected multigraph. Nodes are 0..node_count-1, edges are 0..edge_count-1
// and may include parallel edges and self-loops. Node weights are optional;
// an empty vector means "unweighted".
struct MultiGraph {
    int n = 0;
    std::vector<std::array<int, 2>> edges;
    std::vector<long long> node_weight;

    int edge_count() const { return static_cast<int>(edges.size()); }
    bool weighted() const { return !node_weight.empty(); }

    int add_node() { return n++; }
    int add_edge(int u, int v);

    // (neighbor, edge id) lists; self-loops appear twice at their node.
    std::vector<std::vector<std::pair<int, int>>> adjacency() const;

    void check_valid() const;  // throws precondition_error on dangling endpoints
};

// Set of edge ids of a fixed universe size, packed bitset.
struct EdgeSet {
    int m = 0;
    std::vector<std::uint64_t> bits;

    EdgeSet() = default;
    explicit EdgeSet(int universe) : m(universe), bits((universe + 63) / 64, 0) {}

    bool test(int e) const { return (bits[e >> 6] >> (e & 63)) & 1; }
    void set(int e) { bits[e >> 6] |= (std::uint64_t{1} << (e & 63)); }
    void reset(int e) { bits[e >> 6] &= ~(std::uint64_t{1} << (e & 63)); }
    int count() const;
    bool empty() const;

    std::vector<int> to_vector() const;
    static EdgeSet from_vector(int universe, const std::vector<int>& ids);

    EdgeSet operator&(const EdgeSet& o) const;
    EdgeSet operator|(const EdgeSet& o) const;
    // Edges of the universe not in this set.
    EdgeSet complement() const;

    bool operator==(const EdgeSet& o) const = default;
    bool operator<(const EdgeSet& o) const;
};

struct EdgeSetHash {
    std::size_t operator()(const EdgeSet& s) const;
};

// Union-find over a fixed node range.
struct DisjointSets {
    std::vector<int> parent, rank_;
    explicit DisjointSets(int n);
    int find(int x);
    bool unite(int x, int y);  // returns true if the two sets were distinct
};

// Connected components over all nodes; returns component id per node and the
// number of components. Only edges with subset.test(e) (or all edges when
// subset is nullptr) are used.
std::pair<std::vector<int>, int> components(const MultiGraph& g, const EdgeSet* subset = nullptr);

bool is_connected(const MultiGraph& g);

// Number of connected components (isolated nodes each count).
int h0(const MultiGraph& g);

// Cycle rank |E| - |V| + h0 of the whole graph.
int h1(const MultiGraph& g);

// Cycle rank of the subgraph (V, J). Isolated nodes do not change the value.
int h1_of_subset(const MultiGraph& g, const EdgeSet& j);

// True when the subgraph (V, J) has no bridge, i.e. every edge of J lies on a
// cycle of (V, J). Self-loops are never bridges.
bool is_bridgeless_subset(const MultiGraph& g, const EdgeSet& j);

// Bridges of the whole graph (edge ids).
std::vector<int> bridges(const MultiGraph& g);

// Biconnected components as lists of edge ids. Every edge lands in exactly
// one component: bridges and self-loops form single-edge components, and any
// two distinct edges share a component iff they lie on a common simple cycle.
std::vector<std::vector<int>> biconnected_components(const MultiGraph& g);

bool is_cubic(const MultiGraph& g);

std::vector<int> degrees(const MultiGraph& g);

// True when the node subset induces a connected subgraph. The empty set
// counts as connected.
bool is_connected_node_subset(const MultiGraph& g,
                              const std::vector<std::vector<std::pair<int, int>>>& adj,
                              const std::vector<char>& in_subset, int subset_size);

// Result of contracting / deleting edges. node_map sends old node ids to new
// ones; edge_map sends old edge ids to new ids or -1 for removed edges.
struct GraphRewrite {
    MultiGraph graph;
    std::vector<int> node_map;
    std::vector<int> edge_map;
};

// Contract every edge of `j` (merging endpoints, summing node weights when
// present) and delete the self-loops that arise. Parallel edges are kept.
GraphRewrite contract_edges(const MultiGraph& g, const EdgeSet& j);

// Delete every edge of `j`; nodes are kept.
GraphRewrite delete_edges(const MultiGraph& g, const EdgeSet& j);

long long total_node_weight(const MultiGraph& g);

// Unit weights when the graph carries none, otherwise its weights.
std::vector<long long> effective_node_weights(const MultiGraph& g);

}  // namespace cpart

#pragma once

#include "cpart/bigint.hpp"
#include "cpart/multigraph.hpp"

#include <vector>

namespace cpart {

// Partition of the nodes of a graph into k labeled blocks. Blocks may be
// empty; every node has a block.
struct Partition {
    int k = 0;
    std::vector<int> assign;  // node -> block in [0, k)

    Partition() = default;
    Partition(int k_, std::vector<int> assign_) : k(k_), assign(std::move(assign_)) {}

    bool operator==(const Partition& o) const = default;
    bool operator<(const Partition& o) const {
        if (k != o.k) return k < o.k;
        return assign < o.assign;
    }

    std::vector<int> block_sizes() const;
    std::vector<long long> block_weights(const std::vector<long long>& node_weights) const;
};

// Edges with endpoints in different blocks.
EdgeSet cut(const MultiGraph& g, const Partition& p);

// Partition whose blocks are the connected components of (V, E \ j). The
// number of blocks is the number of components; blocks are numbered in order
// of their minimum node id.
Partition comp(const MultiGraph& g, const EdgeSet& j);

// Every nonempty block induces a connected subgraph (empty blocks pass).
bool is_connected_partition(const MultiGraph& g, const Partition& p);

// For 2-partitions: both ratio directions within [1-eps, 1+eps] on node
// counts, or on `weights` when provided. Throws precondition_error for eps < 0
// or k != 2.
bool is_eps_balanced(const MultiGraph& g, const Partition& p, double eps,
                     const std::vector<long long>* weights = nullptr);

// Block weight of every block lies in [ideal*(1-x), ideal*(1+x)] where
// ideal = total/k and x = apd_percent/100, compared exactly.
bool is_within_apd(const Partition& p, const std::vector<long long>& weights, double apd_percent);

// Relabel blocks so that they are ordered by their minimum node id; empty
// blocks are moved to the end. Two partitions are equal as unordered
// partitions iff their canonical forms are equal.
Partition canonical_unordered(const Partition& p);

}  // namespace cpart

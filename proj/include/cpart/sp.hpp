#pragma once

#include "cpart/multigraph.hpp"

#include <vector>

namespace cpart {

// Decomposition of a two-terminal series-parallel multigraph as a binary
// tree. Every tree node describes a subgraph with an ordered terminal pair
// (s, t): a leaf is a single edge, a series node glues the left child's t to
// the right child's s, and a parallel node identifies both terminal pairs.
// flip_left / flip_right record that a child is used with its terminals
// swapped relative to how it was built.
struct SPTree {
    enum class Kind { leaf, series, parallel };

    struct Node {
        Kind kind = Kind::leaf;
        int edge = -1;              // leaf only: edge id in the base graph
        int left = -1, right = -1;  // internal only
        bool flip_left = false, flip_right = false;
        int s = -1, t = -1;  // terminals of this subgraph in base node ids
    };

    std::vector<Node> nodes;
    int root = -1;

    int sigma() const { return nodes[root].s; }
    int tau() const { return nodes[root].t; }
    const Node& at(int i) const { return nodes[i]; }

    // Leaf tree-node ids in left-to-right order; position in this list is the
    // canonical traversal order used when splitting node weights over leaves.
    std::vector<int> leaves_in_order() const;
};

// Reduce the graph to a single s-t edge by repeatedly merging parallel edge
// pairs and series pairs at degree-2 nodes other than s or t, recording the
// merges as an SPTree. Throws not_series_parallel_error when the graph is not
// two-terminal series-parallel with respect to (s, t) (self-loops always
// fail), and precondition_error for bad terminals or a disconnected graph.
SPTree recognize_sp(const MultiGraph& g, int s, int t);

// First terminal pair (in node id order) for which recognize_sp succeeds.
// Throws not_series_parallel_error when no pair works.
SPTree recognize_sp_any(const MultiGraph& g);

}  // namespace cpart

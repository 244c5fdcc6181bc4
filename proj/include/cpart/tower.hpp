#pragma once

#include "cpart/bigint.hpp"
#include "cpart/multigraph.hpp"
#include "cpart/partition.hpp"
#include "cpart/plane.hpp"

#include <array>
#include <vector>

namespace cpart {

// Plane gadget used to multiply the number of routes through a cubic vertex.
// Level 0 is a triangle whose corners are the terminals; every further level
// subdivides the current innermost triangle's edges, hangs a pendant edge off
// each subdivision node, and closes the three pendant ends into a new, smaller
// triangle. A depth-d tower has 3+6d nodes, 3+9d edges and 2+3d faces, and the
// outer face touches all three terminals.
struct TriangleTower {
    int depth = 0;
    PlaneGraph plane;
    std::array<int, 3> terminals{};  // level-0 corners, counterclockwise
    // Triangle corners per level 0..depth, in terminal order.
    std::vector<std::array<int, 3>> level_nodes;
    // Subdivision nodes per level 0..depth-1; mids[l][i] is the node opposite
    // corner i (it subdivides the level-l edge joining the other two corners).
    std::vector<std::array<int, 3>> level_mids;
    std::vector<std::pair<double, double>> layout;  // drawing the embedding came from
};

TriangleTower build_triangle_tower(int depth);

// Closed forms for the number of simple cycles in a depth-d tower and the
// number of simple paths between two distinct terminals. Both are exact.
BigInt tower_cycle_count(int depth);
BigInt tower_path_count(int depth);

// Vertex replacement: every node of a cubic plane graph is replaced by a
// depth-d tower; the host edges survive and reattach to the terminals of the
// incident copies, in rotation order, inside each copy's outer face. The
// result is again a cubic plane graph.
struct TowerReplacement {
    int depth = 0;
    MultiGraph base;      // the cubic host
    PlaneGraph derived;   // host with towers substituted for nodes
    std::vector<int> original_edge;             // host edge -> derived edge
    std::vector<std::array<int, 3>> terminals;  // host node -> derived terminals, rotation order
    std::vector<int> node_owner;                // derived node -> host node it replaces
};

TowerReplacement vertex_replace_tower(const PlaneGraph& host, int depth);

// Restriction of a derived edge subset to the surviving host edges. Simple
// cycles of the derived graph land on simple cycles of the host or on the
// empty set (for cycles internal to one copy).
EdgeSet project_original(const TowerReplacement& r, const EdgeSet& derived_subset);

// Face refinement of a plane triangulation: tower replacement applied to the
// dual, pulled back through duality. Every face of the input gains a hanging
// gadget; the input's nodes survive as the "original" nodes.
struct TowerRefinement {
    int depth = 0;
    MultiGraph base;     // the triangulation
    PlaneGraph derived;  // refined triangulation
    std::vector<int> original_node;  // base node -> derived node (injective)
};

TowerRefinement tower_refine_triangulation(const PlaneGraph& g, int depth);

// Restriction of a connected 2-partition of the refined graph to the original
// nodes; the result is again connected. Throws when the input partition is
// not a connected 2-partition of the derived graph.
Partition restrict_tower_refinement(const TowerRefinement& r, const Partition& p);

// Number of faces whose boundary nodes do not all lie in one block.
int mixed_face_count(const PlaneGraph& pg, const Partition& p);

}  // namespace cpart

#pragma once

#include "cpart/bigint.hpp"
#include "cpart/multigraph.hpp"
#include "cpart/partition.hpp"

#include <vector>

namespace cpart {

// Edge-replacement gadget constructions. Each construction returns the derived
// graph together with explicit provenance: which derived edges realize which
// base edge, and where the base nodes ended up. Projections and restrictions
// are defined through that provenance, never by structural guessing.
struct GadgetMap {
    MultiGraph base;
    MultiGraph derived;
    // base edge id -> derived edge ids realizing it. Untouched edges map to
    // their single copy; deleted or contracted edges map to nothing.
    std::vector<std::vector<int>> per_base_edge;
    // base node -> derived node. Injective for edge replacements; contraction
    // (the weighted marginal construction) maps merged nodes to their class.
    std::vector<int> original_nodes;
    // derived edge -> owning base edge, -1 for edges not owned by any.
    std::vector<int> derived_edge_owner;
};

// Checks provenance consistency: the per-edge sets are disjoint, agree with
// derived_edge_owner, and original_nodes lands inside the derived graph.
// Throws error on violation.
void validate_gadget_map(const GadgetMap& m);

// Replace every edge by a chain of d bigons: d subdivision segments, each
// doubled into a parallel pair (2d derived edges and d-1 internal nodes per
// base edge). d = 0 returns the identity map. Internal nodes get weight 0
// when the base is weighted. Throws precondition_error when d < 0 or a
// replaced edge is a self-loop.
GadgetMap chain_of_bigons(const MultiGraph& g, int d);

// Replace every edge by a chain of d dipoles of order r: d segments of r
// parallel edges each. chain_of_bigons(g, d) is the r = 2 case. Requires
// r >= 2, d >= 1.
GadgetMap chain_of_dipoles(const MultiGraph& g, int r, int d);

// Base edges whose derived gadget meets c. For a simple cycle of a bigon
// chain the image is a simple cycle of the base or a single base edge.
EdgeSet project_touched(const GadgetMap& m, const EdgeSet& c);

// Canonical lift of a bridgeless edge subset through a dipole chain: the
// first parallel copy of every segment of every chosen edge, plus the total
// number of per-segment choices (r^{d|y|}). project_touched inverts it.
struct LiftResult {
    EdgeSet edges;
    BigInt count;
};
LiftResult lift_through_chain(const GadgetMap& m, const EdgeSet& y);

// Replace every edge by d parallel length-2 paths through fresh weight-0
// nodes (d new nodes per base edge, 2d derived edges). Throws
// precondition_error for d < 1 or self-loop edges.
GadgetMap doubled_star(const MultiGraph& g, int d);

// Restriction of a connected 2-partition of the derived graph to the base
// nodes. The input must be a connected 2-partition (precondition_error
// otherwise); the result is again connected, possibly with an empty block.
Partition restrict_doubled_star(const GadgetMap& m, const Partition& p);

// Delete the edges of j2 and replace the edges of j by chains of d bigons;
// everything else is copied verbatim. j and j2 must be disjoint.
GadgetMap marginal_graph(const MultiGraph& g, const EdgeSet& j, const EdgeSet& j2, int d);

// Contract the edges of j2 (dropping self-loops that arise), then replace the
// images of j by doubled d-stars with weight-0 internal nodes. Node weights
// merge under contraction. Throws precondition_error when a j edge collapses
// to a self-loop under the contraction.
GadgetMap w_marginal_graph(const MultiGraph& g, const EdgeSet& j, const EdgeSet& j2, int d);

}  // namespace cpart

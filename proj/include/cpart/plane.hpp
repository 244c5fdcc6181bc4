#pragma once

#include "cpart/multigraph.hpp"
#include "cpart/partition.hpp"

#include <vector>

namespace cpart {

// Edge-end ("dart") encoding: edge e has darts 2e and 2e+1, attached to
// endpoint 0 and endpoint 1 of e respectively.
inline int dart_edge(int h) { return h >> 1; }
inline int dart_twin(int h) { return h ^ 1; }

// Plane graph given as a rotation system: for every node, the cyclic
// counterclockwise order of its incident darts. Faces are the orbits of
// h -> rotation-successor(twin(h)); with counterclockwise rotations each
// orbit walks a face boundary keeping that face on the right (bounded faces
// are traversed clockwise, the unbounded face counterclockwise).
struct PlaneGraph {
    MultiGraph g;
    std::vector<std::vector<int>> rotation;  // node -> darts, CCW
    int outer_face = 0;

    // Derived by finalize():
    std::vector<int> face_of;              // dart -> face id
    std::vector<std::vector<int>> faces;   // face -> darts in orbit order
    std::vector<int> dart_pos;             // dart -> index in its rotation list

    int face_count() const { return static_cast<int>(faces.size()); }
    int dart_node(int h) const { return g.edges[dart_edge(h)][h & 1]; }
    int rotation_next(int h) const;

    // Validates the rotation system and computes faces. Throws
    // precondition_error for malformed rotations.
    void finalize();
};

PlaneGraph make_plane(MultiGraph g, std::vector<std::vector<int>> rotation, int outer_face = 0);

// Rotation system computed from 2D coordinates by sorting darts around each
// node by angle; valid whenever the straight-line drawing is planar.
PlaneGraph make_plane_from_layout(MultiGraph g, const std::vector<std::pair<double, double>>& xy);

// 1 + h0 = V - E + F with the unbounded region shared between components; for
// rotation systems this is checked per connected component.
bool euler_identity_holds(const PlaneGraph& pg);

struct DualResult {
    PlaneGraph dual;
    // edge_bijection[e] = dual edge id of primal edge e (identity here, kept
    // explicit because callers treat it as a map).
    std::vector<int> edge_bijection;
};

// Plane dual: one node per face, one edge per primal edge joining the faces on
// the two sides (a self-loop when both sides are the same face, i.e. for a
// bridge). The dual rotation at a face is the face orbit in traversal order,
// which makes taking the dual twice the identity up to node relabeling.
// Throws precondition_error when the graph is disconnected.
DualResult plane_dual(const PlaneGraph& pg);

// Dualize twice and relabel so node ids, edge endpoints and rotations match
// the input exactly; outer face restored by dart-set lookup. Used to verify
// the involution property.
PlaneGraph dual_of_dual(const PlaneGraph& pg);

// Edge set in E2 (bridgeless) with cycle rank k-1: the edge sets dual to
// connected k-partitions.
bool is_dual_k_partition(const MultiGraph& g, const EdgeSet& j, int k);

// cut followed by the edge bijection: edge set of the dual graph dual to the
// partition's cut set.
EdgeSet dual_of_partition(const PlaneGraph& pg, const Partition& p);

// Inverse direction: j lives on the dual's edges; map back through the edge
// bijection and take components.
Partition partition_of_dual(const PlaneGraph& pg, const EdgeSet& j_dual);

// Member of the dual family of maximal size |V| + k - 2 (equivalently: the
// subgraph (V, J) is connected and spans).
bool is_maximal_dual_k(const MultiGraph& g, const EdgeSet& j, int k);

}  // namespace cpart

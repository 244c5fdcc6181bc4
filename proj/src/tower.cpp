#include "cpart/tower.hpp"

#include "cpart/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cpart {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Corner i of level l sits at angle 90 + 120*i degrees, rotated a half turn
// per level so that the next triangle's corners point at the midpoints of the
// current one, at a third of the radius (safely inside the incircle, which
// has half the circumradius).
std::pair<double, double> corner_xy(int level, int i) {
    double r = std::pow(3.0, -level);
    double a = (90.0 + 120.0 * i + 180.0 * level) * kPi / 180.0;
    return {r * std::cos(a), r * std::sin(a)};
}

}  // namespace

TriangleTower build_triangle_tower(int depth) {
    if (depth < 0) throw precondition_error("tower depth must be nonnegative");
    TriangleTower t;
    t.depth = depth;
    MultiGraph g;
    g.n = 3 + 6 * depth;
    t.layout.resize(g.n);

    // Level-l corners are nodes 6l..6l+2, level-l midpoints 6l+3..6l+5;
    // midpoint i subdivides the edge joining corners i+1 and i+2.
    auto corner = [](int level, int i) { return 6 * level + i; };
    auto mid = [](int level, int i) { return 6 * level + 3 + i; };

    for (int l = 0; l <= depth; ++l) {
        for (int i = 0; i < 3; ++i) t.layout[corner(l, i)] = corner_xy(l, i);
        if (l == depth) break;
        for (int i = 0; i < 3; ++i) {
            auto [x1, y1] = corner_xy(l, (i + 1) % 3);
            auto [x2, y2] = corner_xy(l, (i + 2) % 3);
            t.layout[mid(l, i)] = {(x1 + x2) / 2, (y1 + y2) / 2};
        }
    }

    t.level_nodes.resize(depth + 1);
    t.level_mids.resize(depth);
    for (int l = 0; l <= depth; ++l)
        t.level_nodes[l] = {corner(l, 0), corner(l, 1), corner(l, 2)};
    for (int l = 0; l < depth; ++l) {
        t.level_mids[l] = {mid(l, 0), mid(l, 1), mid(l, 2)};
        for (int i = 0; i < 3; ++i) {
            g.add_edge(corner(l, (i + 1) % 3), mid(l, i));
            g.add_edge(mid(l, i), corner(l, (i + 2) % 3));
        }
        for (int i = 0; i < 3; ++i) g.add_edge(mid(l, i), corner(l + 1, i));
    }
    for (int i = 0; i < 3; ++i) g.add_edge(corner(depth, i), corner(depth, (i + 1) % 3));

    t.plane = make_plane_from_layout(std::move(g), t.layout);
    t.terminals = {0, 1, 2};
    return t;
}

BigInt tower_cycle_count(int depth) {
    if (depth < 0) throw precondition_error("tower depth must be nonnegative");
    BigInt num = 3 * boost::multiprecision::pow(BigInt(5), depth + 1) - 8 * depth - 11;
    return num / 4;
}

BigInt tower_path_count(int depth) {
    if (depth < 0) throw precondition_error("tower depth must be nonnegative");
    return (boost::multiprecision::pow(BigInt(5), depth + 1) - 1) / 2;
}

TowerReplacement vertex_replace_tower(const PlaneGraph& host, int depth) {
    for (int v = 0; v < host.g.n; ++v)
        if (static_cast<int>(host.rotation[v].size()) != 3)
            throw precondition_error("vertex replacement needs a cubic host");

    TriangleTower t = build_triangle_tower(depth);
    const int tn = t.plane.g.n;
    const int tm = t.plane.g.edge_count();

    // The attachment corner: each terminal touches the tower's outer face in
    // exactly one angular sector, delimited by the unique outer-face dart in
    // its rotation. Host edges are spliced in immediately before that dart.
    std::array<int, 3> outer_dart{};
    for (int i = 0; i < 3; ++i) {
        int found = -1;
        for (int h : t.plane.rotation[t.terminals[i]])
            if (t.plane.face_of[h] == t.plane.outer_face) {
                if (found != -1) throw error("tower terminal meets the outer face twice");
                found = h;
            }
        if (found == -1) throw error("tower terminal misses the outer face");
        outer_dart[i] = found;
    }

    TowerReplacement r;
    r.depth = depth;
    r.base = host.g;
    const int n = host.g.n;
    r.derived.g.n = n * tn;
    r.node_owner.resize(n * tn);
    r.terminals.resize(n);
    for (int v = 0; v < n; ++v) {
        for (int p = 0; p < tn; ++p) r.node_owner[v * tn + p] = v;
        for (int i = 0; i < 3; ++i) r.terminals[v][i] = v * tn + t.terminals[i];
        for (const auto& e : t.plane.g.edges)
            r.derived.g.add_edge(v * tn + e[0], v * tn + e[1]);
    }
    r.original_edge.resize(host.g.edge_count());
    for (int e = 0; e < host.g.edge_count(); ++e) {
        int u = host.g.edges[e][0], v = host.g.edges[e][1];
        int tu = r.terminals[u][host.dart_pos[2 * e]];
        int tv = r.terminals[v][host.dart_pos[2 * e + 1]];
        r.original_edge[e] = r.derived.g.add_edge(tu, tv);
    }

    // Rotations: each copy inherits the tower's, with the host dart spliced
    // into the outer corner of the terminal it attaches to.
    auto copy_dart = [&](int v, int h) { return 2 * (v * tm + dart_edge(h)) + (h & 1); };
    r.derived.rotation.assign(r.derived.g.n, {});
    for (int v = 0; v < n; ++v)
        for (int p = 0; p < tn; ++p) {
            auto& rot = r.derived.rotation[v * tn + p];
            for (int h : t.plane.rotation[p]) rot.push_back(copy_dart(v, h));
        }
    for (int v = 0; v < n; ++v)
        for (int i = 0; i < 3; ++i) {
            int h = host.rotation[v][i];  // host dart attaching at terminal i
            int attach = 2 * r.original_edge[dart_edge(h)] + (h & 1);
            auto& rot = r.derived.rotation[r.terminals[v][i]];
            auto it = std::find(rot.begin(), rot.end(), copy_dart(v, outer_dart[i]));
            rot.insert(it, attach);
        }
    r.derived.finalize();
    if (host.g.edge_count() > 0) {
        int h0 = host.faces[host.outer_face][0];
        r.derived.outer_face = r.derived.face_of[2 * r.original_edge[dart_edge(h0)] + (h0 & 1)];
    }
    return r;
}

EdgeSet project_original(const TowerReplacement& r, const EdgeSet& derived_subset) {
    EdgeSet out(r.base.edge_count());
    for (int e = 0; e < r.base.edge_count(); ++e)
        if (derived_subset.test(r.original_edge[e])) out.set(e);
    return out;
}

TowerRefinement tower_refine_triangulation(const PlaneGraph& g, int depth) {
    for (const auto& face : g.faces) {
        if (face.size() != 3)
            throw precondition_error("refinement needs a plane triangulation");
        std::set<int> nodes;
        for (int h : face) nodes.insert(g.dart_node(h));
        if (nodes.size() != 3)
            throw precondition_error("refinement needs a plane triangulation");
    }

    DualResult dr = plane_dual(g);
    TowerReplacement vr = vertex_replace_tower(dr.dual, depth);
    DualResult dr2 = plane_dual(vr.derived);

    TowerRefinement r;
    r.depth = depth;
    r.base = g.g;
    r.derived = std::move(dr2.dual);
    // A node of g is a face of the dual whose orbit is the node's rotation;
    // that face survives vertex replacement as the face containing the images
    // of its darts, and becomes a node again in the final dual.
    r.original_node.resize(g.g.n);
    for (int v = 0; v < g.g.n; ++v) {
        if (g.rotation[v].empty())
            throw precondition_error("refinement needs a triangulation without isolated nodes");
        int h = g.rotation[v][0];
        int hh = 2 * vr.original_edge[dart_edge(h)] + (h & 1);
        r.original_node[v] = vr.derived.face_of[hh];
    }
    std::set<int> image(r.original_node.begin(), r.original_node.end());
    if (static_cast<int>(image.size()) != g.g.n)
        throw error("refinement lost an original node");
    return r;
}

Partition restrict_tower_refinement(const TowerRefinement& r, const Partition& p) {
    if (p.k != 2) throw precondition_error("restriction needs a 2-partition");
    if (static_cast<int>(p.assign.size()) != r.derived.g.n)
        throw precondition_error("partition lives on the wrong node set");
    if (!is_connected_partition(r.derived.g, p))
        throw precondition_error("restriction needs a connected partition");
    Partition out;
    out.k = 2;
    out.assign.resize(r.base.n);
    for (int v = 0; v < r.base.n; ++v) out.assign[v] = p.assign[r.original_node[v]];
    return out;
}

int mixed_face_count(const PlaneGraph& pg, const Partition& p) {
    if (static_cast<int>(p.assign.size()) != pg.g.n)
        throw precondition_error("partition lives on the wrong node set");
    int mixed = 0;
    for (const auto& face : pg.faces) {
        bool pure = true;
        for (int h : face)
            if (p.assign[pg.dart_node(h)] != p.assign[pg.dart_node(face[0])]) pure = false;
        if (!pure) ++mixed;
    }
    return mixed;
}

}  // namespace cpart

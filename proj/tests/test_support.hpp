#pragma once

#include "cpart/multigraph.hpp"
#include "cpart/plane.hpp"
#include "cpart/rng.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace cpart::testsupport {

inline MultiGraph path_graph(int n) {
    MultiGraph g;
    g.n = n;
    for (int i = 0; i + 1 < n; i++) g.add_edge(i, i + 1);
    return g;
}

inline MultiGraph cycle_graph(int n) {
    MultiGraph g;
    g.n = n;
    for (int i = 0; i < n; i++) g.add_edge(i, (i + 1) % n);
    return g;
}

inline MultiGraph complete_graph(int n) {
    MultiGraph g;
    g.n = n;
    for (int u = 0; u < n; u++)
        for (int v = u + 1; v < n; v++) g.add_edge(u, v);
    return g;
}

// Two nodes joined by `m` parallel edges.
inline MultiGraph dipole_graph(int m) {
    MultiGraph g;
    g.n = 2;
    for (int i = 0; i < m; i++) g.add_edge(0, 1);
    return g;
}

inline std::vector<std::pair<double, double>> regular_polygon_layout(int n) {
    std::vector<std::pair<double, double>> xy(n);
    for (int i = 0; i < n; i++) {
        double a = 2 * M_PI * i / n;
        xy[i] = {std::cos(a), std::sin(a)};
    }
    return xy;
}

inline PlaneGraph triangle_plane() {
    return make_plane_from_layout(cycle_graph(3), regular_polygon_layout(3));
}

inline PlaneGraph square_plane() {
    return make_plane_from_layout(cycle_graph(4), regular_polygon_layout(4));
}

// K4 drawn with one node in the middle of the outer triangle.
inline PlaneGraph k4_plane() {
    MultiGraph g = complete_graph(4);
    std::vector<std::pair<double, double>> xy = regular_polygon_layout(3);
    xy.push_back({0.0, 0.0});
    return make_plane_from_layout(std::move(g), xy);
}

// Cube graph (3-regular, 8 nodes) drawn as nested squares.
inline PlaneGraph cube_plane() {
    MultiGraph g;
    g.n = 8;
    for (int i = 0; i < 4; i++) g.add_edge(i, (i + 1) % 4);          // outer square
    for (int i = 0; i < 4; i++) g.add_edge(4 + i, 4 + (i + 1) % 4);  // inner square
    for (int i = 0; i < 4; i++) g.add_edge(i, 4 + i);                // spokes
    std::vector<std::pair<double, double>> xy = regular_polygon_layout(4);
    for (auto [x, y] : regular_polygon_layout(4)) xy.push_back({x / 2, y / 2});
    return make_plane_from_layout(std::move(g), xy);
}

// Random connected multigraph: spanning tree plus `extra` random edges, which
// may create parallel edges (and self-loops when allowed).
inline MultiGraph random_connected_multigraph(SeededRng& rng, int n, int extra,
                                              bool allow_self_loops = false) {
    MultiGraph g;
    g.n = n;
    for (int v = 1; v < n; v++) g.add_edge(static_cast<int>(rng.uniform_int(v)), v);
    for (int i = 0; i < extra; i++) {
        int u = static_cast<int>(rng.uniform_int(n));
        int v = static_cast<int>(rng.uniform_int(n));
        if (!allow_self_loops && u == v) {
            v = (v + 1) % n;
            if (n == 1) continue;
        }
        g.add_edge(u, v);
    }
    return g;
}

// Random bridgeless plane multigraph, built from an embedded triangle by
// repeatedly applying embedding-preserving local operations:
//   - subdivide an edge,
//   - add a parallel copy of an edge (bounding a new bigon face),
//   - add a chord between two distinct nodes on a common face.
// Every operation preserves planarity and bridgelessness.
inline PlaneGraph random_bridgeless_plane(SeededRng& rng, int ops) {
    MultiGraph g = cycle_graph(3);
    std::vector<std::vector<int>> rot = {{0, 5}, {2, 1}, {4, 3}};

    auto subdivide = [&](int e) {
        int v = g.edges[e][1];
        int w = g.add_node();
        int dart_v = 2 * e + 1;
        g.edges[e][1] = w;  // edge e becomes (u, w); its dart ids survive
        int e2 = g.add_edge(w, v);
        for (auto& d : rot[v])
            if (d == dart_v) d = 2 * e2 + 1;
        rot.push_back({dart_v, 2 * e2});
    };

    auto double_edge = [&](int e) {
        int u = g.edges[e][0], v = g.edges[e][1];
        int f = g.add_edge(u, v);
        auto& ru = rot[u];
        ru.insert(std::find(ru.begin(), ru.end(), 2 * e) + 1, 2 * f);
        auto& rv = rot[v];
        rv.insert(std::find(rv.begin(), rv.end(), 2 * e + 1), 2 * f + 1);
    };

    // Insert a chord between two face-boundary positions; new darts go into
    // the face's corner wedge (immediately before the position's dart).
    auto chord = [&](SeededRng& r) {
        PlaneGraph pg = make_plane(g, rot, 0);
        int f = static_cast<int>(r.uniform_int(pg.face_count()));
        const auto& orbit = pg.faces[f];
        if (orbit.size() < 2) return;
        int i = static_cast<int>(r.uniform_int(orbit.size()));
        int j = static_cast<int>(r.uniform_int(orbit.size()));
        int hi = orbit[i], hj = orbit[j];
        int ti = pg.dart_node(hi), tj = pg.dart_node(hj);
        if (ti == tj) return;
        int e = g.add_edge(ti, tj);
        auto& ri = rot[ti];
        ri.insert(std::find(ri.begin(), ri.end(), hi), 2 * e);
        auto& rj = rot[tj];
        rj.insert(std::find(rj.begin(), rj.end(), hj), 2 * e + 1);
    };

    for (int step = 0; step < ops; step++) {
        switch (rng.uniform_int(3)) {
            case 0: subdivide(static_cast<int>(rng.uniform_int(g.edge_count()))); break;
            case 1: double_edge(static_cast<int>(rng.uniform_int(g.edge_count()))); break;
            default: chord(rng); break;
        }
    }
    return make_plane(std::move(g), std::move(rot), 0);
}

}  // namespace cpart::testsupport

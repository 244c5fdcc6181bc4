#include "cpart/plane.hpp"

#include "cpart/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace cpart {

int PlaneGraph::rotation_next(int h) const {
    int v = dart_node(h);
    const auto& rot = rotation[v];
    int pos = dart_pos[h];
    return rot[(pos + 1) % rot.size()];
}

void PlaneGraph::finalize() {
    g.check_valid();
    int dart_count = 2 * g.edge_count();
    if (static_cast<int>(rotation.size()) != g.n)
        throw precondition_error("rotation list count does not match node count");
    dart_pos.assign(dart_count, -1);
    for (int v = 0; v < g.n; ++v) {
        for (int i = 0; i < static_cast<int>(rotation[v].size()); ++i) {
            int h = rotation[v][i];
            if (h < 0 || h >= dart_count)
                throw precondition_error("rotation at node " + std::to_string(v) +
                                         " mentions invalid dart " + std::to_string(h));
            if (dart_node(h) != v)
                throw precondition_error("dart " + std::to_string(h) + " listed at node " +
                                         std::to_string(v) + " but belongs to node " +
                                         std::to_string(dart_node(h)));
            if (dart_pos[h] != -1)
                throw precondition_error("dart " + std::to_string(h) + " listed twice");
            dart_pos[h] = i;
        }
    }
    for (int h = 0; h < dart_count; ++h)
        if (dart_pos[h] == -1)
            throw precondition_error("dart " + std::to_string(h) + " missing from rotation");

    face_of.assign(dart_count, -1);
    faces.clear();
    for (int h0 = 0; h0 < dart_count; ++h0) {
        if (face_of[h0] != -1) continue;
        int f = face_count();
        faces.emplace_back();
        int h = h0;
        do {
            face_of[h] = f;
            faces[f].push_back(h);
            h = rotation_next(dart_twin(h));
        } while (h != h0);
    }
    if (face_count() > 0 && (outer_face < 0 || outer_face >= face_count()))
        throw precondition_error("outer face id out of range");
}

PlaneGraph make_plane(MultiGraph g, std::vector<std::vector<int>> rotation, int outer_face) {
    PlaneGraph pg;
    pg.g = std::move(g);
    pg.rotation = std::move(rotation);
    pg.outer_face = outer_face;
    pg.finalize();
    return pg;
}

PlaneGraph make_plane_from_layout(MultiGraph g,
                                  const std::vector<std::pair<double, double>>& xy) {
    if (static_cast<int>(xy.size()) != g.n)
        throw precondition_error("layout size does not match node count");
    std::vector<std::vector<int>> rot(g.n);
    for (int e = 0; e < g.edge_count(); ++e) {
        rot[g.edges[e][0]].push_back(2 * e);
        rot[g.edges[e][1]].push_back(2 * e + 1);
    }
    for (int v = 0; v < g.n; ++v) {
        std::sort(rot[v].begin(), rot[v].end(), [&](int a, int b) {
            auto angle = [&](int h) {
                int w = g.edges[dart_edge(h)][(h & 1) ^ 1];
                return std::atan2(xy[w].second - xy[v].second, xy[w].first - xy[v].first);
            };
            double aa = angle(a), ab = angle(b);
            if (aa != ab) return aa < ab;
            return a < b;
        });
    }
    PlaneGraph pg = make_plane(std::move(g), std::move(rot), 0);
    // With counterclockwise rotations, face orbits walk bounded faces
    // clockwise (negative shoelace area) and the unbounded face
    // counterclockwise (positive). The outer face is the most positive one.
    int best = 0;
    double best_area = 0;
    bool first = true;
    for (int f = 0; f < pg.face_count(); ++f) {
        double area2 = 0;
        const auto& orbit = pg.faces[f];
        for (size_t i = 0; i < orbit.size(); ++i) {
            auto [px, py] = xy[pg.dart_node(orbit[i])];
            auto [qx, qy] = xy[pg.dart_node(orbit[(i + 1) % orbit.size()])];
            area2 += px * qy - qx * py;
        }
        if (first || area2 > best_area) {
            best = f;
            best_area = area2;
            first = false;
        }
    }
    pg.outer_face = best;
    return pg;
}

bool euler_identity_holds(const PlaneGraph& pg) {
    // Per component: V - E + F = 2, where each component's face count includes
    // its own unbounded face. Summed over h0 components with the unbounded
    // region shared, this is the identity 1 + h0 = V - E + F.
    auto [comp_of, count] = components(pg.g);
    std::vector<int> vcnt(count, 0), ecnt(count, 0);
    std::set<std::pair<int, int>> comp_faces;
    for (int v = 0; v < pg.g.n; ++v) ++vcnt[comp_of[v]];
    for (int e = 0; e < pg.g.edge_count(); ++e) ++ecnt[comp_of[pg.g.edges[e][0]]];
    std::vector<int> fcnt(count, 0);
    for (int f = 0; f < pg.face_count(); ++f) {
        if (pg.faces[f].empty()) continue;
        int c = comp_of[pg.dart_node(pg.faces[f][0])];
        ++fcnt[c];
    }
    for (int c = 0; c < count; ++c) {
        int isolated = (vcnt[c] == 1 && ecnt[c] == 0) ? 1 : 0;
        if (isolated) continue;  // an isolated node has V=1, E=0, F=0 orbits
        if (vcnt[c] - ecnt[c] + fcnt[c] != 2) return false;
    }
    return true;
}

DualResult plane_dual(const PlaneGraph& pg) {
    if (!is_connected(pg.g)) throw precondition_error("plane_dual: graph must be connected");
    DualResult out;
    PlaneGraph& d = out.dual;
    d.g.n = pg.face_count();
    for (int e = 0; e < pg.g.edge_count(); ++e)
        d.g.add_edge(pg.face_of[2 * e], pg.face_of[2 * e + 1]);
    d.rotation.assign(d.g.n, {});
    for (int f = 0; f < pg.face_count(); ++f) d.rotation[f] = pg.faces[f];
    d.outer_face = 0;
    d.finalize();
    // Deterministic outer face: the dual face containing the first dart of
    // the primal outer face's orbit (that dual face corresponds to a primal
    // node on the outer boundary).
    if (!pg.faces.empty() && !pg.faces[pg.outer_face].empty())
        d.outer_face = d.face_of[pg.faces[pg.outer_face][0]];
    out.edge_bijection.resize(pg.g.edge_count());
    for (int e = 0; e < pg.g.edge_count(); ++e) out.edge_bijection[e] = e;
    return out;
}

PlaneGraph dual_of_dual(const PlaneGraph& pg) {
    PlaneGraph dd = plane_dual(plane_dual(pg).dual).dual;
    // Nodes of the double dual are faces of the dual, whose dart orbits are
    // exactly the primal rotations; relabel via the dart -> node map.
    std::vector<int> relabel(dd.g.n, -1);
    for (int f = 0; f < dd.g.n; ++f) {
        if (dd.rotation[f].empty())
            throw error("dual_of_dual: empty rotation orbit");
        relabel[f] = pg.dart_node(dd.rotation[f][0]);
    }
    PlaneGraph out;
    out.g.n = pg.g.n;
    out.g.node_weight = pg.g.node_weight;
    for (auto& e : dd.g.edges) out.g.add_edge(relabel[e[0]], relabel[e[1]]);
    out.rotation.assign(pg.g.n, {});
    for (int f = 0; f < dd.g.n; ++f) out.rotation[relabel[f]] = dd.rotation[f];
    // The orbit traversal can start anywhere in the cycle; align each list
    // with the original so the result matches the input verbatim.
    for (int v = 0; v < pg.g.n; ++v) {
        auto& rot = out.rotation[v];
        if (rot.empty()) continue;
        auto it = std::find(rot.begin(), rot.end(), pg.rotation[v].empty() ? -1 : pg.rotation[v][0]);
        if (it != rot.end()) std::rotate(rot.begin(), it, rot.end());
    }
    out.outer_face = 0;
    out.finalize();
    // Restore the outer face by dart-set identity with the original.
    if (pg.face_count() > 0) {
        std::set<int> want(pg.faces[pg.outer_face].begin(), pg.faces[pg.outer_face].end());
        for (int f = 0; f < out.face_count(); ++f) {
            std::set<int> have(out.faces[f].begin(), out.faces[f].end());
            if (have == want) {
                out.outer_face = f;
                break;
            }
        }
    }
    return out;
}

bool is_dual_k_partition(const MultiGraph& g, const EdgeSet& j, int k) {
    return is_bridgeless_subset(g, j) && h1_of_subset(g, j) == k - 1;
}

EdgeSet dual_of_partition(const PlaneGraph& pg, const Partition& p) {
    EdgeSet c = cut(pg.g, p);
    // The edge bijection is the identity on ids.
    return c;
}

Partition partition_of_dual(const PlaneGraph& pg, const EdgeSet& j_dual) {
    return comp(pg.g, j_dual);
}

bool is_maximal_dual_k(const MultiGraph& g, const EdgeSet& j, int k) {
    if (!is_dual_k_partition(g, j, k)) return false;
    return j.count() == g.n + k - 2;
}

}  // namespace cpart

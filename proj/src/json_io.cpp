#include "cpart/json_io.hpp"

#include "cpart/errors.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace cpart {

using nlohmann::json;

PlaneGraph GraphBundle::plane() const {
    if (!rotation) throw precondition_error("graph bundle has no rotation system");
    PlaneGraph pg;
    pg.g = g;
    pg.rotation = *rotation;
    pg.finalize();
    if (outer_face) {
        if (*outer_face < 0 || *outer_face >= pg.face_count())
            throw schema_error("outer_face out of range");
        pg.outer_face = *outer_face;
    }
    return pg;
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw schema_error(where + ": " + what);
}

int get_node_key(const std::string& key, int n, const std::string& where) {
    size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(key, &pos);
    } catch (const std::exception&) {
        fail(where, "key '" + key + "' is not a node id");
    }
    if (pos != key.size()) fail(where, "key '" + key + "' is not a node id");
    if (v < 0 || v >= n) fail(where, "node id " + key + " out of range");
    return v;
}

}  // namespace

GraphBundle graph_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    static const std::set<std::string> known = {"nodes",    "edges",      "weights",
                                               "rotation", "outer_face", "layout"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) fail(where, "unknown key '" + it.key() + "'");

    GraphBundle b;
    if (!j.contains("nodes") || !j["nodes"].is_number_integer())
        fail(where, "missing integer field 'nodes'");
    int n = j["nodes"].get<int>();
    if (n < 0) fail(where, "'nodes' must be non-negative");
    b.g.n = n;
    b.g.node_weight.assign(n, 1);

    if (!j.contains("edges") || !j["edges"].is_array()) fail(where, "missing array field 'edges'");
    const auto& edges = j["edges"];
    int m = static_cast<int>(edges.size());
    b.g.edges.assign(m, {0, 0});
    std::vector<char> seen(m, 0);
    for (int i = 0; i < m; i++) {
        const auto& e = edges[i];
        std::string ew = where + ".edges[" + std::to_string(i) + "]";
        if (!e.is_array() || e.size() != 3) fail(ew, "expected [id, u, v]");
        for (int t = 0; t < 3; t++)
            if (!e[t].is_number_integer()) fail(ew, "entries must be integers");
        int id = e[0].get<int>(), u = e[1].get<int>(), v = e[2].get<int>();
        if (id < 0 || id >= m) fail(ew, "edge id " + std::to_string(id) + " out of range");
        if (seen[id]) fail(ew, "duplicate edge id " + std::to_string(id));
        seen[id] = 1;
        if (u < 0 || u >= n || v < 0 || v >= n) fail(ew, "endpoint out of range");
        b.g.edges[id] = {u, v};
    }

    if (j.contains("weights")) {
        const auto& w = j["weights"];
        if (!w.is_object()) fail(where + ".weights", "expected an object");
        for (auto it = w.begin(); it != w.end(); ++it) {
            int v = get_node_key(it.key(), n, where + ".weights");
            if (!it.value().is_number_integer())
                fail(where + ".weights", "weight of node " + it.key() + " must be an integer");
            b.g.node_weight[v] = it.value().get<long long>();
        }
    }

    if (j.contains("rotation")) {
        const auto& r = j["rotation"];
        if (!r.is_object()) fail(where + ".rotation", "expected an object");
        std::vector<std::vector<int>> rot(n);
        for (auto it = r.begin(); it != r.end(); ++it) {
            int v = get_node_key(it.key(), n, where + ".rotation");
            if (!it.value().is_array()) fail(where + ".rotation", "value must be a dart array");
            for (const auto& d : it.value()) {
                if (!d.is_number_integer()) fail(where + ".rotation", "darts must be integers");
                int h = d.get<int>();
                if (h < 0 || h >= 2 * m) fail(where + ".rotation", "dart out of range");
                rot[v].push_back(h);
            }
        }
        b.rotation = std::move(rot);
    }

    if (j.contains("outer_face")) {
        if (!b.rotation) fail(where, "'outer_face' requires 'rotation'");
        if (!j["outer_face"].is_number_integer()) fail(where, "'outer_face' must be an integer");
        b.outer_face = j["outer_face"].get<int>();
    }

    if (j.contains("layout")) {
        const auto& l = j["layout"];
        if (!l.is_object()) fail(where + ".layout", "expected an object");
        Layout lay(n, {0.0, 0.0});
        std::vector<char> have(n, 0);
        for (auto it = l.begin(); it != l.end(); ++it) {
            int v = get_node_key(it.key(), n, where + ".layout");
            const auto& xy = it.value();
            if (!xy.is_array() || xy.size() != 2 || !xy[0].is_number() || !xy[1].is_number())
                fail(where + ".layout", "value must be [x, y]");
            lay[v] = {xy[0].get<double>(), xy[1].get<double>()};
            have[v] = 1;
        }
        for (int v = 0; v < n; v++)
            if (!have[v]) fail(where + ".layout", "missing node " + std::to_string(v));
        b.layout = std::move(lay);
    }

    b.g.check_valid();
    if (b.rotation) b.plane();  // validates the rotation system
    return b;
}

json graph_to_json(const GraphBundle& b) {
    json j;
    j["nodes"] = b.g.n;
    json edges = json::array();
    for (int e = 0; e < b.g.edge_count(); e++)
        edges.push_back({e, b.g.edges[e][0], b.g.edges[e][1]});
    j["edges"] = std::move(edges);
    if (b.g.weighted()) {
        json w = json::object();
        for (int v = 0; v < b.g.n; v++)
            if (b.g.node_weight[v] != 1) w[std::to_string(v)] = b.g.node_weight[v];
        j["weights"] = std::move(w);
    }
    if (b.rotation) {
        json r = json::object();
        for (int v = 0; v < b.g.n; v++) r[std::to_string(v)] = (*b.rotation)[v];
        j["rotation"] = std::move(r);
        if (b.outer_face) j["outer_face"] = *b.outer_face;
    }
    if (b.layout) {
        json l = json::object();
        for (int v = 0; v < b.g.n; v++)
            l[std::to_string(v)] = {(*b.layout)[v].first, (*b.layout)[v].second};
        j["layout"] = std::move(l);
    }
    return j;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw schema_error(path + ": " + e.what());
    }
    return j;
}

void save_json_file(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw error("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
}

GraphBundle load_graph_file(const std::string& path) {
    return graph_from_json(load_json_file(path), path);
}

void save_graph_file(const GraphBundle& b, const std::string& path) {
    save_json_file(graph_to_json(b), path);
}

std::string to_dot(const MultiGraph& g, const Layout* layout) {
    std::ostringstream out;
    out << "graph G {\n  node [shape=circle];\n";
    for (int v = 0; v < g.n; v++) {
        out << "  " << v;
        bool attr = false;
        auto open = [&] { out << (attr ? ", " : " ["); attr = true; };
        if (g.weighted() && g.node_weight[v] != 1) {
            open();
            out << "label=\"" << v << " (" << g.node_weight[v] << ")\"";
        }
        if (layout) {
            open();
            out << "pos=\"" << (*layout)[v].first << "," << (*layout)[v].second << "!\"";
        }
        if (attr) out << "]";
        out << ";\n";
    }
    for (int e = 0; e < g.edge_count(); e++)
        out << "  " << g.edges[e][0] << " -- " << g.edges[e][1] << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace cpart

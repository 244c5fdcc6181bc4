#pragma once

#include "cpart/multigraph.hpp"
#include "cpart/plane.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace cpart {

using Layout = std::vector<std::pair<double, double>>;

// A graph together with the optional attributes the JSON format carries.
struct GraphBundle {
    MultiGraph g;
    std::optional<std::vector<std::vector<int>>> rotation;
    std::optional<int> outer_face;
    std::optional<Layout> layout;

    bool has_plane() const { return rotation.has_value(); }
    PlaneGraph plane() const;  // throws precondition_error when no rotation
};

// JSON schema:
//   {"nodes": N,
//    "edges": [[id, u, v], ...],            ids must cover 0..m-1 exactly
//    "weights": {"<node>": w, ...},         optional
//    "rotation": {"<node>": [darts]},       optional; dart = 2*edge + side
//    "outer_face": f,                       optional, needs rotation
//    "layout": {"<node>": [x, y]}}          optional
// Unknown keys are rejected so that typos surface as errors.
GraphBundle graph_from_json(const nlohmann::json& j, const std::string& where = "graph");
nlohmann::json graph_to_json(const GraphBundle& b);

GraphBundle load_graph_file(const std::string& path);
void save_graph_file(const GraphBundle& b, const std::string& path);

std::string to_dot(const MultiGraph& g, const Layout* layout = nullptr);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const nlohmann::json& j, const std::string& path);

}  // namespace cpart

#ifndef SEPGRAPH_SCENE_IO_HPP
#define SEPGRAPH_SCENE_IO_HPP

#include "sepgraph/geom.hpp"

#include <json.hpp>

#include <string>

namespace sepgraph {

using Json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& w) : std::runtime_error(w) {}
};

/// Canonical scene JSON:
/// { "points": [{"name": str, "x": "num/den", "y": "num/den"}],
///   "obstacles": [{"id": int, "polygon": [["num/den","num/den"], ...]}],
///   "pairs": [[name, name], ...], "anchor": {"x": ..., "y": ...}? }
/// Plain integers are accepted wherever a coordinate is expected; polygons
/// are written without the closing vertex and closed on load. Reference
/// points are derived deterministically, not stored.
Json scene_to_json(const Scene& sc);
Scene scene_from_json(const Json& j);

Scene load_scene(const std::string& path);
void save_json(const std::string& path, const Json& j);
Json load_json(const std::string& path);

Json point_to_json(const Point& p);
Point point_from_json(const Json& j);

}  // namespace sepgraph

#endif

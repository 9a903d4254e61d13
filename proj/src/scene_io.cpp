#include "sepgraph/scene_io.hpp"

#include "sepgraph/labeled_graph.hpp"

#include <fstream>
#include <sstream>

namespace sepgraph {

namespace {

Rat coord_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    if (j.is_string()) {
        auto r = rat_parse(j.get<std::string>());
        if (!r) throw ParseError("bad coordinate: " + j.get<std::string>());
        return *r;
    }
    throw ParseError("coordinate must be an integer or \"num/den\" string");
}

Json coord_to_json(const Rat& r) {
    if (r.get_den() == 1 && r.get_num().fits_slong_p())
        return Json(r.get_num().get_si());
    return Json(rat_str(r));
}

}  // namespace

Json point_to_json(const Point& p) {
    Json j;
    j["x"] = coord_to_json(p.x);
    j["y"] = coord_to_json(p.y);
    return j;
}

Point point_from_json(const Json& j) {
    return Point{coord_from_json(j.at("x")), coord_from_json(j.at("y"))};
}

Json scene_to_json(const Scene& sc) {
    Json j;
    j["points"] = Json::array();
    for (const auto& [name, p] : sc.points) {
        Json pj = point_to_json(p);
        Json entry;
        entry["name"] = name;
        entry["x"] = pj["x"];
        entry["y"] = pj["y"];
        j["points"].push_back(entry);
    }
    j["obstacles"] = Json::array();
    for (const auto& ob : sc.obstacles) {
        Json oj;
        oj["id"] = ob.id;
        oj["polygon"] = Json::array();
        const auto& v = ob.boundary.vertices;
        for (size_t i = 0; i + 1 < v.size(); ++i)  // closing vertex omitted
            oj["polygon"].push_back(Json::array({coord_to_json(v[i].x),
                                                 coord_to_json(v[i].y)}));
        j["obstacles"].push_back(oj);
    }
    j["pairs"] = Json::array();
    for (auto [a, b] : sc.pairs)
        j["pairs"].push_back(Json::array({sc.points[a].first, sc.points[b].first}));
    if (sc.anchor) j["anchor"] = point_to_json(*sc.anchor);
    return j;
}

Scene scene_from_json(const Json& j) {
    Scene sc;
    if (j.contains("points"))
        for (const auto& pj : j.at("points"))
            sc.points.push_back({pj.at("name").get<std::string>(),
                                 Point{coord_from_json(pj.at("x")),
                                       coord_from_json(pj.at("y"))}});
    if (j.contains("obstacles")) {
        for (const auto& oj : j.at("obstacles")) {
            Obstacle ob;
            ob.id = oj.at("id").get<int>();
            for (const auto& vj : oj.at("polygon"))
                ob.boundary.vertices.push_back(
                    Point{coord_from_json(vj.at(0)), coord_from_json(vj.at(1))});
            if (ob.boundary.vertices.size() < 3)
                throw ParseError("polygon needs at least 3 vertices");
            if (ob.boundary.vertices.front() != ob.boundary.vertices.back())
                ob.boundary.vertices.push_back(ob.boundary.vertices.front());
            sc.obstacles.push_back(std::move(ob));
        }
    }
    if (j.contains("pairs")) {
        for (const auto& pj : j.at("pairs")) {
            int a = sc.point_index(pj.at(0).get<std::string>());
            int b = sc.point_index(pj.at(1).get<std::string>());
            if (a < 0 || b < 0) throw ParseError("pair references unknown point");
            sc.pairs.push_back({a, b});
        }
    }
    if (j.contains("anchor") && !j.at("anchor").is_null())
        sc.anchor = point_from_json(j.at("anchor"));

    // Reference points are derived, not stored. Leave boundary placeholders
    // on invalid scenes so validation can still report violations.
    for (auto& ob : sc.obstacles) ob.ref_point = ob.boundary.vertices[0];
    if (validate_scene(sc).empty()) {
        auto refs = reference_points(sc);
        for (size_t i = 0; i < sc.obstacles.size(); ++i)
            sc.obstacles[i].ref_point = refs[sc.obstacles[i].id];
    }
    return sc;
}

Scene load_scene(const std::string& path) {
    return scene_from_json(load_json(path));
}

void save_json(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << j.dump(2) << "\n";
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad JSON in ") + path + ": " + e.what());
    }
    return j;
}

}  // namespace sepgraph

#include "sepgraph/render.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace sepgraph {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string path_of(const Polyline& pl, bool close) {
    std::ostringstream os;
    for (size_t i = 0; i < pl.vertices.size(); ++i) {
        os << (i == 0 ? "M " : "L ") << fmt(rat_to_double(pl.vertices[i].x)) << " "
           << fmt(-rat_to_double(pl.vertices[i].y)) << " ";
    }
    if (close) os << "Z";
    return os.str();
}

}  // namespace

std::string render_svg(const Scene& sc, const std::set<int>& separator,
                       const std::vector<Polyline>& reference_curves,
                       const std::vector<Polyline>& witness_curves,
                       const RenderOptions& opts) {
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool first = true;
    auto feed = [&](const Point& p) {
        double x = rat_to_double(p.x), y = -rat_to_double(p.y);
        if (first || x < xmin) xmin = x;
        if (first || x > xmax) xmax = x;
        if (first || y < ymin) ymin = y;
        if (first || y > ymax) ymax = y;
        first = false;
    };
    for (const auto& ob : sc.obstacles)
        for (const auto& v : ob.boundary.vertices) feed(v);
    for (const auto& [name, p] : sc.points) feed(p);
    for (const auto& c : reference_curves)
        for (const auto& v : c.vertices) feed(v);
    for (const auto& c : witness_curves)
        for (const auto& v : c.vertices) feed(v);

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\""
       << fmt(xmin - opts.margin) << " " << fmt(ymin - opts.margin) << " "
       << fmt(xmax - xmin + 2 * opts.margin) << " "
       << fmt(ymax - ymin + 2 * opts.margin) << "\">\n";
    for (const auto& ob : sc.obstacles) {
        bool sel = separator.count(ob.id) > 0;
        os << "  <path d=\"" << path_of(ob.boundary, true) << "\" fill=\""
           << (sel ? opts.separator_fill : opts.obstacle_fill)
           << "\" fill-opacity=\"0.55\" stroke=\"#333333\" stroke-width=\""
           << fmt(opts.stroke_width * 0.15) << "\"/>\n";
    }
    for (const auto& c : reference_curves)
        os << "  <path d=\"" << path_of(c, false) << "\" fill=\"none\" stroke=\""
           << opts.curve_color << "\" stroke-width=\""
           << fmt(opts.stroke_width * 0.12)
           << "\" stroke-dasharray=\"0.4 0.25\"/>\n";
    for (const auto& c : witness_curves)
        os << "  <path d=\"" << path_of(c, false) << "\" fill=\"none\" stroke=\""
           << opts.witness_color << "\" stroke-width=\""
           << fmt(opts.stroke_width * 0.18) << "\"/>\n";
    for (const auto& [name, p] : sc.points) {
        os << "  <circle cx=\"" << fmt(rat_to_double(p.x)) << "\" cy=\""
           << fmt(-rat_to_double(p.y)) << "\" r=\"" << fmt(opts.stroke_width * 0.25)
           << "\" fill=\"#222222\"/>\n";
        os << "  <text x=\"" << fmt(rat_to_double(p.x) + 0.3) << "\" y=\""
           << fmt(-rat_to_double(p.y) - 0.3)
           << "\" font-size=\"1\" fill=\"#222222\">" << name << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

Json arrangement_to_json(const Arrangement& arr) {
    Json j;
    j["vertices"] = Json::array();
    for (const auto& v : arr.vertices)
        j["vertices"].push_back(point_to_json(v.p));
    j["edges"] = Json::array();
    for (int h = 0; h < static_cast<int>(arr.halfedges.size()); h += 2) {
        const auto& he = arr.halfedges[h];
        Json e;
        e["from"] = he.origin;
        e["to"] = he.target;
        switch (he.prov.kind) {
            case Provenance::Kind::ObstacleBoundary:
                e["source"] = "obstacle";
                break;
            case Provenance::Kind::ReferenceCurve:
                e["source"] = "curve";
                break;
            default:
                e["source"] = "helper";
        }
        e["id"] = he.prov.id;
        j["edges"].push_back(e);
    }
    j["faces"] = Json::array();
    for (size_t f = 0; f < arr.faces.size(); ++f) {
        Json fj;
        fj["unbounded"] = arr.faces[f].unbounded;
        fj["cycles"] = Json::array();
        for (int c : arr.faces[f].cycles) {
            Json cyc = Json::array();
            for (int h : arr.cycles[c].halfedges)
                cyc.push_back(arr.halfedges[h].origin);
            fj["cycles"].push_back(cyc);
        }
        j["faces"].push_back(fj);
    }
    j["euler_ok"] = arr.euler_ok();
    return j;
}

}  // namespace sepgraph

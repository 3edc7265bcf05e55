#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "envvor/arrangement.hpp"
#include "json.hpp"

namespace envvor {

std::string to_json(const Arrangement& arr) {
  using nlohmann::json;
  json out;
  json vertices = json::array();
  for (Id v = 0; v < arr.vertex_capacity(); ++v) {
    const Vertex& vx = arr.vertex(v);
    if (!vx.alive) continue;
    json j{{"id", v}};
    if (vx.point) {
      j["x"] = vx.point->x.to_string();
      j["y"] = vx.point->y.to_string();
      j["approx"] = {vx.point->x.to_double(), vx.point->y.to_double()};
    } else {
      j["at_infinity"] = to_string(vx.side);
      if (vx.key) j["line"] = vx.key->to_string();
    }
    j["payload"] = vx.data;
    vertices.push_back(std::move(j));
  }
  json halfedges = json::array();
  json edges = json::array();
  for (Id e = 0; e < arr.edge_capacity(); ++e) {
    const Edge& ed = arr.edge(e);
    if (!ed.alive) continue;
    edges.push_back({{"id", e},
                     {"curve", ed.curve ? ed.curve->to_string() : std::string("border")},
                     {"payload", ed.data}});
    for (Id h : {2 * e, 2 * e + 1})
      halfedges.push_back({{"id", h},
                           {"twin", Arrangement::twin(h)},
                           {"next", arr.next(h)},
                           {"source", arr.origin(h)},
                           {"face", arr.face_of(h)},
                           {"curve", e}});
  }
  json faces = json::array();
  for (Id f = 0; f < arr.face_capacity(); ++f) {
    const Face& fc = arr.face(f);
    if (!fc.alive) continue;
    json j{{"id", f}, {"fictitious", fc.fictitious}, {"payload", fc.data}};
    j["outer"] = fc.outer == kNoId ? json::array() : json(arr.ccb(fc.outer));
    json holes = json::array();
    for (Id h : fc.holes) holes.push_back(arr.ccb(h));
    j["holes"] = std::move(holes);
    faces.push_back(std::move(j));
  }
  out["vertices"] = std::move(vertices);
  out["halfedges"] = std::move(halfedges);
  out["edges"] = std::move(edges);
  out["faces"] = std::move(faces);
  return out.dump(1);
}

Viewport default_viewport(const Arrangement& arr) {
  Viewport v{0, 0, 0, 0};
  bool any = false;
  for (Id id : arr.vertex_ids()) {
    double x = arr.vertex(id).point->x.to_double(), y = arr.vertex(id).point->y.to_double();
    if (!any) v = {x, y, x, y};
    v.xmin = std::min(v.xmin, x);
    v.ymin = std::min(v.ymin, y);
    v.xmax = std::max(v.xmax, x);
    v.ymax = std::max(v.ymax, y);
    any = true;
  }
  if (!any) return Viewport{};
  double w = std::max(v.xmax - v.xmin, 1e-9), h = std::max(v.ymax - v.ymin, 1e-9);
  double m = 0.2 * std::max(w, h) + 0.5;
  return {v.xmin - m, v.ymin - m, v.xmax + m, v.ymax + m};
}

namespace {

struct Canvas {
  const Viewport& view;
  double scale;
  double sx(double x) const { return (x - view.xmin) * scale; }
  double sy(double y) const { return (view.ymax - y) * scale; }
};

// Far point of a linear curve end, pushed well outside the viewport.
std::pair<double, double> far_end(const XCurve& c, bool max_end, const Viewport& view) {
  const Line2& l = c.supporting_line();
  double a = l.a().get_d(), b = l.b().get_d(), k = l.c().get_d();
  double reach = 4 * (std::fabs(view.xmax) + std::fabs(view.xmin) + std::fabs(view.ymax) + std::fabs(view.ymin) + 1);
  if (c.is_vertical()) return {-k / a, max_end ? reach : -reach};
  double x = max_end ? reach : -reach;
  return {x, -(a * x + k) / b};
}

}  // namespace

std::string to_svg(const Arrangement& arr, const Viewport& view, const std::function<std::string(Id face)>& face_label) {
  const double width = 800;
  Canvas cv{view, width / std::max(view.xmax - view.xmin, 1e-12)};
  const double height = (view.ymax - view.ymin) * cv.scale;
  std::ostringstream s;
  s << std::setprecision(6) << std::fixed;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  s << "<defs><clipPath id=\"view\"><rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
    << "\"/></clipPath></defs>\n<g clip-path=\"url(#view)\" fill=\"none\" stroke=\"black\" stroke-width=\"1\">\n";
  for (Id e : arr.edge_ids()) {
    const XCurve& c = *arr.edge(e).curve;
    double x0, y0, x1, y1;
    if (c.has_min()) {
      x0 = c.min_point().x.to_double();
      y0 = c.min_point().y.to_double();
    } else {
      std::tie(x0, y0) = far_end(c, false, view);
    }
    if (c.has_max()) {
      x1 = c.max_point().x.to_double();
      y1 = c.max_point().y.to_double();
    } else {
      std::tie(x1, y1) = far_end(c, true, view);
    }
    if (c.is_linear()) {
      s << "<line x1=\"" << cv.sx(x0) << "\" y1=\"" << cv.sy(y0) << "\" x2=\"" << cv.sx(x1) << "\" y2=\"" << cv.sy(y1)
        << "\"/>\n";
    } else {
      double r = std::sqrt(c.supporting_circle().sq_radius.get_d()) * cv.scale;
      // Upper arcs run clockwise on screen from min to max.
      s << "<path d=\"M " << cv.sx(x0) << ' ' << cv.sy(y0) << " A " << r << ' ' << r << " 0 0 "
        << (c.is_upper() ? 1 : 0) << ' ' << cv.sx(x1) << ' ' << cv.sy(y1) << "\"/>\n";
    }
  }
  s << "</g>\n<g fill=\"black\">\n";
  for (Id v : arr.vertex_ids()) {
    const Point2& p = *arr.vertex(v).point;
    s << "<circle cx=\"" << cv.sx(p.x.to_double()) << "\" cy=\"" << cv.sy(p.y.to_double()) << "\" r=\"2\"/>\n";
  }
  s << "</g>\n";
  if (face_label) {
    s << "<g font-size=\"10\" fill=\"blue\">\n";
    for (Id f : arr.face_ids()) {
      double sx = 0, sy = 0;
      int n = 0;
      for (Id h : arr.boundary(f)) {
        const Vertex& o = arr.vertex(arr.origin(h));
        if (!o.point) continue;
        sx += o.point->x.to_double();
        sy += o.point->y.to_double();
        ++n;
      }
      if (!n) continue;
      s << "<text x=\"" << cv.sx(sx / n) << "\" y=\"" << cv.sy(sy / n) << "\">" << face_label(f) << "</text>\n";
    }
    s << "</g>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace envvor

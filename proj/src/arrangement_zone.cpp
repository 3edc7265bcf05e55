#include <algorithm>
#include <map>
#include <set>

#include "arrangement_internal.hpp"

namespace envvor {

namespace {

bool same_repr(const Point2& p, const Point2& q) { return p.x.same_repr(q.x) && p.y.same_repr(q.y); }

bool is_curve_end(const XCurve& c, const Point2& p) {
  return (c.has_min() && same_repr(c.min_point(), p)) || (c.has_max() && same_repr(c.max_point(), p));
}

struct ZoneCore {
  Arrangement& arr;
  const XCurve& c;
  ZoneResult res;
  std::map<Point2, Id, PointLess> on_curve;

  ZoneCore(Arrangement& a, const XCurve& curve) : arr(a), c(curve) {}

  void classify_vertices(const std::vector<Id>& verts, const OnCurveHint& hint) {
    for (Id v : verts) {
      const Point2& p = *arr.vertex(v).point;
      bool on;
      if (is_curve_end(c, p)) {
        on = true;
      } else if (auto known = hint ? hint(v) : std::nullopt) {
        on = *known;
      } else {
        res.tested_vertices.push_back(v);
        on = c.contains(p);
      }
      if (on) {
        on_curve.emplace(p, v);
        res.touched_vertices.push_back(v);
      }
    }
  }

  bool is_on(Id v) const {
    const Vertex& vx = arr.vertex(v);
    if (vx.at_infinity()) return false;
    auto it = on_curve.find(*vx.point);
    return it != on_curve.end() && it->second == v;
  }

  void split_edges(const std::vector<Id>& edges) {
    for (Id e : edges) {
      const XCurve ec = *arr.edge(e).curve;
      bool lo_on = is_on(arr.origin(2 * e)), hi_on = is_on(arr.target(2 * e));
      if (c.is_linear() && ec.is_linear() && (lo_on || hi_on)) continue;
      std::vector<Point2> cuts;
      auto add = [&](const Point2& p) {
        if (ec.has_min() && ec.min_point() == p) return;
        if (ec.has_max() && ec.max_point() == p) return;
        cuts.push_back(p);
      };
      for (const auto& x : intersect(ec, c)) {
        if (const Point2* p = std::get_if<Point2>(&x)) {
          add(*p);
        } else {
          const XCurve& o = std::get<XCurve>(x);
          if (o.has_min()) add(o.min_point());
          if (o.has_max()) add(o.max_point());
        }
      }
      std::sort(cuts.begin(), cuts.end(), PointLess{});
      cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
      Id cur = e;
      for (const Point2& p : cuts) {
        Id v = arr.split_edge(cur, p);
        cur = arr.edge_capacity() - 1;
        on_curve.emplace(p, v);
        res.new_vertices.push_back(v);
      }
    }
  }

  bool overlaps_edge(const XCurve& piece, Id lo, Id hi) const {
    if (lo == kNoId || hi == kNoId) return false;
    for (Id g : arr.outgoing(lo)) {
      if (arr.target(g) != hi || arr.is_fictitious(g)) continue;
      if (arr.curve_of(g).same_as(piece)) return true;
    }
    return false;
  }

  // Splits c at the on-curve vertices and inserts the pieces accepted by
  // `inside`, which sees each piece before any insertion.
  template <class Inside>
  void insert_pieces(Inside&& inside, Id face_hint) {
    std::vector<std::pair<Point2, Id>> stops;
    for (const auto& [p, v] : on_curve)
      if (!(c.has_min() && c.min_point() == p) && !(c.has_max() && c.max_point() == p)) stops.emplace_back(p, v);
    auto end_vertex = [&](const std::optional<Point2>& end, bool max_end) -> Id {
      if (!end) return border_vertex(max_end);
      auto it = on_curve.find(*end);
      return it == on_curve.end() ? kNoId : it->second;
    };
    struct Todo {
      XCurve piece;
      Id lo, hi;
    };
    std::vector<Todo> todo;
    std::optional<Point2> lo_pt = c.min_end();
    Id lo_v = end_vertex(lo_pt, false);
    for (std::size_t k = 0; k <= stops.size(); ++k) {
      std::optional<Point2> hi_pt;
      Id hi_v;
      if (k < stops.size()) {
        hi_pt = stops[k].first;
        hi_v = stops[k].second;
      } else {
        hi_pt = c.max_end();
        hi_v = end_vertex(hi_pt, true);
      }
      XCurve piece = c.trimmed(lo_pt, hi_pt);
      if (!overlaps_edge(piece, lo_v, hi_v) && inside(piece)) todo.push_back({piece, lo_v, hi_v});
      lo_pt = hi_pt;
      lo_v = hi_v;
    }
    for (Todo& t : todo) {
      Id lo = t.lo, hi = t.hi;
      if (lo == kNoId) lo = fresh_end(t.piece, false);
      if (hi == kNoId) hi = fresh_end(t.piece, true);
      res.new_edges.push_back(arr.insert_edge(t.piece, lo, hi, face_hint));
    }
  }

  // Existing border vertex where an unbounded end of c lands.
  Id border_vertex(bool max_end) const {
    if (!c.is_linear()) return kNoId;
    Vertex probe;
    probe.side = max_end ? c.max_side() : c.min_side();
    probe.key = c.supporting_line();
    for (Id v = 0; v < arr.vertex_capacity(); ++v) {
      const Vertex& vx = arr.vertex(v);
      if (vx.alive && vx.at_infinity() && vx.corner < 0 && compare_border(vx, probe) == Ordering::Equal) return v;
    }
    return kNoId;
  }

  Id fresh_end(const XCurve& piece, bool max_end) {
    const auto& end = max_end ? piece.max_end() : piece.min_end();
    if (!end) {
      Id v = border_vertex(max_end);
      return v != kNoId ? v : arr.add_border_vertex(piece, max_end);
    }
    auto it = on_curve.find(*end);
    if (it != on_curve.end()) return it->second;
    Id v = arr.add_vertex(*end);
    on_curve.emplace(*end, v);
    res.new_vertices.push_back(v);
    return v;
  }
};

std::vector<Id> unique_ids(std::vector<Id> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

}  // namespace

ZoneResult insert_in_face(Arrangement& arr, const XCurve& c, Id f, const OnCurveHint& hint) {
  ZoneCore z(arr, c);
  std::vector<Id> verts, edges;
  for (Id h : arr.boundary(f)) {
    if (!arr.vertex(arr.origin(h)).at_infinity()) verts.push_back(arr.origin(h));
    if (!arr.is_fictitious(h)) edges.push_back(Arrangement::edge_of(h));
  }
  z.classify_vertices(unique_ids(verts), hint);
  z.split_edges(unique_ids(edges));
  z.insert_pieces([&](const XCurve& piece) { return arr.face_contains(f, piece.interior_point()); }, f);
  return std::move(z.res);
}

ZoneResult insert_with_zone(Arrangement& arr, const XCurve& c) {
  ZoneCore z(arr, c);
  z.classify_vertices(arr.vertex_ids(), {});
  z.split_edges(arr.edge_ids());
  // Only consulted when the curve meets no feature at all.
  FeatureRef where = arr.locate(c.interior_point());
  Id face = where.kind == FeatureKind::Face ? where.id : arr.face_ids().front();
  z.insert_pieces([&](const XCurve&) { return true; }, face);
  return std::move(z.res);
}

ZoneResult simplified_convex_zone(Arrangement& arr, const XCurve& line, Id f, std::optional<Id> hint,
                                  const OnCurveHint& known) {
  if (!line.is_linear() || line.has_min() || line.has_max())
    throw Error(Errc::FallbackRequired, "simplified zone needs a full line");
  const Face& face = arr.face(f);
  if (face.outer == kNoId || !face.holes.empty())
    throw Error(Errc::FallbackRequired, "simplified zone needs a hole-free face");
  std::vector<Id> cycle = arr.ccb(face.outer);
  for (Id h : cycle)
    if (arr.is_fictitious(h) || !arr.curve_of(h).is_linear())
      throw Error(Errc::FallbackRequired, "simplified zone needs a bounded polygonal face");

  const Line2& l = line.supporting_line();
  ZoneResult res;
  const std::size_t k = cycle.size();
  std::vector<std::optional<Sign>> signs(k);
  auto sign_at = [&](std::size_t i) {
    i %= k;
    if (!signs[i]) {
      Id v = arr.origin(cycle[i]);
      if (hint && *hint == v) {
        signs[i] = Sign::Zero;
      } else if (auto on = known ? known(v) : std::nullopt; on && *on) {
        signs[i] = Sign::Zero;
      } else {
        res.tested_vertices.push_back(v);
        signs[i] = l.side(*arr.vertex(v).point);
      }
    }
    return *signs[i];
  };

  struct Crossing {
    std::size_t index;  // the vertex, or the edge leaving this vertex
    bool at_vertex;
  };
  std::vector<Crossing> found;
  std::size_t start = 0;
  Sign side;  // sign of the run currently walked
  if (hint) {
    auto it = std::find_if(cycle.begin(), cycle.end(), [&](Id h) { return arr.origin(h) == *hint; });
    if (it == cycle.end()) throw Error(Errc::FallbackRequired, "hint vertex is not on the face boundary");
    start = static_cast<std::size_t>(it - cycle.begin());
    sign_at(start);
    found.push_back({start, true});
    side = sign_at(start + 1);
    if (side == Sign::Zero) return res;
    ++start;
  } else {
    while (start < k && sign_at(start) == Sign::Zero) ++start;
    if (start == k) return res;
    side = sign_at(start);
  }
  const std::size_t last = hint ? start + k - 2 : start + k;
  for (std::size_t i = start + 1; found.size() < 2 && i <= last; ++i) {
    Sign s = sign_at(i);
    if (s == side) continue;
    if (s != Sign::Zero) {
      found.push_back({(i + k - 1) % k, false});
      side = s;
      continue;
    }
    if (found.empty()) {
      Sign after = sign_at(i + 1);
      if (after == Sign::Zero || after == side) return res;  // along an edge, or a touching corner
      found.push_back({i % k, true});
      side = after;
      ++i;
    } else {
      if (hint && (i == last || sign_at(i + 1) == Sign::Zero)) return res;  // along an edge
      found.push_back({i % k, true});
    }
  }
  if (found.size() < 2) return res;

  std::vector<Id> ends;
  for (const Crossing& x : found) {
    if (x.at_vertex) {
      ends.push_back(arr.origin(cycle[x.index]));
      res.touched_vertices.push_back(ends.back());
      continue;
    }
    Id h = cycle[x.index];
    Id e = Arrangement::edge_of(h);
    Point2 p = intersect_supports(arr.curve_of(h), line).front();
    Id v = arr.split_edge(e, p);
    res.new_vertices.push_back(v);
    ends.push_back(v);
  }
  const Point2& p1 = *arr.vertex(ends[0]).point;
  const Point2& p2 = *arr.vertex(ends[1]).point;
  if (compare_xy(p2, p1) == Ordering::Less) std::swap(ends[0], ends[1]);
  XCurve chord = XCurve::segment_on(l, *arr.vertex(ends[0]).point, *arr.vertex(ends[1]).point);
  res.new_edges.push_back(arr.insert_edge(chord, ends[0], ends[1], f));
  return res;
}

}  // namespace envvor

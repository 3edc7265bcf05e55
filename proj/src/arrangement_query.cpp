#include <algorithm>
#include <numeric>
#include <sstream>

#include "arrangement_internal.hpp"

namespace envvor {

namespace detail {

bool between_ccw(const Direction& a, const Direction& x, const Direction& b) {
  Ordering ab = compare_angle(a, b);
  Ordering ax = compare_angle(a, x);
  Ordering xb = compare_angle(x, b);
  if (ab == Ordering::Less) return ax == Ordering::Less && xb == Ordering::Less;
  return ax == Ordering::Less || xb == Ordering::Less;
}

namespace {

SqrtExt min_x(const XCurve& c) { return c.min_point().x; }
SqrtExt max_x(const XCurve& c) { return c.max_point().x; }

}  // namespace

Ordering compare_heights(const XCurve& c1, const XCurve& c2, const Point2& p) {
  if (c1.is_linear() && c2.is_linear())
    return compare_values(c1.supporting_line().y_at(p.x), c2.supporting_line().y_at(p.x));
  if (c1.is_linear()) {
    Point2 q(p.x, c1.supporting_line().y_at(p.x));
    return c2.compare_y_at_x(q);
  }
  if (c2.is_linear()) return reverse(compare_heights(c2, c1, p));
  // Two arcs crossing the vertical line through p in their interiors: they
  // do not meet in the common open x-range, so any abscissa there decides.
  SqrtExt lo = min_x(c1), hi = max_x(c1);
  if (compare_values(min_x(c2), lo) == Ordering::Greater) lo = min_x(c2);
  if (compare_values(max_x(c2), hi) == Ordering::Less) hi = max_x(c2);
  Rational x;
  if (p.x.is_rational()) x = p.x.rational();
  else x = rational_between(lo, hi);
  return compare_values(c1.y_at(x), c2.y_at(x));
}

namespace {

struct Hit {
  Id vertex = kNoId;
  Id edge = kNoId;
};

Ordering compare_hits(const Arrangement& arr, const Hit& a, const Hit& b, const Point2& p) {
  if (a.vertex != kNoId && b.vertex != kNoId) {
    if (a.vertex == b.vertex) return Ordering::Equal;
    return compare_y(*arr.vertex(a.vertex).point, *arr.vertex(b.vertex).point);
  }
  if (a.vertex != kNoId) return arr.edge(b.edge).curve->compare_y_at_x(*arr.vertex(a.vertex).point);
  if (b.vertex != kNoId) return reverse(compare_hits(arr, b, a, p));
  return compare_heights(*arr.edge(a.edge).curve, *arr.edge(b.edge).curve, p);
}

bool on_top(const Vertex& v, bool as_origin) {
  if (v.corner == 2) return as_origin;
  if (v.corner == 3) return !as_origin;
  return v.corner < 0 && v.side == BorderSide::Top;
}

// -x of a top border vertex; corners sit at +-infinity.
Ordering compare_top(const Point2& p, const Vertex& v) {
  if (v.corner == 2) return Ordering::Less;
  if (v.corner == 3) return Ordering::Greater;
  const Line2& l = *v.key;
  return compare_values(p.x, SqrtExt(-l.c() / l.a()));
}

}  // namespace

Id ray_up(const Arrangement& arr, const Point2& p, const std::vector<Id>& edges) {
  std::optional<Hit> best;
  auto offer = [&](Hit h) {
    if (!best || compare_hits(arr, h, *best, p) == Ordering::Less) best = h;
  };
  for (Id e : edges) {
    const XCurve& c = *arr.edge(e).curve;
    if (c.is_vertical()) {
      if (!c.has_min()) continue;
      if (compare_x(c.min_point(), p) != Ordering::Equal) continue;
      if (compare_y(c.min_point(), p) == Ordering::Greater) offer({arr.origin(2 * e), kNoId});
      continue;
    }
    if (!c.in_x_range(p)) continue;
    if (c.compare_y_at_x(p) != Ordering::Less) continue;
    if (c.has_min() && compare_x(c.min_point(), p) == Ordering::Equal) offer({arr.origin(2 * e), kNoId});
    else if (c.has_max() && compare_x(c.max_point(), p) == Ordering::Equal) offer({arr.target(2 * e), kNoId});
    else offer({kNoId, e});
  }
  if (best && best->edge != kNoId) return 2 * best->edge + 1;
  if (best) {
    std::vector<Id> sorted(edges);
    std::sort(sorted.begin(), sorted.end());
    std::vector<Id> around;
    for (Id g : arr.outgoing(best->vertex))
      if (std::binary_search(sorted.begin(), sorted.end(), Arrangement::edge_of(g))) around.push_back(g);
    if (around.size() == 1) return around[0];
    const Direction s = south();
    std::vector<Direction> dirs;
    for (Id g : around) dirs.push_back(arr.direction(g));
    for (std::size_t i = 0; i < around.size(); ++i)
      if (between_ccw(dirs[i], s, dirs[(i + 1) % around.size()])) return around[i];
    throw Error(Errc::PredicateFailure, "query point lies on an edge below a vertex");
  }
  for (Id e = 0; e < arr.edge_capacity(); ++e) {
    if (!arr.edge(e).alive || !arr.edge(e).fictitious()) continue;
    const Vertex& o = arr.vertex(arr.origin(2 * e));
    const Vertex& t = arr.vertex(arr.target(2 * e));
    if (!on_top(o, true) || !on_top(t, false)) continue;
    if (compare_top(p, o) != Ordering::Greater && compare_top(p, t) == Ordering::Greater) return 2 * e;
  }
  throw Error(Errc::PredicateFailure, "no top border edge above " + p.to_string());
}

}  // namespace detail

// ---------------------------------------------------------------------------

namespace {

int side_rank(const Vertex& v) { return static_cast<int>(v.side); }

}  // namespace

Ordering compare_border(const Vertex& a, const Vertex& b) {
  int ra = side_rank(a), rb = side_rank(b);
  if (ra != rb) return ra < rb ? Ordering::Less : Ordering::Greater;
  bool ca = a.corner >= 0, cb = b.corner >= 0;
  if (ca || cb) {
    if (ca && cb) return Ordering::Equal;
    return ca ? Ordering::Less : Ordering::Greater;
  }
  Ordering o = compare_border_position(*a.key, *b.key, a.side);
  if (a.side == BorderSide::Top || a.side == BorderSide::Left) o = reverse(o);
  return o;
}

std::optional<Id> Arrangement::find_vertex(const Point2& p) const {
  for (Id v = 0; v < vertex_capacity(); ++v) {
    const Vertex& vx = vertices_[v];
    if (vx.alive && vx.point && *vx.point == p) return v;
  }
  return std::nullopt;
}

FeatureRef Arrangement::locate(const Point2& p) const {
  if (auto v = find_vertex(p)) return {FeatureKind::Vertex, *v};
  auto edges = edge_ids();
  for (Id e : edges)
    if (edges_[e].curve->contains(p)) return {FeatureKind::Edge, e};
  return {FeatureKind::Face, face_of(detail::ray_up(*this, p, edges))};
}

bool Arrangement::face_contains(Id f, const Point2& p) const {
  auto bound = boundary(f);
  std::vector<Id> edges;
  for (Id h : bound)
    if (!is_fictitious(h)) edges.push_back(edge_of(h));
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  Id facing = detail::ray_up(*this, p, edges);
  return std::find(bound.begin(), bound.end(), facing) != bound.end();
}

// ---------------------------------------------------------------------------
// Validation

ValidationReport Arrangement::validate() const {
  ValidationReport r;
  auto fail = [&](std::string msg) {
    r.ok = false;
    if (r.problems.size() < 50) r.problems.push_back(std::move(msg));
  };
  const Id nh = static_cast<Id>(halfedges_.size());
  std::vector<int> seen(nh, 0);
  long V = 0, E = 0, F = 0;
  for (Id e = 0; e < edge_capacity(); ++e) {
    if (!edges_[e].alive) continue;
    ++E;
    for (Id h : {2 * e, 2 * e + 1}) {
      const Halfedge& he = halfedges_[h];
      if (he.next < 0 || he.next >= nh || !edges_[edge_of(he.next)].alive) {
        fail("halfedge " + std::to_string(h) + " has a dead next");
        continue;
      }
      if (halfedges_[he.next].prev != h) fail("prev/next mismatch at " + std::to_string(h));
      if (origin(he.next) != target(h)) fail("next does not start at target of " + std::to_string(h));
      if (face_of(he.next) != he.face) fail("face changes along cycle at " + std::to_string(h));
      if (he.face < 0 || !faces_[he.face].alive) fail("halfedge " + std::to_string(h) + " in dead face");
    }
    const Edge& ed = edges_[e];
    const Vertex& lo = vertices_[origin(2 * e)];
    const Vertex& hi = vertices_[target(2 * e)];
    if (!lo.alive || !hi.alive) fail("edge " + std::to_string(e) + " has a dead end vertex");
    if (ed.curve) {
      const XCurve& c = *ed.curve;
      if (c.has_min() != !lo.at_infinity() || (c.has_min() && !(c.min_point() == *lo.point)))
        fail("edge " + std::to_string(e) + " min end mismatch");
      if (c.has_max() != !hi.at_infinity() || (c.has_max() && !(c.max_point() == *hi.point)))
        fail("edge " + std::to_string(e) + " max end mismatch");
      if (face_of(2 * e) == 0 || face_of(2 * e + 1) == 0) fail("real edge on the fictitious face");
    } else {
      if (!lo.at_infinity() || !hi.at_infinity()) fail("border edge with a finite end");
      if (face_of(2 * e + 1) != 0) fail("border edge twin not on the fictitious face");
    }
  }
  for (Id f = 0; f < face_capacity(); ++f) {
    const Face& fc = faces_[f];
    if (!fc.alive) continue;
    ++F;
    std::vector<Id> reps;
    if (fc.outer != kNoId) reps.push_back(fc.outer);
    else if (!fc.fictitious) fail("face " + std::to_string(f) + " has no outer boundary");
    reps.insert(reps.end(), fc.holes.begin(), fc.holes.end());
    for (std::size_t i = 0; i < reps.size(); ++i) {
      Id rep = reps[i];
      if (rep < 0 || rep >= nh || !edges_[edge_of(rep)].alive) {
        fail("face " + std::to_string(f) + " has a dead cycle representative");
        continue;
      }
      for (Id g : ccb(rep)) {
        if (seen[g]++) fail("halfedge " + std::to_string(g) + " in two cycles");
        if (face_of(g) != f) fail("cycle of face " + std::to_string(f) + " has a foreign halfedge");
      }
      if (f == 0 || fc.fictitious) continue;
      bool hole = cycle_is_hole(rep);
      if (i == 0 && hole) fail("outer boundary of face " + std::to_string(f) + " is oriented as a hole");
      if (i > 0 && !hole) fail("hole of face " + std::to_string(f) + " is oriented as an outer boundary");
    }
  }
  for (Id e = 0; e < edge_capacity(); ++e) {
    if (!edges_[e].alive) continue;
    if (!seen[2 * e] || !seen[2 * e + 1]) fail("edge " + std::to_string(e) + " not reachable from a face");
  }
  std::vector<Id> parent(vertices_.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Id x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Id e = 0; e < edge_capacity(); ++e)
    if (edges_[e].alive) parent[find(origin(2 * e))] = find(origin(2 * e + 1));
  for (Id v = 0; v < vertex_capacity(); ++v) {
    const Vertex& vx = vertices_[v];
    if (!vx.alive) continue;
    ++V;
    if (find(v) == v) ++r.components;
    if (vx.out == kNoId) continue;
    if (origin(vx.out) != v) {
      fail("vertex " + std::to_string(v) + " out pointer does not leave it");
      continue;
    }
    auto around = outgoing(v);
    for (Id g : around)
      if (origin(g) != v) fail("rotation at vertex " + std::to_string(v) + " leaves it");
    if (vx.at_infinity() || around.size() < 3) continue;
    std::size_t descents = 0;
    for (std::size_t i = 0; i < around.size(); ++i) {
      Ordering o = compare_angle(direction(around[i]), direction(around[(i + 1) % around.size()]));
      if (o == Ordering::Equal) fail("overlapping curves at vertex " + std::to_string(v));
      if (o == Ordering::Greater) ++descents;
    }
    if (descents != 1) fail("rotation at vertex " + std::to_string(v) + " is not counterclockwise");
  }
  r.euler_lhs = V - E + F;
  if (r.euler_lhs != 1 + r.components)
    fail("Euler relation fails: V-E+F=" + std::to_string(r.euler_lhs) + " with " +
         std::to_string(r.components) + " components");
  return r;
}

ValidationReport Arrangement::validate_geometry() const {
  ValidationReport r;
  auto edges = edge_ids();
  auto is_end = [](const XCurve& c, const Point2& p) {
    return (c.has_min() && c.min_point() == p) || (c.has_max() && c.max_point() == p);
  };
  std::vector<detail::Box> boxes;
  for (Id e : edges) boxes.push_back(detail::box_of(*edges_[e].curve));
  std::vector<std::size_t> order(edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return boxes[x].xlo < boxes[y].xlo; });
  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    const std::size_t i = order[oi];
    const XCurve& a = *edges_[edges[i]].curve;
    for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
      const std::size_t j = order[oj];
      if (boxes[j].xlo > boxes[i].xhi) break;
      if (boxes[j].yhi < boxes[i].ylo || boxes[i].yhi < boxes[j].ylo) continue;
      const XCurve& b = *edges_[edges[j]].curve;
      for (const auto& x : intersect(a, b)) {
        const Point2* p = std::get_if<Point2>(&x);
        if (p && is_end(a, *p) && is_end(b, *p)) continue;
        r.ok = false;
        r.problems.push_back("edges " + std::to_string(edges[i]) + " and " + std::to_string(edges[j]) +
                             " meet away from a shared vertex");
      }
    }
  }
  return r;
}

Arrangement Arrangement::compacted(std::vector<Id>* vmap, std::vector<Id>* emap, std::vector<Id>* fmap) const {
  std::vector<Id> vm(vertices_.size(), kNoId), em(edges_.size(), kNoId), fm(faces_.size(), kNoId);
  Arrangement out;
  out.vertices_.clear();
  out.edges_.clear();
  out.halfedges_.clear();
  out.faces_.clear();
  for (Id v = 0; v < vertex_capacity(); ++v)
    if (vertices_[v].alive) {
      vm[v] = static_cast<Id>(out.vertices_.size());
      out.vertices_.push_back(vertices_[v]);
    }
  for (Id e = 0; e < edge_capacity(); ++e)
    if (edges_[e].alive) {
      em[e] = static_cast<Id>(out.edges_.size());
      out.edges_.push_back(edges_[e]);
    }
  for (Id f = 0; f < face_capacity(); ++f)
    if (faces_[f].alive) {
      fm[f] = static_cast<Id>(out.faces_.size());
      out.faces_.push_back(faces_[f]);
    }
  auto mh = [&](Id h) { return h == kNoId ? kNoId : 2 * em[edge_of(h)] + (h & 1); };
  out.halfedges_.resize(out.edges_.size() * 2);
  for (Id e = 0; e < edge_capacity(); ++e) {
    if (!edges_[e].alive) continue;
    for (Id h : {2 * e, 2 * e + 1}) {
      Halfedge& nh = out.halfedges_[mh(h)];
      nh.next = mh(halfedges_[h].next);
      nh.prev = mh(halfedges_[h].prev);
      nh.origin = vm[halfedges_[h].origin];
      nh.face = fm[halfedges_[h].face];
    }
  }
  for (Vertex& v : out.vertices_) v.out = mh(v.out);
  for (Face& f : out.faces_) {
    f.outer = mh(f.outer);
    for (Id& h : f.holes) h = mh(h);
  }
  if (vmap) *vmap = std::move(vm);
  if (emap) *emap = std::move(em);
  if (fmap) *fmap = std::move(fm);
  return out;
}

}  // namespace envvor

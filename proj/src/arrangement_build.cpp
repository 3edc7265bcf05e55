#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "arrangement_internal.hpp"

namespace envvor {

namespace detail {

constexpr double kInf = std::numeric_limits<double>::infinity();

static double pad(double v) { return std::isfinite(v) ? 1e-7 * (1.0 + std::fabs(v)) : 0.0; }

Box box_of(const XCurve& c) {
  Box b{-kInf, kInf, -kInf, kInf};
  if (c.has_min()) b.xlo = c.min_point().x.to_double();
  if (c.has_max()) b.xhi = c.max_point().x.to_double();
  if (c.is_vertical()) {
    double x = c.supporting_line().c().get_d() * -1.0 / c.supporting_line().a().get_d();
    b.xlo = b.xhi = x;
    if (c.has_min()) b.ylo = c.min_point().y.to_double();
    if (c.has_max()) b.yhi = c.max_point().y.to_double();
  } else if (c.is_linear()) {
    if (c.is_bounded()) {
      double y1 = c.min_point().y.to_double(), y2 = c.max_point().y.to_double();
      b.ylo = std::min(y1, y2);
      b.yhi = std::max(y1, y2);
    }
  } else {
    const Circle2& k = c.supporting_circle();
    double r = std::sqrt(k.sq_radius.get_d());
    double y1 = c.min_point().y.to_double(), y2 = c.max_point().y.to_double();
    if (c.is_upper()) {
      b.ylo = std::min(y1, y2);
      b.yhi = k.cy.get_d() + r;
    } else {
      b.ylo = k.cy.get_d() - r;
      b.yhi = std::max(y1, y2);
    }
  }
  b.xlo -= pad(b.xlo);
  b.xhi += pad(b.xhi);
  b.ylo -= pad(b.ylo);
  b.yhi += pad(b.yhi);
  return b;
}

}  // namespace detail

namespace {

using detail::Box;
using detail::box_of;

std::string support_key(const XCurve& c) {
  if (c.is_linear()) return "L" + c.supporting_line().to_string();
  return std::string(c.is_upper() ? "U" : "D") + c.supporting_circle().to_string();
}

enum class EndTag { Min, Max, Interior };

struct VertexTag {
  int curve;
  EndTag tag;
};

struct Piece {
  XCurve curve;
  Id lo = kNoId;  // vertex ids in the output, filled during assembly
  Id hi = kNoId;
  std::vector<int> sources;
};

}  // namespace

struct ArrangementBuilder {
  const std::vector<XCurve>& curves;
  const std::vector<int>& group;
  bool cross_only;

  Arrangement arr;
  std::vector<Piece> pieces;                       // one per output real edge
  std::vector<std::vector<VertexTag>> vertex_tags;  // per output vertex
  std::vector<Id> piece_edge;                       // piece -> edge id

  ArrangementBuilder(const std::vector<XCurve>& c, const std::vector<int>& g, bool cross)
      : curves(c), group(g), cross_only(cross) {}

  std::vector<std::vector<Point2>> split_points() const {
    const std::size_t n = curves.size();
    std::vector<std::vector<Point2>> splits(n);
    std::vector<Box> boxes(n);
    for (std::size_t i = 0; i < n; ++i) boxes[i] = box_of(curves[i]);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return boxes[a].xlo < boxes[b].xlo; });
    std::vector<std::size_t> active;
    auto add_point = [&](std::size_t i, const Point2& p) {
      const XCurve& c = curves[i];
      if (c.has_min() && c.min_point() == p) return;
      if (c.has_max() && c.max_point() == p) return;
      splits[i].push_back(p);
    };
    for (std::size_t i : order) {
      const Box& bi = boxes[i];
      std::size_t keep = 0;
      for (std::size_t j : active)
        if (boxes[j].xhi >= bi.xlo) active[keep++] = j;
      active.resize(keep);
      for (std::size_t j : active) {
        if (cross_only && group[i] == group[j]) continue;
        const Box& bj = boxes[j];
        if (bj.yhi < bi.ylo || bi.yhi < bj.ylo) continue;
        for (const auto& x : intersect(curves[i], curves[j])) {
          if (const Point2* p = std::get_if<Point2>(&x)) {
            add_point(i, *p);
            add_point(j, *p);
          } else {
            const XCurve& o = std::get<XCurve>(x);
            for (const auto& end : {o.min_end(), o.max_end()}) {
              if (!end) continue;
              add_point(i, *end);
              add_point(j, *end);
            }
          }
        }
      }
      active.push_back(i);
    }
    for (auto& s : splits) {
      std::sort(s.begin(), s.end(), PointLess{});
      s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    return splits;
  }

  void assemble() {
    auto splits = split_points();
    arr.vertices_.clear();
    arr.halfedges_.clear();
    arr.edges_.clear();
    arr.faces_.clear();

    static constexpr BorderSide sides[4] = {BorderSide::Bottom, BorderSide::Right, BorderSide::Top,
                                            BorderSide::Left};
    for (int k = 0; k < 4; ++k) {
      Id v = arr.new_vertex();
      arr.vertices_[v].side = sides[k];
      arr.vertices_[v].corner = k;
    }
    vertex_tags.assign(4, {});

    std::map<Point2, Id, PointLess> finite;
    auto vertex_at = [&](const Point2& p) {
      auto [it, fresh] = finite.emplace(p, kNoId);
      if (fresh) {
        it->second = arr.new_vertex();
        arr.vertices_[it->second].point = p;
        vertex_tags.emplace_back();
      }
      return it->second;
    };

    std::map<std::tuple<std::string, Id, Id>, std::size_t> unique;
    for (std::size_t i = 0; i < curves.size(); ++i) {
      const XCurve& c = curves[i];
      const auto& s = splits[i];
      std::vector<Id> ids;
      for (const Point2& p : s) ids.push_back(vertex_at(p));
      Id vmin = c.has_min() ? vertex_at(c.min_point()) : kNoId;
      Id vmax = c.has_max() ? vertex_at(c.max_point()) : kNoId;
      if (vmin != kNoId) vertex_tags[vmin].push_back({static_cast<int>(i), EndTag::Min});
      if (vmax != kNoId) vertex_tags[vmax].push_back({static_cast<int>(i), EndTag::Max});
      for (Id v : ids) vertex_tags[v].push_back({static_cast<int>(i), EndTag::Interior});
      std::vector<Id> chain;
      chain.push_back(vmin);
      chain.insert(chain.end(), ids.begin(), ids.end());
      chain.push_back(vmax);
      std::string key = support_key(c);
      for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        Id lo = chain[k], hi = chain[k + 1];
        auto [it, fresh] = unique.emplace(std::make_tuple(key, lo, hi), pieces.size());
        if (fresh) {
          std::optional<Point2> plo, phi;
          if (lo != kNoId) plo = *arr.vertices_[lo].point;
          if (hi != kNoId) phi = *arr.vertices_[hi].point;
          pieces.push_back({c.trimmed(plo, phi), lo, hi, {}});
        }
        pieces[it->second].sources.push_back(static_cast<int>(i));
      }
    }

    // Vertices at infinity and the border cycle.
    std::vector<Id> border{0, 1, 2, 3};
    for (Piece& pc : pieces) {
      if (pc.lo == kNoId) {
        pc.lo = arr.new_vertex();
        arr.vertices_[pc.lo].side = pc.curve.min_side();
        arr.vertices_[pc.lo].key = pc.curve.supporting_line();
        vertex_tags.push_back({{pc.sources.front(), EndTag::Min}});
        for (std::size_t k = 1; k < pc.sources.size(); ++k) vertex_tags.back().push_back({pc.sources[k], EndTag::Min});
        border.push_back(pc.lo);
      }
      if (pc.hi == kNoId) {
        pc.hi = arr.new_vertex();
        arr.vertices_[pc.hi].side = pc.curve.max_side();
        arr.vertices_[pc.hi].key = pc.curve.supporting_line();
        vertex_tags.emplace_back();
        for (int s : pc.sources) vertex_tags.back().push_back({s, EndTag::Max});
        border.push_back(pc.hi);
      }
    }
    std::sort(border.begin(), border.end(), [&](Id a, Id b) {
      return compare_border(arr.vertices_[a], arr.vertices_[b]) == Ordering::Less;
    });

    const Id outside = arr.new_face();
    arr.faces_[outside].fictitious = true;

    std::vector<std::vector<Id>> rotation(arr.vertices_.size());
    std::vector<Id> border_fwd(arr.vertices_.size(), kNoId), border_bwd(arr.vertices_.size(), kNoId);
    for (std::size_t k = 0; k < border.size(); ++k) {
      Id e = arr.new_edge();
      Id u = border[k], w = border[(k + 1) % border.size()];
      arr.halfedges_[2 * e].origin = u;
      arr.halfedges_[2 * e + 1].origin = w;
      border_fwd[u] = 2 * e;
      border_bwd[w] = 2 * e + 1;
    }
    piece_edge.resize(pieces.size());
    std::vector<Id> inward(arr.vertices_.size(), kNoId);
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      Piece& pc = pieces[k];
      Id e = arr.new_edge();
      piece_edge[k] = e;
      arr.edges_[e].curve = pc.curve;
      arr.edges_[e].data.assign(pc.sources.begin(), pc.sources.end());
      arr.halfedges_[2 * e].origin = pc.lo;
      arr.halfedges_[2 * e + 1].origin = pc.hi;
      rotation[pc.lo].push_back(2 * e);
      rotation[pc.hi].push_back(2 * e + 1);
    }

    for (Id v = 0; v < arr.vertex_capacity(); ++v) {
      auto& rot = rotation[v];
      const Vertex& vx = arr.vertices_[v];
      if (vx.at_infinity()) {
        std::vector<Id> full{border_fwd[v]};
        full.insert(full.end(), rot.begin(), rot.end());
        full.push_back(border_bwd[v]);
        rot = std::move(full);
      } else {
        std::vector<std::pair<Direction, Id>> dirs;
        for (Id g : rot) dirs.emplace_back(arr.direction(g), g);
        std::sort(dirs.begin(), dirs.end(), [](const auto& a, const auto& b) {
          return compare_angle(a.first, b.first) == Ordering::Less;
        });
        for (std::size_t i = 0; i < rot.size(); ++i) rot[i] = dirs[i].second;
      }
      const std::size_t k = rot.size();
      for (std::size_t i = 0; i < k; ++i) arr.set_next(Arrangement::twin(rot[i]), rot[(i + k - 1) % k]);
      if (k) arr.vertices_[v].out = rot[0];
    }

    trace_faces(outside);
  }

  void trace_faces(Id outside) {
    const Id nh = static_cast<Id>(arr.halfedges_.size());
    std::vector<Id> cycle_of(nh, kNoId);
    std::vector<Id> reps;
    for (Id h = 0; h < nh; ++h) {
      if (cycle_of[h] != kNoId) continue;
      Id c = static_cast<Id>(reps.size());
      reps.push_back(h);
      for (Id g : arr.ccb(h)) cycle_of[g] = c;
    }
    std::vector<Id> cycle_face(reps.size(), kNoId);
    std::vector<Id> holes;
    for (std::size_t c = 0; c < reps.size(); ++c) {
      Id rep = reps[c];
      bool border_fwd = false, border_bwd = false;
      for (Id g : arr.ccb(rep))
        if (arr.is_fictitious(g)) (Arrangement::is_forward(g) ? border_fwd : border_bwd) = true;
      if (border_bwd) {
        cycle_face[c] = outside;
        arr.faces_[outside].outer = rep;
      } else if (border_fwd || !arr.cycle_is_hole(rep)) {
        Id f = arr.new_face();
        arr.faces_[f].outer = rep;
        cycle_face[c] = f;
      } else {
        holes.push_back(static_cast<Id>(c));
      }
    }
    for (std::size_t c = 0; c < reps.size(); ++c)
      if (cycle_face[c] != kNoId) arr.assign_face(reps[c], cycle_face[c]);
    if (holes.empty()) return;

    // Connected components for excluding a hole's own edges from its ray.
    std::vector<Id> parent(arr.vertices_.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Id x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (Id e = 0; e < arr.edge_capacity(); ++e) parent[find(arr.origin(2 * e))] = find(arr.origin(2 * e + 1));

    std::function<Id(Id)> resolve = [&](Id c) -> Id {
      if (cycle_face[c] != kNoId) return cycle_face[c];
      Id rep = reps[c];
      Id best = kNoId;
      for (Id g : arr.ccb(rep)) {
        Id v = arr.origin(g);
        if (best == kNoId || compare_xy(*arr.vertices_[v].point, *arr.vertices_[best].point) == Ordering::Less)
          best = v;
      }
      Id comp = find(best);
      std::vector<Id> others;
      for (Id e = 0; e < arr.edge_capacity(); ++e)
        if (arr.edges_[e].curve && find(arr.origin(2 * e)) != comp) others.push_back(e);
      Id facing = detail::ray_up(arr, *arr.vertices_[best].point, others);
      Id f = resolve(cycle_of[facing]);
      cycle_face[c] = f;
      arr.faces_[f].holes.push_back(rep);
      arr.assign_face(rep, f);
      return f;
    };
    for (Id c : holes) resolve(c);
  }
};

Arrangement sweep_construct(const std::vector<XCurve>& curves, const CurveTraits& traits) {
  for (const XCurve& c : curves)
    if (!traits.admits(c)) throw Error(Errc::IncompatibleExtensions, "curve outside the family: " + c.to_string());
  std::vector<int> group(curves.size(), 0);
  ArrangementBuilder b(curves, group, false);
  b.assemble();
  return std::move(b.arr);
}

Arrangement overlay(const Arrangement& a, const Arrangement& b, OverlayProvenance* provenance,
                    const MergePayload& merge_payload) {
  std::vector<XCurve> curves;
  std::vector<int> group;
  std::vector<Id> source_edge;
  for (int gi = 0; gi < 2; ++gi) {
    const Arrangement& in = gi == 0 ? a : b;
    for (Id e : in.edge_ids()) {
      curves.push_back(*in.edge(e).curve);
      group.push_back(gi);
      source_edge.push_back(e);
    }
  }
  ArrangementBuilder bld(curves, group, true);
  bld.assemble();
  Arrangement& out = bld.arr;

  OverlayProvenance prov;
  const Id nv = out.vertex_capacity(), ne = out.edge_capacity(), nf = out.face_capacity();
  prov.vertex_a.assign(nv, {});
  prov.vertex_b.assign(nv, {});
  prov.edge_a.assign(ne, {});
  prov.edge_b.assign(ne, {});
  prov.face_a.assign(nf, kNoId);
  prov.face_b.assign(nf, kNoId);

  for (int gi = 0; gi < 2; ++gi) {
    const Arrangement& in = gi == 0 ? a : b;
    auto& vref = gi == 0 ? prov.vertex_a : prov.vertex_b;
    auto& eref = gi == 0 ? prov.edge_a : prov.edge_b;
    auto& fref = gi == 0 ? prov.face_a : prov.face_b;

    for (Id v = 0; v < 4; ++v) vref[v] = {FeatureKind::Vertex, v};
    for (Id v = 4; v < nv; ++v) {
      for (const auto& t : bld.vertex_tags[v]) {
        if (group[t.curve] != gi) continue;
        Id se = source_edge[t.curve];
        if (t.tag == EndTag::Min) vref[v] = {FeatureKind::Vertex, in.origin(2 * se)};
        else if (t.tag == EndTag::Max) vref[v] = {FeatureKind::Vertex, in.target(2 * se)};
        else if (vref[v].kind != FeatureKind::Vertex || vref[v].id == kNoId) vref[v] = {FeatureKind::Edge, se};
        if (t.tag != EndTag::Interior) break;
      }
    }
    std::vector<Id> seed(ne, kNoId);  // source edge per output edge, kNoId if none
    for (std::size_t k = 0; k < bld.pieces.size(); ++k) {
      Id e = bld.piece_edge[k];
      for (int s : bld.pieces[k].sources)
        if (group[s] == gi) seed[e] = source_edge[s];
      if (seed[e] != kNoId) eref[e] = {FeatureKind::Edge, seed[e]};
    }

    // Faces: seed from edges of this input, flood across the others.
    std::vector<Id> queue;
    for (Id e = 0; e < ne; ++e) {
      if (seed[e] == kNoId) continue;
      for (Id h : {2 * e, 2 * e + 1}) {
        Id f = out.face_of(h);
        if (fref[f] != kNoId) continue;
        fref[f] = in.face_of(2 * seed[e] + (h & 1));
        queue.push_back(f);
      }
    }
    if (queue.empty()) {
      auto real = in.face_ids();
      for (Id f = 1; f < nf; ++f) fref[f] = real.front();
    }
    while (!queue.empty()) {
      Id f = queue.back();
      queue.pop_back();
      for (Id h : out.boundary(f)) {
        Id e = Arrangement::edge_of(h);
        if (out.is_fictitious(h) || seed[e] != kNoId) continue;
        Id g = out.face_of(Arrangement::twin(h));
        if (fref[g] == kNoId) {
          fref[g] = fref[f];
          queue.push_back(g);
        }
      }
    }
    for (Id e = 0; e < ne; ++e)
      if (out.edge(e).curve && seed[e] == kNoId) eref[e] = {FeatureKind::Face, fref[out.face_of(2 * e)]};
    for (Id v = 4; v < nv; ++v)
      if (vref[v].id == kNoId) vref[v] = {FeatureKind::Face, fref[out.face_of(out.vertex(v).out)]};
  }
  prov.face_a[0] = prov.face_b[0] = 0;
  for (Id v = 0; v < nv; ++v)
    if (prov.vertex_a[v].kind == FeatureKind::Edge && prov.vertex_b[v].kind == FeatureKind::Edge) ++prov.crossings;

  if (merge_payload) {
    for (Id v = 0; v < nv; ++v)
      if (!out.vertex(v).at_infinity()) out.vertex(v).data = merge_payload(prov.vertex_a[v], prov.vertex_b[v]);
    for (Id e = 0; e < ne; ++e)
      if (out.edge(e).curve) out.edge(e).data = merge_payload(prov.edge_a[e], prov.edge_b[e]);
    for (Id f = 1; f < nf; ++f)
      out.face(f).data = merge_payload({FeatureKind::Face, prov.face_a[f]}, {FeatureKind::Face, prov.face_b[f]});
  } else {
    for (Id e = 0; e < ne; ++e) out.edge(e).data.clear();
  }
  if (provenance) *provenance = std::move(prov);
  return std::move(out);
}

}  // namespace envvor

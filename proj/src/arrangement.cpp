#include <algorithm>
#include <stdexcept>

#include "arrangement_internal.hpp"

namespace envvor {

using detail::between_ccw;

Arrangement::Arrangement() {
  static constexpr BorderSide sides[4] = {BorderSide::Bottom, BorderSide::Right, BorderSide::Top,
                                          BorderSide::Left};
  for (int k = 0; k < 4; ++k) {
    Id v = new_vertex();
    vertices_[v].side = sides[k];
    vertices_[v].corner = k;
  }
  Id outside = new_face();
  faces_[outside].fictitious = true;
  Id plane = new_face();
  for (int k = 0; k < 4; ++k) new_edge();
  for (int k = 0; k < 4; ++k) {
    Id h = 2 * k, t = h + 1;
    halfedges_[h].origin = k;
    halfedges_[t].origin = (k + 1) % 4;
    halfedges_[h].face = plane;
    halfedges_[t].face = outside;
    set_next(h, 2 * ((k + 1) % 4));
    set_next(t, 2 * ((k + 3) % 4) + 1);
    vertices_[k].out = h;
  }
  faces_[plane].outer = 0;
  faces_[outside].outer = 1;
}

Id Arrangement::new_vertex() {
  vertices_.emplace_back();
  return static_cast<Id>(vertices_.size() - 1);
}

Id Arrangement::new_edge() {
  edges_.emplace_back();
  halfedges_.emplace_back();
  halfedges_.emplace_back();
  return static_cast<Id>(edges_.size() - 1);
}

Id Arrangement::new_face() {
  faces_.emplace_back();
  return static_cast<Id>(faces_.size() - 1);
}

std::size_t Arrangement::num_vertices() const { return vertex_ids().size(); }
std::size_t Arrangement::num_edges() const { return edge_ids().size(); }
std::size_t Arrangement::num_faces() const { return face_ids().size(); }

std::vector<Id> Arrangement::vertex_ids() const {
  std::vector<Id> out;
  for (Id v = 0; v < vertex_capacity(); ++v)
    if (vertices_[v].alive && !vertices_[v].at_infinity()) out.push_back(v);
  return out;
}

std::vector<Id> Arrangement::edge_ids() const {
  std::vector<Id> out;
  for (Id e = 0; e < edge_capacity(); ++e)
    if (edges_[e].alive && !edges_[e].fictitious()) out.push_back(e);
  return out;
}

std::vector<Id> Arrangement::face_ids() const {
  std::vector<Id> out;
  for (Id f = 0; f < face_capacity(); ++f)
    if (faces_[f].alive && !faces_[f].fictitious) out.push_back(f);
  return out;
}

std::vector<Id> Arrangement::outgoing(Id v) const {
  std::vector<Id> out;
  Id start = vertices_[v].out;
  if (start == kNoId) return out;
  Id g = start;
  do {
    out.push_back(g);
    g = twin(prev(g));
  } while (g != start && out.size() <= halfedges_.size());
  return out;
}

std::size_t Arrangement::degree(Id v) const { return outgoing(v).size(); }

std::vector<Id> Arrangement::ccb(Id h) const {
  std::vector<Id> out;
  Id g = h;
  do {
    out.push_back(g);
    g = next(g);
  } while (g != h && out.size() <= halfedges_.size());
  return out;
}

std::vector<Id> Arrangement::boundary(Id f) const {
  std::vector<Id> out;
  if (faces_[f].outer != kNoId) out = ccb(faces_[f].outer);
  for (Id h : faces_[f].holes) {
    auto c = ccb(h);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

Direction Arrangement::direction(Id h) const {
  const Vertex& o = vertices_[origin(h)];
  return curve_of(h).direction_at(*o.point, is_forward(h));
}

Id Arrangement::face_in_direction(Id v, const Direction& d) const {
  auto around = outgoing(v);
  if (around.empty()) return kNoId;
  if (around.size() == 1) return face_of(around[0]);
  std::vector<Direction> dirs;
  dirs.reserve(around.size());
  for (Id g : around) dirs.push_back(direction(g));
  for (std::size_t i = 0; i < around.size(); ++i) {
    std::size_t j = (i + 1) % around.size();
    if (between_ccw(dirs[i], d, dirs[j])) return face_of(around[i]);
  }
  return kNoId;
}

// ---------------------------------------------------------------------------
// Splitting

namespace {

void replace_rep(Face& f, Id old_h, Id new_h) {
  if (f.outer == old_h) f.outer = new_h;
  for (Id& h : f.holes)
    if (h == old_h) h = new_h;
}

}  // namespace

Id Arrangement::split_edge(Id e, const Point2& p) {
  const XCurve c = *edges_[e].curve;
  auto [left, right] = c.split(p);
  Id v = new_vertex();
  vertices_[v].point = p;
  Id e2 = new_edge();
  Id h = 2 * e, t = h + 1, h2 = 2 * e2, t2 = h2 + 1;
  Id w = origin(t);
  Id nh = next(h), pt = prev(t);
  halfedges_[h2].origin = v;
  halfedges_[t2].origin = w;
  halfedges_[t].origin = v;
  halfedges_[h2].face = face_of(h);
  halfedges_[t2].face = face_of(t);
  if (nh == t) {
    set_next(h, h2);
    set_next(h2, t2);
    set_next(t2, t);
  } else {
    set_next(h, h2);
    set_next(h2, nh);
    set_next(pt, t2);
    set_next(t2, t);
  }
  if (vertices_[w].out == t) vertices_[w].out = t2;
  vertices_[v].out = h2;
  edges_[e].curve = left;
  edges_[e2].curve = right;
  edges_[e2].data = edges_[e].data;
  if (observer_) observer_->on_split_edge(e, e2, v);
  return v;
}

Id Arrangement::add_vertex(const Point2& p) {
  Id v = new_vertex();
  vertices_[v].point = p;
  return v;
}

Id Arrangement::border_halfedge_for(const XCurve& c, bool max_end) const {
  Vertex probe;
  probe.point.reset();
  probe.side = max_end ? c.max_side() : c.min_side();
  probe.key = c.supporting_line();
  for (Id e = 0; e < edge_capacity(); ++e) {
    if (!edges_[e].alive || !edges_[e].fictitious()) continue;
    Id h = 2 * e;
    const Vertex& a = vertices_[origin(h)];
    const Vertex& b = vertices_[target(h)];
    if (compare_border(a, probe) != Ordering::Less) continue;
    if (b.corner == 0 || compare_border(probe, b) == Ordering::Less) return h;
  }
  throw Error(Errc::PredicateFailure, "no border edge hosts the end of " + c.to_string());
}

Id Arrangement::add_border_vertex(const XCurve& c, bool max_end) {
  Id h = border_halfedge_for(c, max_end);
  Id v = new_vertex();
  vertices_[v].side = max_end ? c.max_side() : c.min_side();
  vertices_[v].key = c.supporting_line();
  Id e2 = new_edge();
  Id t = h + 1, h2 = 2 * e2, t2 = h2 + 1;
  Id w = origin(t);
  Id nh = next(h), pt = prev(t);
  halfedges_[h2].origin = v;
  halfedges_[t2].origin = w;
  halfedges_[t].origin = v;
  halfedges_[h2].face = face_of(h);
  halfedges_[t2].face = face_of(t);
  set_next(h, h2);
  set_next(h2, nh);
  set_next(pt, t2);
  set_next(t2, t);
  if (vertices_[w].out == t) vertices_[w].out = t2;
  vertices_[v].out = h2;
  if (observer_) observer_->on_new_vertex(v, face_of(h));
  return v;
}

// ---------------------------------------------------------------------------
// Cycle helpers

void Arrangement::assign_face(Id start, Id f) {
  for (Id g : ccb(start)) halfedges_[g].face = f;
}

bool Arrangement::cycle_has_border(Id h) const {
  for (Id g : ccb(h))
    if (is_fictitious(g)) return true;
  return false;
}

bool Arrangement::cycle_is_hole(Id h) const {
  auto cycle = ccb(h);
  for (Id g : cycle)
    if (is_fictitious(g)) return !is_forward(g);
  Id best = kNoId;
  for (Id g : cycle) {
    Id v = origin(g);
    if (best == kNoId || compare_xy(*vertices_[v].point, *vertices_[best].point) == Ordering::Less) best = v;
  }
  const Direction w = detail::west();
  for (Id a : cycle) {
    if (target(a) != best) continue;
    Id b = next(a);
    if (b == twin(a)) return true;
    if (between_ccw(direction(b), w, direction(twin(a)))) return true;
  }
  return false;
}

bool Arrangement::point_in_cycle(Id h, const Point2& p) const {
  auto cycle = ccb(h);
  std::vector<Id> edges;
  edges.reserve(cycle.size());
  for (Id g : cycle)
    if (!is_fictitious(g)) edges.push_back(edge_of(g));
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  Id facing = detail::ray_up(*this, p, edges);
  return std::find(cycle.begin(), cycle.end(), facing) != cycle.end();
}

Id Arrangement::hole_owner_index(Id f, Id h) const {
  const Face& face = faces_[f];
  for (std::size_t i = 0; i < face.holes.size(); ++i) {
    for (Id g : ccb(face.holes[i]))
      if (g == h) return static_cast<Id>(i);
  }
  return kNoId;
}

namespace {

bool cycle_contains(const Arrangement& arr, Id start, Id needle) {
  for (Id g : arr.ccb(start))
    if (g == needle) return true;
  return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// Edge insertion

Id Arrangement::insert_edge(const XCurve& c, Id v_min, Id v_max, Id f) {
  struct EndInfo {
    Id v;
    Id g_a = kNoId;  // sector bound on the clockwise side
    Id g_b = kNoId;  // sector bound on the counterclockwise side
    bool isolated = false;
  };
  auto sector = [&](Id v, Id self, const Direction* d) {
    EndInfo info{v};
    const Vertex& vx = vertices_[v];
    if (vx.out == kNoId) {
      info.isolated = true;
      return info;
    }
    if (vx.at_infinity()) {
      for (Id g : outgoing(v)) {
        if (!is_fictitious(g)) continue;
        if (is_forward(g)) info.g_a = g;
        else info.g_b = g;
      }
      return info;
    }
    (void)self;
    auto around = outgoing(v);
    if (around.size() == 1) {
      info.g_a = info.g_b = around[0];
      return info;
    }
    std::vector<Direction> dirs;
    for (Id g : around) dirs.push_back(direction(g));
    for (std::size_t i = 0; i < around.size(); ++i) {
      std::size_t j = (i + 1) % around.size();
      if (between_ccw(dirs[i], *d, dirs[j])) {
        info.g_a = around[i];
        info.g_b = around[j];
        return info;
      }
    }
    throw Error(Errc::PredicateFailure, "curve overlaps an edge at " + vx.point->to_string());
  };

  std::optional<Direction> d1, d2;
  if (!vertices_[v_min].at_infinity()) d1 = c.direction_at(*vertices_[v_min].point, true);
  if (!vertices_[v_max].at_infinity()) d2 = c.direction_at(*vertices_[v_max].point, false);
  EndInfo s1 = sector(v_min, kNoId, d1 ? &*d1 : nullptr);
  EndInfo s2 = sector(v_max, kNoId, d2 ? &*d2 : nullptr);

  Id e = new_edge();
  edges_[e].curve = c;
  Id h = 2 * e, t = h + 1;
  halfedges_[h].origin = v_min;
  halfedges_[t].origin = v_max;

  Id face_id = f;
  if (!s1.isolated) face_id = face_of(s1.g_a);
  else if (!s2.isolated) face_id = face_of(s2.g_a);
  Face* F = &faces_[face_id];

  if (s1.isolated && s2.isolated) {
    set_next(h, t);
    set_next(t, h);
    halfedges_[h].face = halfedges_[t].face = face_id;
    F->holes.push_back(h);
  } else if (s1.isolated || s2.isolated) {
    if (s2.isolated) {
      set_next(twin(s1.g_b), h);
      set_next(t, s1.g_a);
      set_next(h, t);
    } else {
      set_next(twin(s2.g_b), t);
      set_next(h, s2.g_a);
      set_next(t, h);
    }
    halfedges_[h].face = halfedges_[t].face = face_id;
  } else {
    bool same_cycle = cycle_contains(*this, s1.g_a, s2.g_a);
    bool was_outer = same_cycle && cycle_contains(*this, s1.g_a, F->outer);
    Id hole_index = same_cycle && !was_outer ? hole_owner_index(face_id, s1.g_a) : kNoId;
    Id hole1 = kNoId, hole2 = kNoId;
    if (!same_cycle) {
      hole1 = cycle_contains(*this, s1.g_a, F->outer) ? kNoId : hole_owner_index(face_id, s1.g_a);
      hole2 = cycle_contains(*this, s2.g_a, F->outer) ? kNoId : hole_owner_index(face_id, s2.g_a);
    }
    set_next(twin(s1.g_b), h);
    set_next(t, s1.g_a);
    set_next(twin(s2.g_b), t);
    set_next(h, s2.g_a);
    halfedges_[h].face = halfedges_[t].face = face_id;
    if (same_cycle) {
      Id fresh = new_face();
      F = &faces_[face_id];
      Id new_cycle = h, old_cycle = t;
      if (!was_outer && cycle_is_hole(h)) std::swap(new_cycle, old_cycle);
      assign_face(new_cycle, fresh);
      faces_[fresh].outer = new_cycle;
      faces_[fresh].data = F->data;
      if (was_outer) F->outer = old_cycle;
      else F->holes[hole_index] = old_cycle;
      std::vector<Id> keep;
      for (std::size_t i = 0; i < F->holes.size(); ++i) {
        Id rep = F->holes[i];
        if (!was_outer && static_cast<Id>(i) == hole_index) {
          keep.push_back(rep);
          continue;
        }
        const Point2& probe = *vertices_[origin(rep)].point;
        if (point_in_cycle(new_cycle, probe)) {
          faces_[fresh].holes.push_back(rep);
          for (Id g : ccb(rep)) halfedges_[g].face = fresh;
        } else {
          keep.push_back(rep);
        }
      }
      faces_[face_id].holes = std::move(keep);
      if (observer_) observer_->on_split_face(face_id, fresh);
    } else {
      if (hole1 != kNoId && hole2 != kNoId) {
        F->holes.erase(F->holes.begin() + std::max(hole1, hole2));
      } else if (hole1 != kNoId || hole2 != kNoId) {
        F->holes.erase(F->holes.begin() + (hole1 != kNoId ? hole1 : hole2));
      }
    }
  }
  if (vertices_[v_min].out == kNoId) vertices_[v_min].out = h;
  if (vertices_[v_max].out == kNoId) vertices_[v_max].out = t;
  if (observer_) observer_->on_new_edge(e, face_of(h));
  return e;
}

// ---------------------------------------------------------------------------
// Removal

void Arrangement::remove_border_vertex(Id v) {
  Id b_out = kNoId, b_in_twin = kNoId;
  for (Id g : outgoing(v)) {
    if (is_forward(g)) b_out = g;
    else b_in_twin = g;
  }
  Id a = twin(b_in_twin);  // counterclockwise border halfedge entering v
  Id ea = edge_of(a), eb = edge_of(b_out);
  Id q = target(b_out);
  Id at = twin(a), bt = twin(b_out);
  set_next(a, next(b_out));
  set_next(prev(bt), at);
  halfedges_[at].origin = q;
  if (vertices_[q].out == bt) vertices_[q].out = at;
  for (Id fid : {face_of(a), face_of(at)}) {
    replace_rep(faces_[fid], b_out, a);
    replace_rep(faces_[fid], bt, at);
  }
  edges_[eb].alive = false;
  vertices_[v].alive = false;
  vertices_[v].out = kNoId;
  (void)ea;
}

void Arrangement::drop_vertex_if_isolated(Id v) {
  Vertex& vx = vertices_[v];
  if (vx.at_infinity()) {
    if (vx.corner < 0 && degree(v) == 2) remove_border_vertex(v);
    return;
  }
  if (vx.out == kNoId) vx.alive = false;
}

void Arrangement::remove_edge(Id e) {
  if (edges_[e].fictitious()) throw std::invalid_argument("cannot remove a border edge");
  Id h = 2 * e, t = h + 1;
  Id u = origin(h), w = origin(t);
  Id fh = face_of(h), ft = face_of(t);
  Id ph = prev(h), nh = next(h), pt = prev(t), nt = next(t);

  auto fix_out = [&](Id v, Id dead, Id replacement) {
    if (vertices_[v].out == dead) vertices_[v].out = replacement;
  };

  if (fh != ft) {
    bool h_outer = cycle_contains(*this, h, faces_[fh].outer);
    bool t_outer = cycle_contains(*this, t, faces_[ft].outer);
    Id keep = fh, drop = ft;
    bool keep_side_outer = h_outer;
    if (!t_outer || (h_outer && ft < fh)) {
      keep = ft;
      drop = fh;
      keep_side_outer = t_outer;
    }
    Id keep_side = keep == fh ? h : t;
    Id keep_hole = keep_side_outer ? kNoId : hole_owner_index(keep, keep_side);
    set_next(ph, nt);
    set_next(pt, nh);
    Id rep = nt;
    Face& K = faces_[keep];
    Face& R = faces_[drop];
    for (Id hole : R.holes) {
      K.holes.push_back(hole);
      assign_face(hole, keep);
    }
    assign_face(rep, keep);
    if (keep_side_outer) K.outer = rep;
    else K.holes[keep_hole] = rep;
    R.alive = false;
    R.holes.clear();
    R.outer = kNoId;
    fix_out(u, h, nt);
    fix_out(w, t, nh);
    edges_[e].alive = false;
    if (observer_) observer_->on_merge_faces(keep, drop);
  } else {
    Face& F = faces_[fh];
    if (nh == t && nt == h) {
      Id idx = hole_owner_index(fh, h);
      F.holes.erase(F.holes.begin() + idx);
      vertices_[u].out = kNoId;
      vertices_[w].out = kNoId;
    } else if (nh == t) {
      set_next(ph, nt);
      replace_rep(F, h, nt);
      replace_rep(F, t, nt);
      fix_out(u, h, nt);
      vertices_[w].out = kNoId;
    } else if (nt == h) {
      set_next(pt, nh);
      replace_rep(F, h, nh);
      replace_rep(F, t, nh);
      fix_out(w, t, nh);
      vertices_[u].out = kNoId;
    } else {
      bool was_outer = cycle_contains(*this, h, F.outer);
      Id hole_idx = was_outer ? kNoId : hole_owner_index(fh, h);
      set_next(ph, nt);
      set_next(pt, nh);
      Id a = nt, b = nh;
      if (was_outer) {
        Id outer = a, hole = b;
        if (cycle_has_border(b) || (!cycle_has_border(a) && cycle_is_hole(a))) std::swap(outer, hole);
        F.outer = outer;
        F.holes.push_back(hole);
      } else {
        F.holes[hole_idx] = a;
        F.holes.push_back(b);
      }
      fix_out(u, h, nt);
      fix_out(w, t, nh);
    }
    edges_[e].alive = false;
  }
  drop_vertex_if_isolated(u);
  drop_vertex_if_isolated(w);
}

bool Arrangement::merge_vertex(Id v) {
  const Vertex& vx = vertices_[v];
  if (!vx.alive || vx.at_infinity()) return false;
  auto around = outgoing(v);
  if (around.size() != 2) return false;
  Id into = kNoId, from = kNoId;  // backward halfedge of the left edge, forward of the right
  for (Id g : around) {
    if (is_forward(g)) from = g;
    else into = g;
  }
  if (into == kNoId || from == kNoId) return false;
  Id e1 = edge_of(into), e2 = edge_of(from);
  const XCurve& c1 = *edges_[e1].curve;
  const XCurve& c2 = *edges_[e2].curve;
  if (!c1.mergeable(c2)) return false;
  XCurve merged = c1.merged(c2);
  Id h1 = 2 * e1, t1 = h1 + 1, h2 = 2 * e2, t2 = h2 + 1;
  Id w = origin(t2);
  Id nh2 = next(h2), pt2 = prev(t2);
  if (nh2 == t2) {
    set_next(h1, t1);
  } else {
    set_next(h1, nh2);
    set_next(pt2, t1);
  }
  halfedges_[t1].origin = w;
  if (vertices_[w].out == t2) vertices_[w].out = t1;
  for (Id fid : {face_of(h1), face_of(t1)}) {
    replace_rep(faces_[fid], h2, h1);
    replace_rep(faces_[fid], t2, t1);
  }
  edges_[e1].curve = merged;
  edges_[e2].alive = false;
  vertices_[v].alive = false;
  vertices_[v].out = kNoId;
  if (observer_) observer_->on_merge_edges(e1, e2, v);
  return true;
}

}  // namespace envvor

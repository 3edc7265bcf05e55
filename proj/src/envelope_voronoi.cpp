#include "envvor/envelope_voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace envvor {

namespace {

bool has(const Label& l, int s) { return std::binary_search(l.begin(), l.end(), s); }

Label unite(const Label& a, const Label& b) {
  Label out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Point2 offset(const Point2& p, const SqrtExt& nx, const SqrtExt& ny, const Rational& eps) {
  return Point2(p.x + SqrtExt(eps) * nx, p.y + SqrtExt(eps) * ny);
}

Sign side_of(const XCurve& support, const Point2& p) {
  return support.is_linear() ? support.supporting_line().side(p) : support.supporting_circle().side(p);
}

}  // namespace

// ---------------------------------------------------------------------------
// Traits defaults

Ordering VoronoiTraits::above_on(int s1, int s2, const XCurve& c, const std::vector<XCurve>& bisector) const {
  Point2 p = construct_point_on_curve(c);
  Direction d = c.direction_at(p, true);
  SqrtExt nx = -d.dy, ny = d.dx;
  // Left of an upper arc is outside its circle, left of a lower arc inside.
  Sign own = c.is_linear() ? Sign::Zero : (c.is_upper() ? Sign::Positive : Sign::Negative);
  std::vector<std::pair<const XCurve*, Sign>> others;
  for (const XCurve& b : bisector)
    if (!b.same_support(c) && !(b.is_arc() && c.is_arc() && b.supporting_circle() == c.supporting_circle()))
      others.emplace_back(&b, side_of(b, p));
  Rational eps(1);
  for (int iter = 0; iter < 200; ++iter, eps /= 2) {
    Point2 q = offset(p, nx, ny, eps);
    bool valid = own == Sign::Zero || side_of(c, q) == own;
    for (const auto& [b, s] : others) valid = valid && side_of(*b, q) == s;
    if (!valid) continue;
    Ordering o = compare_distance_at_point(s1, s2, q);
    if (o != Ordering::Equal) return o;
  }
  return Ordering::Equal;
}

Ordering VoronoiTraits::compare_distance_above(int s1, int s2, const XCurve& c) const {
  auto bis = construct_bisector(s1, s2);
  Point2 p = construct_point_on_curve(c);
  bool piece = false;
  for (const XCurve& b : bis)
    if (b.same_support(c) && b.contains_on_support(p)) piece = true;
  if (!piece || compare_distance_at_point(s1, s2, p) != Ordering::Equal)
    throw Error(Errc::NotABisectorPiece, c.to_string() + " is not on the bisector");
  return above_on(s1, s2, c, bis);
}

Ordering VoronoiTraits::compare_dominance(int s1, int s2) const {
  return compare_distance_at_point(s1, s2, Point2(0L, 0L));
}

Label LabeledDiagram::label_at(const Point2& p) const {
  FeatureRef f = arrangement.locate(p);
  switch (f.kind) {
    case FeatureKind::Vertex: return arrangement.vertex(f.id).data;
    case FeatureKind::Edge: return arrangement.edge(f.id).data;
    case FeatureKind::Face: return arrangement.face(f.id).data;
  }
  return {};
}

Label brute_force_label(const VoronoiTraits& traits, const Point2& p, bool farthest) {
  Label best;
  for (int s = 0; s < static_cast<int>(traits.size()); ++s) {
    if (best.empty()) {
      best.push_back(s);
      continue;
    }
    Ordering o = traits.compare_distance_at_point(s, best.front(), p);
    if (farthest) o = reverse(o);
    if (o == Ordering::Less) best.assign(1, s);
    else if (o == Ordering::Equal) best.push_back(s);
  }
  return best;
}

const char* to_string(PartitionStrategy::Kind kind) noexcept {
  switch (kind) {
    case PartitionStrategy::Kind::Randomized: return "randomized";
    case PartitionStrategy::Kind::LexSorted: return "lex";
    case PartitionStrategy::Kind::SpatialSorted: return "spatial";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Partition

namespace {

std::uint64_t hilbert_index(std::uint32_t x, std::uint32_t y, int order) {
  std::uint64_t d = 0;
  for (std::uint32_t s = 1u << (order - 1); s > 0; s >>= 1) {
    std::uint32_t rx = (x & s) ? 1 : 0, ry = (y & s) ? 1 : 0;
    d += static_cast<std::uint64_t>(s) * s * ((3 * rx) ^ ry);
    if (ry == 0) {
      if (rx == 1) {
        x = s - 1 - x;
        y = s - 1 - y;
      }
      std::swap(x, y);
    }
  }
  return d;
}

}  // namespace

std::pair<std::vector<int>, std::vector<int>> partition(const std::vector<int>& sites, const VoronoiTraits& traits,
                                                        const PartitionStrategy& strategy, std::mt19937_64& rng) {
  std::vector<int> a, b;
  const std::size_t n = sites.size();
  if (strategy.kind == PartitionStrategy::Kind::Randomized) {
    std::bernoulli_distribution coin(0.5);
    do {
      a.clear();
      b.clear();
      for (int s : sites) (coin(rng) ? a : b).push_back(s);
    } while (n >= 2 && (a.empty() || b.empty()));
    return {a, b};
  }
  std::vector<int> order(sites);
  if (strategy.kind == PartitionStrategy::Kind::LexSorted) {
    std::vector<Point2> anchor;
    for (int s : order) anchor.push_back(traits.anchor(s));
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
      Ordering o = compare_xy(anchor[i], anchor[j]);
      return o == Ordering::Less || (o == Ordering::Equal && sites[i] < sites[j]);
    });
    for (std::size_t i = 0; i < n; ++i) order[i] = sites[idx[i]];
  } else {
    std::vector<double> xs, ys;
    for (int s : sites) {
      Point2 p = traits.anchor(s);
      xs.push_back(p.x.to_double());
      ys.push_back(p.y.to_double());
    }
    auto [xmin, xmax] = std::minmax_element(xs.begin(), xs.end());
    auto [ymin, ymax] = std::minmax_element(ys.begin(), ys.end());
    double w = std::max(*xmax - *xmin, 1e-300), h = std::max(*ymax - *ymin, 1e-300);
    const int bits = 16;
    const double cells = (1u << bits) - 1;
    std::vector<std::pair<std::uint64_t, int>> keyed;
    for (std::size_t i = 0; i < n; ++i) {
      auto gx = static_cast<std::uint32_t>(std::lround((xs[i] - *xmin) / w * cells));
      auto gy = static_cast<std::uint32_t>(std::lround((ys[i] - *ymin) / h * cells));
      keyed.emplace_back(hilbert_index(gx, gy, bits), sites[i]);
    }
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t i = 0; i < n; ++i) order[i] = keyed[i].second;
  }
  std::size_t half = (n + 1) / 2;
  a.assign(order.begin(), order.begin() + static_cast<long>(half));
  b.assign(order.begin() + static_cast<long>(half), order.end());
  return {a, b};
}

LabeledDiagram single_site(int site) {
  LabeledDiagram d;
  for (Id f : d.arrangement.face_ids()) d.arrangement.face(f).data = {site};
  return d;
}

OverlayStats overlay_stats(const LabeledDiagram& d1, const LabeledDiagram& d2) {
  OverlayProvenance prov;
  Arrangement o = overlay(d1.arrangement, d2.arrangement, &prov);
  OverlayStats s;
  s.vertices = o.num_vertices();
  s.edges = o.num_edges();
  s.faces = o.num_faces();
  s.crossings = prov.crossings;
  for (Id v : o.vertex_ids()) {
    if (prov.vertex_b[v].kind == FeatureKind::Face) ++s.first_only;
    if (prov.vertex_a[v].kind == FeatureKind::Face) ++s.second_only;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Merge

namespace {

enum SideMask : unsigned char { kFirst = 1, kSecond = 2 };

struct MergeState final : ArrangementObserver {
  Arrangement& arr;
  std::vector<Label> l1v, l2v, l1e, l2e;
  std::vector<char> flagged;
  std::vector<Id> step_of_edge;
  std::vector<unsigned char> face_side;
  std::vector<Id> fresh_faces;
  Label cur1, cur2;
  Id cur_step = kNoId;

  explicit MergeState(Arrangement& a) : arr(a) { grow(); }

  void grow() {
    auto nv = static_cast<std::size_t>(arr.vertex_capacity());
    auto ne = static_cast<std::size_t>(arr.edge_capacity());
    auto nf = static_cast<std::size_t>(arr.face_capacity());
    if (l1v.size() < nv) {
      l1v.resize(nv);
      l2v.resize(nv);
      flagged.resize(nv, 0);
    }
    if (l1e.size() < ne) {
      l1e.resize(ne);
      l2e.resize(ne);
      step_of_edge.resize(ne, kNoId);
    }
    if (face_side.size() < nf) face_side.resize(nf, 0);
  }

  void on_split_edge(Id e, Id ne, Id nv) override {
    grow();
    l1e[ne] = l1e[e];
    l2e[ne] = l2e[e];
    step_of_edge[ne] = step_of_edge[e];
    l1v[nv] = l1e[e];
    l2v[nv] = l2e[e];
  }
  void on_split_face(Id, Id nf) override {
    grow();
    fresh_faces.push_back(nf);
  }
  void on_new_edge(Id e, Id) override {
    grow();
    l1e[e] = cur1;
    l2e[e] = cur2;
    step_of_edge[e] = cur_step;
  }
  void on_new_vertex(Id v, Id) override {
    grow();
    l1v[v] = cur1;
    l2v[v] = cur2;
  }
};

Label label_of(const Arrangement& src, const FeatureRef& ref) {
  switch (ref.kind) {
    case FeatureKind::Vertex: return src.vertex(ref.id).data;
    case FeatureKind::Edge: return src.edge(ref.id).data;
    case FeatureKind::Face: return src.face(ref.id).data;
  }
  return {};
}

bool on_boundary(const Arrangement& arr, Id f, const Point2& q) {
  for (Id h : arr.boundary(f))
    if (!arr.is_fictitious(h) && arr.curve_of(h).contains(q)) return true;
  return false;
}

// A point strictly inside face f.
Point2 sample_point(const Arrangement& arr, Id f) {
  for (Id h : arr.boundary(f)) {
    if (arr.is_fictitious(h)) continue;
    const XCurve& c = arr.curve_of(h);
    Point2 p = c.interior_point();
    Direction d = c.direction_at(p, true);
    SqrtExt nx = -d.dy, ny = d.dx;
    if (!Arrangement::is_forward(h)) {
      nx = -nx;
      ny = -ny;
    }
    Rational eps(1);
    for (int iter = 0; iter < 80; ++iter, eps /= 2) {
      Point2 q = offset(p, nx, ny, eps);
      if (!on_boundary(arr, f, q) && arr.face_contains(f, q)) return q;
    }
  }
  return Point2(0L, 0L);
}

Label pick(Ordering o, const Label& a, const Label& b) {
  if (o == Ordering::Less) return a;
  if (o == Ordering::Greater) return b;
  return unite(a, b);
}

unsigned char mask_of(Ordering o) {
  return o == Ordering::Less ? kFirst : o == Ordering::Greater ? kSecond : (kFirst | kSecond);
}

}  // namespace

LabeledDiagram merge(const LabeledDiagram& d1, const LabeledDiagram& d2, const VoronoiTraits& traits,
                     const MergeOptions& options, OverlayStats* stats, VoronoiRun* run) {
  OverlayProvenance prov;
  Arrangement arr = overlay(d1.arrangement, d2.arrangement, &prov);
  if (options.audit) options.audit(arr, "overlay");
  if (stats) {
    stats->vertices = arr.num_vertices();
    stats->edges = arr.num_edges();
    stats->faces = arr.num_faces();
    stats->crossings = prov.crossings;
    stats->first_only = stats->second_only = 0;
    for (Id v : arr.vertex_ids()) {
      if (prov.vertex_b[v].kind == FeatureKind::Face) ++stats->first_only;
      if (prov.vertex_a[v].kind == FeatureKind::Face) ++stats->second_only;
    }
  }

  MergeState st(arr);
  const Arrangement& a = d1.arrangement;
  const Arrangement& b = d2.arrangement;
  for (Id v : arr.vertex_ids()) {
    st.l1v[v] = label_of(a, prov.vertex_a[v]);
    st.l2v[v] = label_of(b, prov.vertex_b[v]);
  }
  for (Id e : arr.edge_ids()) {
    st.l1e[e] = label_of(a, prov.edge_a[e]);
    st.l2e[e] = label_of(b, prov.edge_b[e]);
  }
  const std::vector<Id> overlay_faces = arr.face_ids();
  std::vector<Label> l1f(arr.face_capacity()), l2f(arr.face_capacity());
  for (Id g : overlay_faces) {
    l1f[g] = a.face(prov.face_a[g]).data;
    l2f[g] = b.face(prov.face_b[g]).data;
  }
  arr.set_observer(&st);

  for (Id g : overlay_faces) {
    const Label& L1 = l1f[g];
    const Label& L2 = l2f[g];
    const int s1 = L1.front(), s2 = L2.front();
    std::vector<XCurve> bis = traits.construct_bisector(s1, s2);
    if (bis.empty()) {
      Ordering o = traits.compare_dominance(s1, s2);
      arr.face(g).data = pick(o, L1, L2);
      st.face_side[g] = mask_of(o);
      continue;
    }
    st.cur1 = L1;
    st.cur2 = L2;
    st.cur_step = g;
    st.fresh_faces.clear();
    const bool single_line = bis.size() == 1 && bis[0].is_linear() && !bis[0].has_min() && !bis[0].has_max();
    const bool hints = options.three_bisector && single_line;
    auto known = [&](Id v) -> bool {
      return st.flagged[v] && has(st.l1v[v], s1) && has(st.l2v[v], s2);
    };
    OnCurveHint hint;
    if (hints) hint = [&](Id v) -> std::optional<bool> {
        if (known(v)) return true;
        return std::nullopt;
      };

    std::vector<Id> subfaces{g};
    for (const XCurve& c : bis) {
      std::vector<Id> current = subfaces;
      for (Id f : current) {
        ZoneResult r;
        bool done = false;
        if (options.simple_zone && traits.affine() && single_line) {
          std::optional<Id> start;
          if (hints) {
            for (Id h : arr.boundary(f)) {
              Id v = arr.origin(h);
              if (!arr.vertex(v).at_infinity() && known(v)) {
                start = v;
                break;
              }
            }
          }
          try {
            r = simplified_convex_zone(arr, c, f, start, hints ? OnCurveHint(hint) : OnCurveHint{});
            done = true;
            if (run) ++run->simplified_zones;
          } catch (const Error& err) {
            if (err.code() != Errc::FallbackRequired) throw;
          }
        }
        if (!done) {
          r = insert_in_face(arr, c, f, hint);
          if (run) ++run->general_zones;
        }
        st.grow();
        for (Id v : r.new_vertices) {
          if (st.l1v[v].empty() && st.l2v[v].empty()) {
            st.l1v[v] = L1;
            st.l2v[v] = L2;
          }
          st.flagged[v] = 1;
        }
        for (Id v : r.touched_vertices) st.flagged[v] = 1;
      }
      subfaces.insert(subfaces.end(), st.fresh_faces.begin(), st.fresh_faces.end());
      st.fresh_faces.clear();
    }

    std::map<Id, Ordering> above;
    for (Id f : subfaces) {
      std::optional<Ordering> o;
      for (Id h : arr.boundary(f)) {
        if (arr.is_fictitious(h)) continue;
        Id e = Arrangement::edge_of(h);
        if (st.step_of_edge[e] != g) continue;
        auto it = above.find(e);
        if (it == above.end()) it = above.emplace(e, traits.above_on(s1, s2, *arr.edge(e).curve, bis)).first;
        o = Arrangement::is_forward(h) ? it->second : reverse(it->second);
        break;
      }
      if (!o) o = traits.compare_distance_at_point(s1, s2, sample_point(arr, f));
      arr.face(f).data = pick(*o, L1, L2);
      st.face_side[f] = mask_of(*o);
    }
    if (options.audit) options.audit(arr, "bisector");
  }
  arr.set_observer(nullptr);

  // Edge and vertex labels follow from the sides dominating around them.
  for (Id e : arr.edge_ids()) {
    unsigned char m = st.face_side[arr.face_of(2 * e)] | st.face_side[arr.face_of(2 * e + 1)];
    arr.edge(e).data = m == kFirst ? st.l1e[e] : m == kSecond ? st.l2e[e] : unite(st.l1e[e], st.l2e[e]);
  }
  for (Id v : arr.vertex_ids()) {
    const Label& v1 = st.l1v[v];
    const Label& v2 = st.l2v[v];
    if (!options.three_bisector) {
      arr.vertex(v).data = pick(traits.compare_distance_at_point(v1.front(), v2.front(), *arr.vertex(v).point), v1, v2);
      continue;
    }
    unsigned char m = st.flagged[v] ? (kFirst | kSecond) : 0;
    for (Id h : arr.outgoing(v)) m |= st.face_side[arr.face_of(h)];
    arr.vertex(v).data = m == kFirst ? v1 : m == kSecond ? v2 : unite(v1, v2);
  }

  // Redundant features.
  for (Id e = 0; e < arr.edge_capacity(); ++e) {
    const Edge& ed = arr.edge(e);
    if (!ed.alive || ed.fictitious()) continue;
    if (ed.data == arr.face(arr.face_of(2 * e)).data && ed.data == arr.face(arr.face_of(2 * e + 1)).data)
      arr.remove_edge(e);
  }
  for (Id v = 0; v < arr.vertex_capacity(); ++v) {
    const Vertex& vx = arr.vertex(v);
    if (!vx.alive || vx.at_infinity() || arr.degree(v) != 2) continue;
    bool same = true;
    for (Id h : arr.outgoing(v)) same = same && arr.edge(Arrangement::edge_of(h)).data == vx.data;
    if (same) arr.merge_vertex(v);
  }
  LabeledDiagram out;
  out.arrangement = arr.compacted();
  out.farthest = d1.farthest;
  if (options.audit) options.audit(out.arrangement, "merged");
  return out;
}

// ---------------------------------------------------------------------------
// Recursion

namespace {

LabeledDiagram build(const std::vector<int>& sites, const VoronoiTraits& traits, const PartitionStrategy& strategy,
                     const MergeOptions& options, std::mt19937_64& rng, VoronoiRun* run, bool top) {
  if (sites.size() == 1) return single_site(sites.front());
  auto [left, right] = partition(sites, traits, strategy, rng);
  LabeledDiagram d1 = build(left, traits, strategy, options, rng, run, false);
  LabeledDiagram d2 = build(right, traits, strategy, options, rng, run, false);
  OverlayStats stats;
  LabeledDiagram out = merge(d1, d2, traits, options, &stats, run);
  if (run) {
    ++run->merges;
    run->total_crossings += stats.crossings;
    if (top) run->final_overlay = stats;
  }
  return out;
}

}  // namespace

LabeledDiagram voronoi(const std::vector<int>& sites, const VoronoiTraits& traits, const PartitionStrategy& strategy,
                       const MergeOptions& options, VoronoiRun* run) {
  if (sites.empty()) throw Error(Errc::EmptyInput, "no sites");
  std::mt19937_64 rng(strategy.seed);
  if (run) *run = VoronoiRun{};
  return build(sites, traits, strategy, options, rng, run, true);
}

LabeledDiagram voronoi(const VoronoiTraits& traits, const PartitionStrategy& strategy, const MergeOptions& options,
                       VoronoiRun* run) {
  std::vector<int> sites(traits.size());
  for (std::size_t i = 0; i < sites.size(); ++i) sites[i] = static_cast<int>(i);
  return voronoi(sites, traits, strategy, options, run);
}

LabeledDiagram farthest_voronoi(const VoronoiTraits& traits, const PartitionStrategy& strategy,
                                const MergeOptions& options, VoronoiRun* run) {
  ReversedTraits reversed(traits);
  LabeledDiagram d = voronoi(reversed, strategy, options, run);
  d.farthest = true;
  return d;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

std::string label_text(const Label& l) {
  std::string s = "{";
  for (std::size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + std::to_string(l[i]);
  return s + "}";
}

}  // namespace

std::string canonical_serialization(const LabeledDiagram& d) {
  const Arrangement& arr = d.arrangement;
  std::vector<std::string> vs, es, fs;
  for (Id v : arr.vertex_ids())
    vs.push_back("V " + arr.vertex(v).point->to_string() + " " + std::to_string(arr.degree(v)) + " " +
                 label_text(arr.vertex(v).data));
  for (Id e : arr.edge_ids()) es.push_back("E " + arr.edge(e).curve->to_string() + " " + label_text(arr.edge(e).data));
  for (Id f : arr.face_ids()) {
    std::vector<std::string> parts;
    for (Id h : arr.boundary(f))
      parts.push_back(arr.is_fictitious(h) ? std::string("inf") : arr.curve_of(h).to_string());
    std::sort(parts.begin(), parts.end());
    std::string s = "F " + label_text(arr.face(f).data);
    for (const auto& p : parts) s += " | " + p;
    fs.push_back(std::move(s));
  }
  std::sort(vs.begin(), vs.end(), [](const std::string& x, const std::string& y) { return x < y; });
  std::sort(es.begin(), es.end());
  std::sort(fs.begin(), fs.end());
  std::ostringstream out;
  out << (d.farthest ? "farthest" : "nearest") << " V=" << vs.size() << " E=" << es.size() << " F=" << fs.size()
      << "\n";
  for (const auto& s : vs) out << s << "\n";
  for (const auto& s : es) out << s << "\n";
  for (const auto& s : fs) out << s << "\n";
  return out.str();
}

}  // namespace envvor

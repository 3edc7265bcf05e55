#pragma once

// Half-edge planar subdivision of x-monotone curves with a symbolic border
// at infinity.
//
// Halfedges come in twin pairs: halfedge 2e and 2e+1 belong to edge e, and
// 2e runs from the curve's xy-smaller end to the larger one. For the four
// (or more) border edges, 2e runs counterclockwise around the border and
// bounds a real face; its twin bounds the fictitious outer face 0.
//
// Unbounded curve ends terminate at vertices at infinity that split the
// border. A border position is the side plus the supporting line of the end;
// counterclockwise the border runs bottom (x increasing), right (y
// increasing), top (x decreasing) and left (y decreasing).

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "envvor/kernel.hpp"

namespace envvor {

using Id = std::int32_t;
inline constexpr Id kNoId = -1;
using Payload = std::vector<std::int32_t>;

enum class FeatureKind { Vertex, Edge, Face };

struct FeatureRef {
  FeatureKind kind = FeatureKind::Face;
  Id id = kNoId;
  bool operator==(const FeatureRef&) const = default;
};

struct Vertex {
  std::optional<Point2> point;  // empty for vertices at infinity
  BorderSide side = BorderSide::Bottom;
  int corner = -1;  // 0..3 for BL, BR, TR, TL
  std::optional<Line2> key;
  Id out = kNoId;  // some outgoing halfedge
  bool alive = true;
  Payload data;

  bool at_infinity() const noexcept { return !point.has_value(); }
};

struct Halfedge {
  Id next = kNoId;
  Id prev = kNoId;
  Id origin = kNoId;
  Id face = kNoId;
};

struct Edge {
  std::optional<XCurve> curve;  // empty for border edges
  bool alive = true;
  Payload data;

  bool fictitious() const noexcept { return !curve.has_value(); }
};

struct Face {
  Id outer = kNoId;
  std::vector<Id> holes;
  bool fictitious = false;
  bool alive = true;
  Payload data;
};

/// Notified after topological changes so callers can keep side tables
/// indexed by feature id in sync.
class ArrangementObserver {
 public:
  virtual ~ArrangementObserver() = default;
  virtual void on_split_edge(Id /*edge*/, Id /*new_edge*/, Id /*new_vertex*/) {}
  virtual void on_split_face(Id /*face*/, Id /*new_face*/) {}
  virtual void on_new_edge(Id /*edge*/, Id /*face*/) {}
  virtual void on_new_vertex(Id /*vertex*/, Id /*face*/) {}
  virtual void on_merge_faces(Id /*kept*/, Id /*removed*/) {}
  virtual void on_merge_edges(Id /*kept*/, Id /*removed*/, Id /*removed_vertex*/) {}
};

enum class CurveFamily { Linear, CircleSegment };

/// Curve family contract: which curves are admissible.
struct CurveTraits {
  CurveFamily family = CurveFamily::Linear;
  bool admits(const XCurve& c) const { return family == CurveFamily::CircleSegment || c.is_linear(); }
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> problems;
  long euler_lhs = 0;  // V - E + F over all features
  long components = 0;
};

class Arrangement {
 public:
  /// The empty plane: four corners, four border edges, faces 0 (fictitious)
  /// and 1 (the plane).
  Arrangement();

  // -- access ---------------------------------------------------------------
  const Vertex& vertex(Id v) const { return vertices_[v]; }
  const Edge& edge(Id e) const { return edges_[e]; }
  const Face& face(Id f) const { return faces_[f]; }
  const Halfedge& halfedge(Id h) const { return halfedges_[h]; }
  Vertex& vertex(Id v) { return vertices_[v]; }
  Edge& edge(Id e) { return edges_[e]; }
  Face& face(Id f) { return faces_[f]; }

  Id vertex_capacity() const { return static_cast<Id>(vertices_.size()); }
  Id edge_capacity() const { return static_cast<Id>(edges_.size()); }
  Id face_capacity() const { return static_cast<Id>(faces_.size()); }

  static Id twin(Id h) { return h ^ 1; }
  static Id edge_of(Id h) { return h >> 1; }
  static bool is_forward(Id h) { return (h & 1) == 0; }
  Id next(Id h) const { return halfedges_[h].next; }
  Id prev(Id h) const { return halfedges_[h].prev; }
  Id origin(Id h) const { return halfedges_[h].origin; }
  Id target(Id h) const { return halfedges_[twin(h)].origin; }
  Id face_of(Id h) const { return halfedges_[h].face; }
  bool is_fictitious(Id h) const { return edges_[edge_of(h)].fictitious(); }
  const XCurve& curve_of(Id h) const { return *edges_[edge_of(h)].curve; }

  /// Live finite vertices, real edges and real faces.
  std::size_t num_vertices() const;
  std::size_t num_edges() const;
  std::size_t num_faces() const;
  std::vector<Id> vertex_ids() const;  // finite, live
  std::vector<Id> edge_ids() const;    // real, live
  std::vector<Id> face_ids() const;    // real, live

  /// Outgoing halfedges of v in counterclockwise order starting at out(v).
  std::vector<Id> outgoing(Id v) const;
  std::size_t degree(Id v) const;
  /// The cycle starting at h.
  std::vector<Id> ccb(Id h) const;
  /// All halfedges bounding f (outer cycle then holes).
  std::vector<Id> boundary(Id f) const;
  /// Direction leaving origin(h) along h's curve.
  Direction direction(Id h) const;
  /// The face containing the sector around v that contains direction d.
  Id face_in_direction(Id v, const Direction& d) const;

  // -- mutation -------------------------------------------------------------
  /// Splits edge e at a point in its relative interior; returns the new
  /// vertex. The new edge takes the part above p.
  Id split_edge(Id e, const Point2& p);
  /// Adds a finite vertex not yet connected to anything.
  Id add_vertex(const Point2& p);
  /// Creates the vertex at infinity hosting the given unbounded end of c,
  /// splitting the border edge that contains its position.
  Id add_border_vertex(const XCurve& c, bool max_end);
  /// Inserts c between its end vertices (existing ids; isolated vertices are
  /// allowed), with c contained in face f apart from its ends.
  /// Returns the new edge.
  Id insert_edge(const XCurve& c, Id v_min, Id v_max, Id f);
  /// Removes e, merging faces or splitting cycles as needed; dangling finite
  /// vertices and vertices at infinity left without a curve are removed.
  void remove_edge(Id e);
  /// Removes a degree-2 finite vertex whose edges carry mergeable curves.
  bool merge_vertex(Id v);

  void set_observer(ArrangementObserver* obs) { observer_ = obs; }

  // -- queries ---------------------------------------------------------------
  FeatureRef locate(const Point2& p) const;
  /// Vertex whose point equals p, if any.
  std::optional<Id> find_vertex(const Point2& p) const;
  /// Whether p (not on the boundary of f) lies in face f.
  bool face_contains(Id f, const Point2& p) const;

  ValidationReport validate() const;
  /// Checks that no two edges intersect away from shared vertices.
  ValidationReport validate_geometry() const;

  /// Copy with dead features dropped; ids renumbered in creation order.
  /// Optional maps receive old id -> new id (kNoId when dropped).
  Arrangement compacted(std::vector<Id>* vmap = nullptr, std::vector<Id>* emap = nullptr,
                        std::vector<Id>* fmap = nullptr) const;

  // Construction from scratch, used by sweep_construct and overlay.
  struct BuildPiece {
    XCurve curve;
    std::vector<int> sources;  // input curve indices
  };
  friend struct ArrangementBuilder;

 private:
  Id new_vertex();
  Id new_edge();
  Id new_face();
  void set_next(Id h, Id n) {
    halfedges_[h].next = n;
    halfedges_[n].prev = h;
  }
  Id border_halfedge_for(const XCurve& c, bool max_end) const;
  void assign_face(Id start, Id f);
  bool cycle_is_hole(Id h) const;
  bool cycle_has_border(Id h) const;
  bool point_in_cycle(Id h, const Point2& p) const;
  Id hole_owner_index(Id f, Id h) const;
  void remove_border_vertex(Id v);
  void drop_vertex_if_isolated(Id v);

  std::vector<Vertex> vertices_;
  std::vector<Halfedge> halfedges_;
  std::vector<Edge> edges_;
  std::vector<Face> faces_;
  ArrangementObserver* observer_ = nullptr;
};

// -- border positions -------------------------------------------------------

/// Linear order of border positions starting at the bottom-left corner and
/// running counterclockwise.
Ordering compare_border(const Vertex& a, const Vertex& b);

// -- construction -----------------------------------------------------------

/// Arrangement of all input curves. Intersections become vertices and
/// overlapping parts are stored once; each edge payload lists the indices
/// of the input curves covering it.
Arrangement sweep_construct(const std::vector<XCurve>& curves, const CurveTraits& traits = {});

struct OverlayProvenance {
  std::vector<FeatureRef> vertex_a, vertex_b;
  std::vector<FeatureRef> edge_a, edge_b;  // Face when the edge lies inside a face
  std::vector<Id> face_a, face_b;
  std::size_t crossings = 0;  // vertices interior to an edge of each input
};

using MergePayload = std::function<Payload(const FeatureRef& a, const FeatureRef& b)>;

/// Superimposition of a and b; provenance maps every output feature to the
/// originating feature of each input.
Arrangement overlay(const Arrangement& a, const Arrangement& b, OverlayProvenance* provenance = nullptr,
                    const MergePayload& merge_payload = {});

// -- zone insertion -----------------------------------------------------------

struct ZoneResult {
  std::vector<Id> new_vertices;
  std::vector<Id> new_edges;
  /// Vertices of the curve that already existed in the arrangement.
  std::vector<Id> touched_vertices;
  /// Vertices whose position relative to the curve was evaluated.
  std::vector<Id> tested_vertices;
};

/// Per-vertex oracle: returns true/false when the caller already knows
/// whether the vertex lies on the inserted curve, nullopt otherwise.
using OnCurveHint = std::function<std::optional<bool>(Id vertex)>;

/// Inserts c into the arrangement, splitting every face it crosses.
ZoneResult insert_with_zone(Arrangement& arr, const XCurve& c);

/// Inserts the part of c lying in face f (closure excluded).
ZoneResult insert_in_face(Arrangement& arr, const XCurve& c, Id f, const OnCurveHint& hint = {});

/// Insertion of a full line into a bounded, convex, hole-free face with
/// linear edges; at most two boundary crossings are computed. `hint` names a
/// boundary vertex known to lie on the line. Throws FallbackRequired when
/// the preconditions do not hold.
ZoneResult simplified_convex_zone(Arrangement& arr, const XCurve& line, Id f, std::optional<Id> hint = {},
                                  const OnCurveHint& known = {});

// -- serialization -------------------------------------------------------------

std::string to_json(const Arrangement& arr);

struct Viewport {
  double xmin = -1, ymin = -1, xmax = 1, ymax = 1;
};

/// Bounding box of finite vertices inflated by 20% (a unit box if none).
Viewport default_viewport(const Arrangement& arr);
std::string to_svg(const Arrangement& arr, const Viewport& view,
                   const std::function<std::string(Id face)>& face_label = {});

}  // namespace envvor

#pragma once

// Exact geometric primitives shared by every diagram family.
//
// Points carry one-root coordinates (both rational, or both in the same
// Q(sqrt c)). Curves always have rational supporting geometry: a line with
// rational coefficients or a circle with rational center and rational
// squared radius. Every predicate below evaluates a polynomial of one point
// against rational data, so it stays inside the point's extension field.

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "envvor/numeric.hpp"

namespace envvor {

struct Point2 {
  SqrtExt x;
  SqrtExt y;

  Point2() = default;
  Point2(SqrtExt px, SqrtExt py);
  Point2(const Rational& px, const Rational& py) : x(px), y(py) {}
  Point2(long px, long py) : x(Rational(px)), y(Rational(py)) {}

  bool is_rational() const noexcept { return x.is_rational() && y.is_rational(); }
  std::string to_string() const;
};

Ordering compare_x(const Point2& p, const Point2& q);
Ordering compare_y(const Point2& p, const Point2& q);
Ordering compare_xy(const Point2& p, const Point2& q);
inline bool operator==(const Point2& p, const Point2& q) { return compare_xy(p, q) == Ordering::Equal; }

struct PointLess {
  bool operator()(const Point2& p, const Point2& q) const { return compare_xy(p, q) == Ordering::Less; }
};

/// Sign of det(q - p, r - p); Positive is a left turn.
Sign orientation(const Point2& p, const Point2& q, const Point2& r);

/// Direction vector plus signed curvature, used to order curves around a
/// vertex. Curvature is +1/r for a left-turning arc and -1/r for a
/// right-turning one; lines have none.
struct Direction {
  SqrtExt dx;
  SqrtExt dy;
  Sign curvature = Sign::Zero;
  Rational sq_radius;
};

/// Counterclockwise angular order starting at the +x axis; exact ties are
/// broken by curvature (more left-turning is later).
Ordering compare_angle(const Direction& d1, const Direction& d2);

// ---------------------------------------------------------------------------

class Line2 {
 public:
  /// a*x + b*y + c = 0, scaled to coprime integers with the first nonzero of
  /// (a, b) positive. Throws std::invalid_argument when a = b = 0.
  Line2(const Rational& a, const Rational& b, const Rational& c);
  static Line2 through(const Point2& p, const Point2& q);

  const Rational& a() const noexcept { return a_; }
  const Rational& b() const noexcept { return b_; }
  const Rational& c() const noexcept { return c_; }
  bool is_vertical() const noexcept { return sgn(b_) == 0; }
  bool is_horizontal() const noexcept { return sgn(a_) == 0; }

  /// Sign of a*x + b*y + c at p.
  Sign side(const Point2& p) const;
  SqrtExt y_at(const SqrtExt& x) const;
  SqrtExt x_at(const SqrtExt& y) const;
  /// Direction (b, -a) normalized to point in increasing xy order.
  Direction forward() const;

  bool operator==(const Line2& o) const { return a_ == o.a_ && b_ == o.b_ && c_ == o.c_; }
  std::string to_string() const;

 private:
  Rational a_, b_, c_;
};

struct Circle2 {
  Rational cx;
  Rational cy;
  Rational sq_radius;

  Circle2() = default;
  Circle2(Rational x, Rational y, Rational r2);
  Point2 center() const { return Point2(cx, cy); }
  /// Sign of (x-cx)^2 + (y-cy)^2 - r^2 at p.
  Sign side(const Point2& p) const;
  bool operator==(const Circle2& o) const {
    return cx == o.cx && cy == o.cy && sq_radius == o.sq_radius;
  }
  std::string to_string() const;
};

enum class PieceKind { Segment, Ray, Line };

/// A linear bisector piece. A ray starts at `source` and extends through
/// `toward` (a second point on the line) to infinity.
struct LinearPiece {
  PieceKind kind = PieceKind::Line;
  Line2 supporting;
  std::optional<Point2> source;
  std::optional<Point2> target;

  static LinearPiece line(const Line2& l);
  static LinearPiece segment(const Point2& p, const Point2& q);
  static LinearPiece ray(const Line2& l, const Point2& source, const Point2& toward);
};

// ---------------------------------------------------------------------------
// X-monotone curves

/// Border side hosting an unbounded curve end.
enum class BorderSide { Bottom = 0, Right = 1, Top = 2, Left = 3 };
const char* to_string(BorderSide side) noexcept;

class XCurve {
 public:
  enum class Kind { Linear, Arc };

  static XCurve line(const Line2& l);
  static XCurve segment(const Point2& p, const Point2& q);
  static XCurve segment_on(const Line2& l, const Point2& p, const Point2& q);
  /// Ray on `l` from `source` in the direction of increasing xy order when
  /// `increasing`, otherwise decreasing.
  static XCurve ray(const Line2& l, const Point2& source, bool increasing);
  static XCurve from_piece(const LinearPiece& piece);
  /// Arc of `circle` on its upper or lower half between two circle points.
  static XCurve arc(const Circle2& circle, bool upper, const Point2& p, const Point2& q);
  /// Splits a full circle into its x-monotone upper and lower arcs.
  static std::vector<XCurve> circle_arcs(const Circle2& circle);

  Kind kind() const noexcept { return kind_; }
  bool is_linear() const noexcept { return kind_ == Kind::Linear; }
  bool is_arc() const noexcept { return kind_ == Kind::Arc; }
  const Line2& supporting_line() const { return *line_; }
  const Circle2& supporting_circle() const { return *circle_; }
  bool is_upper() const noexcept { return upper_; }
  bool is_vertical() const noexcept { return is_linear() && line_->is_vertical(); }

  bool has_min() const noexcept { return min_.has_value(); }
  bool has_max() const noexcept { return max_.has_value(); }
  const Point2& min_point() const { return *min_; }
  const Point2& max_point() const { return *max_; }
  const std::optional<Point2>& min_end() const noexcept { return min_; }
  const std::optional<Point2>& max_end() const noexcept { return max_; }
  bool is_bounded() const noexcept { return has_min() && has_max(); }
  /// Border side of an unbounded end.
  BorderSide min_side() const;
  BorderSide max_side() const;

  /// Whether p.x lies in the closed x-range (for vertical curves: x equal).
  bool in_x_range(const Point2& p) const;
  /// Position of p relative to the curve at p.x (Less: p below). For
  /// vertical curves, compares against the y-range.
  Ordering compare_y_at_x(const Point2& p) const;
  bool contains(const Point2& p) const;
  /// Range test for a point already known to lie on the supporting line or
  /// circle; avoids the degenerate on-curve sign test.
  bool contains_on_support(const Point2& p) const;
  /// Curve height at a rational abscissa inside the x-range (non-vertical).
  SqrtExt y_at(const Rational& x) const;
  /// Tangent leaving the curve end at `from_min ? min : max`, or leaving an
  /// interior point p toward the max end (from_min) / min end.
  Direction direction_at(const Point2& p, bool toward_max) const;

  /// Same line, or same circle and half.
  bool same_support(const XCurve& other) const;
  /// Structural identity: same support and same ends.
  bool same_as(const XCurve& other) const;

  /// Splits at an interior point p.
  std::pair<XCurve, XCurve> split(const Point2& p) const;
  /// Sub-curve between two points of the curve (either may be absent for an
  /// unbounded side).
  XCurve trimmed(const std::optional<Point2>& lo, const std::optional<Point2>& hi) const;
  bool mergeable(const XCurve& next) const;
  /// Concatenation of this curve with `next` whose min end is our max end.
  XCurve merged(const XCurve& next) const;

  /// A point in the relative interior, with rational x when the curve is
  /// not vertical (and a rational point for linear curves).
  Point2 interior_point() const;

  /// Canonical text used for structural comparison of diagrams.
  std::string to_string() const;

 private:
  XCurve() = default;

  Kind kind_ = Kind::Linear;
  std::optional<Line2> line_;
  std::optional<Circle2> circle_;
  bool upper_ = false;
  std::optional<Point2> min_;
  std::optional<Point2> max_;
};

using CurveOrPoint = std::variant<Point2, XCurve>;

/// All intersections of two curves in increasing xy order; overlapping
/// portions are reported as sub-curves.
std::vector<CurveOrPoint> intersect(const XCurve& c1, const XCurve& c2);

/// Intersection points of full supporting geometry (no range checks).
std::vector<Point2> intersect_supports(const XCurve& c1, const XCurve& c2);

/// Ordering of unbounded ends sharing a border side, in increasing
/// coordinate along the side (y for Left/Right, x for Top/Bottom).
Ordering compare_border_position(const Line2& l1, const Line2& l2, BorderSide side);

// ---------------------------------------------------------------------------
// Sites and bisectors

struct PointSite {
  Point2 p;
};

struct DiskSite {
  Circle2 disk;
};

struct PairSite {
  Point2 p;
  Point2 q;
};

struct MobiusSite {
  Point2 p;
  Rational lambda;
  Rational mu;
};

using DistanceFn = std::variant<PointSite, DiskSite, PairSite, MobiusSite>;

/// Compares the distance of `point` to f1 and f2 (Less: f1 closer).
Ordering distance_compare_at(const Point2& point, const DistanceFn& f1, const DistanceFn& f2);

Line2 perpendicular_bisector(const Point2& p, const Point2& q);

/// Bisector absence; `dominant` is Less when the first site is closer
/// everywhere (except possibly a single point), Greater for the second,
/// Equal when the distance functions coincide.
struct NoBisector {
  Ordering dominant = Ordering::Equal;
};

std::variant<Line2, NoBisector> radical_axis(const Circle2& d1, const Circle2& d2);

std::variant<Line2, Circle2, NoBisector> mobius_bisector(const MobiusSite& s1, const MobiusSite& s2);

struct TriangleAreaBisector {
  std::vector<LinearPiece> pieces;
  bool parallel = false;
  /// The two distance functions are identical (dominance Equal).
  bool coincident = false;
};

TriangleAreaBisector triangle_area_bisector(const PairSite& s1, const PairSite& s2);

}  // namespace envvor

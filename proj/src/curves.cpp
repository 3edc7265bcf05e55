#include <algorithm>
#include <stdexcept>

#include "envvor/kernel.hpp"

namespace envvor {

const char* to_string(BorderSide side) noexcept {
  switch (side) {
    case BorderSide::Bottom: return "bottom";
    case BorderSide::Right: return "right";
    case BorderSide::Top: return "top";
    case BorderSide::Left: return "left";
  }
  return "?";
}

XCurve XCurve::line(const Line2& l) {
  XCurve c;
  c.line_ = l;
  return c;
}

XCurve XCurve::segment(const Point2& p, const Point2& q) {
  if (p.is_rational() && q.is_rational()) return segment_on(Line2::through(p, q), p, q);
  throw Error(Errc::IncompatibleExtensions, "segment needs a supporting line");
}

XCurve XCurve::segment_on(const Line2& l, const Point2& p, const Point2& q) {
  Ordering o = compare_xy(p, q);
  if (o == Ordering::Equal) throw std::invalid_argument("degenerate segment at " + p.to_string());
  XCurve c;
  c.line_ = l;
  c.min_ = o == Ordering::Less ? p : q;
  c.max_ = o == Ordering::Less ? q : p;
  return c;
}

XCurve XCurve::ray(const Line2& l, const Point2& source, bool increasing) {
  XCurve c;
  c.line_ = l;
  (increasing ? c.min_ : c.max_) = source;
  return c;
}

XCurve XCurve::from_piece(const LinearPiece& piece) {
  switch (piece.kind) {
    case PieceKind::Segment: return segment_on(piece.supporting, *piece.source, *piece.target);
    case PieceKind::Ray:
      return ray(piece.supporting, *piece.source, compare_xy(*piece.source, *piece.target) == Ordering::Less);
    case PieceKind::Line: break;
  }
  return line(piece.supporting);
}

XCurve XCurve::arc(const Circle2& circle, bool upper, const Point2& p, const Point2& q) {
  Ordering o = compare_xy(p, q);
  if (o == Ordering::Equal) throw std::invalid_argument("degenerate arc at " + p.to_string());
  XCurve c;
  c.kind_ = Kind::Arc;
  c.circle_ = circle;
  c.upper_ = upper;
  c.min_ = o == Ordering::Less ? p : q;
  c.max_ = o == Ordering::Less ? q : p;
  return c;
}

std::vector<XCurve> XCurve::circle_arcs(const Circle2& circle) {
  if (sgn(circle.sq_radius) <= 0) throw std::invalid_argument("circle_arcs: empty circle");
  SqrtExt r(0, 1, circle.sq_radius);
  Point2 left(SqrtExt(circle.cx) - r, SqrtExt(circle.cy));
  Point2 right(SqrtExt(circle.cx) + r, SqrtExt(circle.cy));
  return {arc(circle, true, left, right), arc(circle, false, left, right)};
}

BorderSide XCurve::min_side() const { return is_vertical() ? BorderSide::Bottom : BorderSide::Left; }
BorderSide XCurve::max_side() const { return is_vertical() ? BorderSide::Top : BorderSide::Right; }

bool XCurve::in_x_range(const Point2& p) const {
  if (is_vertical()) return compare_values(p.x, SqrtExt(-line_->c() / line_->a())) == Ordering::Equal;
  if (min_ && compare_x(p, *min_) == Ordering::Less) return false;
  if (max_ && compare_x(p, *max_) == Ordering::Greater) return false;
  return true;
}

Ordering XCurve::compare_y_at_x(const Point2& p) const {
  if (is_vertical()) {
    if (min_ && compare_y(p, *min_) == Ordering::Less) return Ordering::Less;
    if (max_ && compare_y(p, *max_) == Ordering::Greater) return Ordering::Greater;
    return Ordering::Equal;
  }
  if (is_linear()) return to_ordering(line_->side(p) * sign_of(line_->b()));
  Ordering vs_center = compare_values(p.y, SqrtExt(circle_->cy));
  if (upper_ && vs_center == Ordering::Less) return Ordering::Less;
  if (!upper_ && vs_center == Ordering::Greater) return Ordering::Greater;
  Sign s = circle_->side(p);
  if (s == Sign::Zero) return Ordering::Equal;
  bool outside = s == Sign::Positive;
  return upper_ == outside ? Ordering::Greater : Ordering::Less;
}

bool XCurve::contains(const Point2& p) const {
  return in_x_range(p) && compare_y_at_x(p) == Ordering::Equal;
}

bool XCurve::contains_on_support(const Point2& p) const {
  if (is_vertical()) {
    if (min_ && compare_y(p, *min_) == Ordering::Less) return false;
    return !(max_ && compare_y(p, *max_) == Ordering::Greater);
  }
  if (!in_x_range(p)) return false;
  if (is_linear()) return true;
  Ordering vs_center = compare_values(p.y, SqrtExt(circle_->cy));
  return upper_ ? vs_center != Ordering::Less : vs_center != Ordering::Greater;
}

SqrtExt XCurve::y_at(const Rational& x) const {
  if (is_vertical()) throw std::logic_error("y_at on a vertical curve");
  if (is_linear()) return SqrtExt((-line_->c() - line_->a() * x) / line_->b());
  Rational dx = x - circle_->cx;
  return SqrtExt(circle_->cy, upper_ ? 1 : -1, circle_->sq_radius - dx * dx);
}

Direction XCurve::direction_at(const Point2& p, bool toward_max) const {
  if (is_linear()) {
    Direction d = line_->forward();
    if (!toward_max) {
      d.dx = -d.dx;
      d.dy = -d.dy;
    }
    return d;
  }
  // Upper arcs run clockwise from left to right, lower arcs counterclockwise.
  bool clockwise = upper_ == toward_max;
  SqrtExt tx = SqrtExt(circle_->cy) - p.y;
  SqrtExt ty = p.x - SqrtExt(circle_->cx);
  Direction d;
  d.dx = clockwise ? -tx : tx;
  d.dy = clockwise ? -ty : ty;
  d.curvature = clockwise ? Sign::Negative : Sign::Positive;
  d.sq_radius = circle_->sq_radius;
  return d;
}

bool XCurve::same_support(const XCurve& other) const {
  if (kind_ != other.kind_) return false;
  if (is_linear()) return *line_ == *other.line_;
  return *circle_ == *other.circle_ && upper_ == other.upper_;
}

namespace {

bool same_end(const std::optional<Point2>& a, const std::optional<Point2>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || *a == *b;
}

}  // namespace

bool XCurve::same_as(const XCurve& other) const {
  return same_support(other) && same_end(min_, other.min_) && same_end(max_, other.max_);
}

std::pair<XCurve, XCurve> XCurve::split(const Point2& p) const {
  return {trimmed(min_, p), trimmed(p, max_)};
}

XCurve XCurve::trimmed(const std::optional<Point2>& lo, const std::optional<Point2>& hi) const {
  XCurve c = *this;
  c.min_ = lo;
  c.max_ = hi;
  if (lo && hi && compare_xy(*lo, *hi) != Ordering::Less)
    throw std::invalid_argument("trimmed: empty range " + lo->to_string() + " " + hi->to_string());
  return c;
}

bool XCurve::mergeable(const XCurve& next) const {
  return same_support(next) && max_ && next.min_ && *max_ == *next.min_;
}

XCurve XCurve::merged(const XCurve& next) const {
  if (!mergeable(next)) throw std::invalid_argument("curves are not mergeable");
  XCurve c = *this;
  c.max_ = next.max_;
  return c;
}

Point2 XCurve::interior_point() const {
  if (is_vertical()) {
    SqrtExt x(-line_->c() / line_->a());
    Rational y;
    if (min_ && max_) y = rational_between(min_->y, max_->y);
    else if (min_) y = rational_between(min_->y, min_->y + SqrtExt(2));
    else if (max_) y = rational_between(max_->y - SqrtExt(2), max_->y);
    else y = 0;
    return Point2(x, SqrtExt(y));
  }
  Rational x;
  if (min_ && max_) x = rational_between(min_->x, max_->x);
  else if (min_) x = rational_between(min_->x, min_->x + SqrtExt(2));
  else if (max_) x = rational_between(max_->x - SqrtExt(2), max_->x);
  else x = 0;
  return Point2(SqrtExt(x), y_at(x));
}

std::string XCurve::to_string() const {
  std::string s = is_linear() ? "L" + line_->to_string()
                              : std::string(upper_ ? "U" : "D") + circle_->to_string();
  s += min_ ? min_->to_string() : std::string("-inf");
  s += "->";
  s += max_ ? max_->to_string() : std::string("+inf");
  return s;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Point2> line_circle(const Line2& l, const Circle2& c) {
  std::vector<Point2> out;
  if (l.is_vertical()) {
    Rational x0 = -l.c() / l.a();
    Rational h = c.sq_radius - (x0 - c.cx) * (x0 - c.cx);
    if (sgn(h) < 0) return out;
    if (sgn(h) == 0) {
      out.emplace_back(x0, c.cy);
      return out;
    }
    out.emplace_back(SqrtExt(x0), SqrtExt(c.cy, -1, h));
    out.emplace_back(SqrtExt(x0), SqrtExt(c.cy, 1, h));
    return out;
  }
  Rational m = -l.a() / l.b(), k = -l.c() / l.b();
  Rational a = 1 + m * m;
  Rational b = 2 * (m * (k - c.cy) - c.cx);
  Rational cc = c.cx * c.cx + (k - c.cy) * (k - c.cy) - c.sq_radius;
  Rational disc = b * b - 4 * a * cc;
  if (sgn(disc) < 0) return out;
  Rational mid = -b / (2 * a);
  if (sgn(disc) == 0) {
    out.emplace_back(mid, m * mid + k);
    return out;
  }
  Rational half = 1 / (2 * a);
  for (int s : {-1, 1}) {
    SqrtExt x(mid, s * half, disc);
    out.emplace_back(x, SqrtExt(m) * x + SqrtExt(k));
  }
  return out;
}

}  // namespace

std::vector<Point2> intersect_supports(const XCurve& c1, const XCurve& c2) {
  std::vector<Point2> out;
  if (c1.is_linear() && c2.is_linear()) {
    const Line2 &l1 = c1.supporting_line(), &l2 = c2.supporting_line();
    Rational det = l1.a() * l2.b() - l2.a() * l1.b();
    if (sgn(det) == 0) return out;
    out.emplace_back((l1.b() * l2.c() - l2.b() * l1.c()) / det, (l1.c() * l2.a() - l2.c() * l1.a()) / det);
    return out;
  }
  if (c1.is_linear()) return line_circle(c1.supporting_line(), c2.supporting_circle());
  if (c2.is_linear()) return line_circle(c2.supporting_line(), c1.supporting_circle());
  const Circle2 &k1 = c1.supporting_circle(), &k2 = c2.supporting_circle();
  if (k1.cx == k2.cx && k1.cy == k2.cy) {
    if (k1.sq_radius != k2.sq_radius) return out;
    SqrtExt r(0, 1, k1.sq_radius);
    out.emplace_back(SqrtExt(k1.cx) - r, SqrtExt(k1.cy));
    out.emplace_back(SqrtExt(k1.cx) + r, SqrtExt(k1.cy));
    return out;
  }
  Line2 radical(2 * (k2.cx - k1.cx), 2 * (k2.cy - k1.cy),
                k1.cx * k1.cx + k1.cy * k1.cy - k1.sq_radius - k2.cx * k2.cx - k2.cy * k2.cy + k2.sq_radius);
  out = line_circle(radical, k1);
  std::sort(out.begin(), out.end(), PointLess{});
  return out;
}

std::vector<CurveOrPoint> intersect(const XCurve& c1, const XCurve& c2) {
  std::vector<CurveOrPoint> out;
  if (c1.same_support(c2)) {
    std::optional<Point2> lo, hi;
    if (c1.has_min() && c2.has_min())
      lo = compare_xy(c1.min_point(), c2.min_point()) == Ordering::Less ? c2.min_point() : c1.min_point();
    else
      lo = c1.has_min() ? c1.min_end() : c2.min_end();
    if (c1.has_max() && c2.has_max())
      hi = compare_xy(c1.max_point(), c2.max_point()) == Ordering::Less ? c1.max_point() : c2.max_point();
    else
      hi = c1.has_max() ? c1.max_end() : c2.max_end();
    if (lo && hi) {
      Ordering o = compare_xy(*lo, *hi);
      if (o == Ordering::Greater) return out;
      if (o == Ordering::Equal) {
        out.emplace_back(*lo);
        return out;
      }
    }
    out.emplace_back(c1.trimmed(lo, hi));
    return out;
  }
  for (Point2& p : intersect_supports(c1, c2))
    if (c1.contains_on_support(p) && c2.contains_on_support(p)) out.emplace_back(std::move(p));
  return out;
}

Ordering compare_border_position(const Line2& l1, const Line2& l2, BorderSide side) {
  if (side == BorderSide::Top || side == BorderSide::Bottom)
    return to_ordering(sign_of(cmp(-l1.c() / l1.a(), -l2.c() / l2.a())));
  Rational s1 = -l1.a() / l1.b(), s2 = -l2.a() / l2.b();
  int c = cmp(s1, s2);
  if (c != 0) return to_ordering(sign_of(side == BorderSide::Right ? c : -c));
  return to_ordering(sign_of(cmp(-l1.c() / l1.b(), -l2.c() / l2.b())));
}

}  // namespace envvor

#include "envvor/kernel.hpp"

#include <stdexcept>

#include "eval.hpp"

namespace envvor {

using detail::eval_sign;
using detail::Lift;

Point2::Point2(SqrtExt px, SqrtExt py) : x(std::move(px)), y(std::move(py)) {
  if (!compatible(x, y))
    throw Error(Errc::IncompatibleExtensions, "point coordinates " + x.to_string() + ", " + y.to_string());
}

std::string Point2::to_string() const { return "(" + x.to_string() + ", " + y.to_string() + ")"; }

Ordering compare_x(const Point2& p, const Point2& q) { return compare_values(p.x, q.x); }
Ordering compare_y(const Point2& p, const Point2& q) { return compare_values(p.y, q.y); }

Ordering compare_xy(const Point2& p, const Point2& q) {
  Ordering o = compare_values(p.x, q.x);
  return o != Ordering::Equal ? o : compare_values(p.y, q.y);
}

Sign orientation(const Point2& p, const Point2& q, const Point2& r) {
  return eval_sign([&]<class T>() {
    using L = Lift<T>;
    T ux = L::of(q.x) - L::of(p.x), uy = L::of(q.y) - L::of(p.y);
    T vx = L::of(r.x) - L::of(p.x), vy = L::of(r.y) - L::of(p.y);
    return ux * vy - uy * vx;
  });
}

namespace {

int half_plane(const Direction& d) {
  Sign sy = filtered_sign(d.dy);
  if (sy == Sign::Positive) return 0;
  if (sy == Sign::Zero && filtered_sign(d.dx) == Sign::Positive) return 0;
  return 1;
}

}  // namespace

Ordering compare_angle(const Direction& d1, const Direction& d2) {
  int h1 = half_plane(d1), h2 = half_plane(d2);
  if (h1 != h2) return h1 < h2 ? Ordering::Less : Ordering::Greater;
  Sign cross = filtered_sign(d1.dx * d2.dy - d1.dy * d2.dx);
  if (cross == Sign::Positive) return Ordering::Less;
  if (cross == Sign::Negative) return Ordering::Greater;
  if (d1.curvature != d2.curvature)
    return static_cast<int>(d1.curvature) < static_cast<int>(d2.curvature) ? Ordering::Less
                                                                           : Ordering::Greater;
  if (d1.curvature == Sign::Zero) return Ordering::Equal;
  // Same turning side: the tighter circle turns more.
  int c = cmp(d1.sq_radius, d2.sq_radius);
  if (c == 0) return Ordering::Equal;
  bool first_tighter = c < 0;
  if (d1.curvature == Sign::Positive) return first_tighter ? Ordering::Greater : Ordering::Less;
  return first_tighter ? Ordering::Less : Ordering::Greater;
}

// ---------------------------------------------------------------------------

Line2::Line2(const Rational& a, const Rational& b, const Rational& c) : a_(a), b_(b), c_(c) {
  a_.canonicalize();
  b_.canonicalize();
  c_.canonicalize();
  if (sgn(a_) == 0 && sgn(b_) == 0) throw std::invalid_argument("Line2: a = b = 0");
  Integer l = 1;
  for (const Rational* q : {&a_, &b_, &c_}) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q->get_den_mpz_t());
  Integer na = a_.get_num() * (l / a_.get_den());
  Integer nb = b_.get_num() * (l / b_.get_den());
  Integer nc = c_.get_num() * (l / c_.get_den());
  Integer g = 0;
  for (const Integer* z : {&na, &nb, &nc}) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z->get_mpz_t());
  int lead = sgn(na) != 0 ? sgn(na) : sgn(nb);
  if (lead < 0) g = -g;
  a_ = Rational(na / g);
  b_ = Rational(nb / g);
  c_ = Rational(nc / g);
}

Line2 Line2::through(const Point2& p, const Point2& q) {
  if (p == q) throw Error(Errc::DegenerateSite, "line through identical points " + p.to_string());
  const Rational &px = p.x.rational(), &py = p.y.rational();
  const Rational &qx = q.x.rational(), &qy = q.y.rational();
  return Line2(py - qy, qx - px, px * qy - py * qx);
}

Sign Line2::side(const Point2& p) const {
  return eval_sign([&]<class T>() {
    using L = Lift<T>;
    return L::of(a_) * L::of(p.x) + L::of(b_) * L::of(p.y) + L::of(c_);
  });
}

SqrtExt Line2::y_at(const SqrtExt& x) const {
  return (SqrtExt(-c_) - SqrtExt(a_) * x) / SqrtExt(b_);
}

SqrtExt Line2::x_at(const SqrtExt& y) const {
  return (SqrtExt(-c_) - SqrtExt(b_) * y) / SqrtExt(a_);
}

Direction Line2::forward() const {
  Direction d;
  if (sgn(b_) > 0 || (sgn(b_) == 0 && sgn(a_) < 0)) {
    d.dx = SqrtExt(b_);
    d.dy = SqrtExt(-a_);
  } else {
    d.dx = SqrtExt(-b_);
    d.dy = SqrtExt(a_);
  }
  return d;
}

std::string Line2::to_string() const {
  return "[" + envvor::to_string(a_) + "," + envvor::to_string(b_) + "," + envvor::to_string(c_) + "]";
}

Circle2::Circle2(Rational x, Rational y, Rational r2)
    : cx(std::move(x)), cy(std::move(y)), sq_radius(std::move(r2)) {
  cx.canonicalize();
  cy.canonicalize();
  sq_radius.canonicalize();
  if (sgn(sq_radius) < 0) throw std::invalid_argument("Circle2: negative squared radius");
}

Sign Circle2::side(const Point2& p) const {
  return eval_sign([&]<class T>() {
    using L = Lift<T>;
    T dx = L::of(p.x) - L::of(cx), dy = L::of(p.y) - L::of(cy);
    return dx * dx + dy * dy - L::of(sq_radius);
  });
}

std::string Circle2::to_string() const {
  return "[" + envvor::to_string(cx) + "," + envvor::to_string(cy) + "," + envvor::to_string(sq_radius) +
         "]";
}

LinearPiece LinearPiece::line(const Line2& l) { return LinearPiece{PieceKind::Line, l, {}, {}}; }

LinearPiece LinearPiece::segment(const Point2& p, const Point2& q) {
  return LinearPiece{PieceKind::Segment, Line2::through(p, q), p, q};
}

LinearPiece LinearPiece::ray(const Line2& l, const Point2& source, const Point2& toward) {
  return LinearPiece{PieceKind::Ray, l, source, toward};
}

// ---------------------------------------------------------------------------
// Distance functions and bisectors

namespace {

template <class T>
T distance_value(const Point2& x, const DistanceFn& f) {
  using L = Lift<T>;
  T px = L::of(x.x), py = L::of(x.y);
  return std::visit(
      [&](const auto& s) -> T {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, PointSite>) {
          T dx = px - L::of(s.p.x), dy = py - L::of(s.p.y);
          return dx * dx + dy * dy;
        } else if constexpr (std::is_same_v<S, DiskSite>) {
          T dx = px - L::of(s.disk.cx), dy = py - L::of(s.disk.cy);
          return dx * dx + dy * dy - L::of(s.disk.sq_radius);
        } else if constexpr (std::is_same_v<S, PairSite>) {
          T ux = L::of(s.p.x) - px, uy = L::of(s.p.y) - py;
          T vx = L::of(s.q.x) - px, vy = L::of(s.q.y) - py;
          return detail::abs_of(ux * vy - uy * vx);
        } else {
          T dx = px - L::of(s.p.x), dy = py - L::of(s.p.y);
          return L::of(s.lambda) * (dx * dx + dy * dy) - L::of(s.mu);
        }
      },
      f);
}

}  // namespace

Ordering distance_compare_at(const Point2& point, const DistanceFn& f1, const DistanceFn& f2) {
  return to_ordering(eval_sign(
      [&]<class T>() { return distance_value<T>(point, f1) - distance_value<T>(point, f2); }));
}

Line2 perpendicular_bisector(const Point2& p, const Point2& q) {
  if (p == q) throw Error(Errc::CoincidentSites, "bisector of identical points " + p.to_string());
  const Rational &px = p.x.rational(), &py = p.y.rational();
  const Rational &qx = q.x.rational(), &qy = q.y.rational();
  return Line2(2 * (qx - px), 2 * (qy - py), px * px + py * py - qx * qx - qy * qy);
}

std::variant<Line2, NoBisector> radical_axis(const Circle2& d1, const Circle2& d2) {
  Rational a = 2 * (d2.cx - d1.cx), b = 2 * (d2.cy - d1.cy);
  if (sgn(a) == 0 && sgn(b) == 0) {
    int c = cmp(d1.sq_radius, d2.sq_radius);
    return NoBisector{c > 0 ? Ordering::Less : (c < 0 ? Ordering::Greater : Ordering::Equal)};
  }
  return Line2(a, b,
               d1.cx * d1.cx + d1.cy * d1.cy - d1.sq_radius - d2.cx * d2.cx - d2.cy * d2.cy + d2.sq_radius);
}

std::variant<Line2, Circle2, NoBisector> mobius_bisector(const MobiusSite& s1, const MobiusSite& s2) {
  const Rational &p1x = s1.p.x.rational(), &p1y = s1.p.y.rational();
  const Rational &p2x = s2.p.x.rational(), &p2y = s2.p.y.rational();
  // d1 - d2 = L |x|^2 - 2 (l1 p1 - l2 p2) . x + K
  Rational l = s1.lambda - s2.lambda;
  Rational ux = s1.lambda * p1x - s2.lambda * p2x;
  Rational uy = s1.lambda * p1y - s2.lambda * p2y;
  Rational k = s1.lambda * (p1x * p1x + p1y * p1y) - s2.lambda * (p2x * p2x + p2y * p2y) - s1.mu + s2.mu;
  if (sgn(l) == 0) {
    if (sgn(ux) == 0 && sgn(uy) == 0)
      return NoBisector{sgn(k) < 0 ? Ordering::Less : (sgn(k) > 0 ? Ordering::Greater : Ordering::Equal)};
    return Line2(-2 * ux, -2 * uy, k);
  }
  Rational cx = ux / l, cy = uy / l;
  Rational r2 = cx * cx + cy * cy - k / l;
  if (sgn(r2) <= 0) return NoBisector{sgn(l) > 0 ? Ordering::Greater : Ordering::Less};
  return Circle2(cx, cy, r2);
}

TriangleAreaBisector triangle_area_bisector(const PairSite& s1, const PairSite& s2) {
  if (s1.p == s1.q || s2.p == s2.q) throw Error(Errc::DegenerateSite, "pair site with identical points");
  auto coeffs = [](const PairSite& s) {
    const Rational &px = s.p.x.rational(), &py = s.p.y.rational();
    const Rational &qx = s.q.x.rational(), &qy = s.q.y.rational();
    return std::array<Rational, 3>{py - qy, qx - px, px * qy - py * qx};
  };
  auto c1 = coeffs(s1), c2 = coeffs(s2);
  TriangleAreaBisector out;
  out.parallel = sgn(c1[0] * c2[1] - c2[0] * c1[1]) == 0;
  std::vector<Line2> lines;
  for (int sign : {-1, 1}) {
    Rational a = c1[0] + sign * c2[0], b = c1[1] + sign * c2[1], c = c1[2] + sign * c2[2];
    if (sgn(a) == 0 && sgn(b) == 0) {
      if (sgn(c) == 0) out.coincident = true;
      continue;
    }
    lines.emplace_back(a, b, c);
  }
  if (out.coincident) return out;
  if (lines.size() == 2 && !out.parallel) {
    XCurve l0 = XCurve::line(lines[0]), l1 = XCurve::line(lines[1]);
    Point2 o = intersect_supports(l0, l1).at(0);
    for (const Line2& l : lines) {
      Direction f = l.forward();
      Point2 ahead(o.x + f.dx, o.y + f.dy), behind(o.x - f.dx, o.y - f.dy);
      out.pieces.push_back(LinearPiece::ray(l, o, behind));
      out.pieces.push_back(LinearPiece::ray(l, o, ahead));
    }
    return out;
  }
  for (const Line2& l : lines) out.pieces.push_back(LinearPiece::line(l));
  return out;
}

}  // namespace envvor

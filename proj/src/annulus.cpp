#include "envvor/annulus.hpp"

#include <algorithm>
#include <cmath>

#include "envvor/diagrams.hpp"
#include "json.hpp"

namespace envvor {

namespace {

Rational sq_dist(const Point2& p, const Point2& c) {
  Rational dx = p.x.rational() - c.x.rational(), dy = p.y.rational() - c.y.rational();
  return dx * dx + dy * dy;
}

bool all_collinear(const std::vector<Point2>& points) {
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i] == points[0]) continue;
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (orientation(points[0], points[i], points[j]) != Sign::Zero) return false;
    return true;
  }
  return true;
}

void require_points(const std::vector<Point2>& points) {
  for (const Point2& p : points)
    if (!p.is_rational()) throw Error(Errc::DegenerateSite, "annulus points must be rational");
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < points.size() && distinct < 2; ++i)
    if (i == 0 || !(points[i] == points[0])) ++distinct;
  if (distinct < 2) throw Error(Errc::TooFewPoints, "need at least two distinct points");
}

// Keeps the narrower annulus, then the lexicographically smaller center.
void consider(std::optional<Annulus>& best, Annulus cand) {
  if (best) {
    Ordering o = compare_widths(cand.width(), best->width());
    if (o == Ordering::Greater) return;
    if (o == Ordering::Equal && compare_xy(cand.center, best->center) != Ordering::Less) return;
  }
  best = std::move(cand);
}

std::string truncated(const Rational& q, int digits) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Integer scaled = q.get_num() * scale;
  Integer whole;
  mpz_fdiv_q(whole.get_mpz_t(), scaled.get_mpz_t(), q.get_den().get_mpz_t());
  std::string s = whole.get_str();
  bool negative = !s.empty() && s[0] == '-';
  if (negative) s.erase(0, 1);
  if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  return (negative ? "-" : "") + s;
}

}  // namespace

Ordering compare_widths(const WidthExpr& w1, const WidthExpr& w2) {
  // sqrt(a) - sqrt(b) vs sqrt(c) - sqrt(d)  <=>  sqrt(a) + sqrt(d) vs sqrt(b) + sqrt(c)
  const Rational &a = w1.sq_outer, &b = w1.sq_inner, &c = w2.sq_outer, &d = w2.sq_inner;
  Interval lhs = to_interval(SqrtExt(0, 1, a)) + to_interval(SqrtExt(0, 1, d));
  Interval rhs = to_interval(SqrtExt(0, 1, b)) + to_interval(SqrtExt(0, 1, c));
  Sign s = filtered_sign(lhs - rhs, [&] {
    // Both sides are nonnegative, so squaring preserves the sign.
    return sign_two_roots(a + d - b - c, Rational(2), a * d, Rational(-2), b * c);
  });
  return to_ordering(s);
}

std::string width_decimal(const WidthExpr& w, int digits) {
  const auto bits = static_cast<unsigned>(digits * 4 + 64);
  RationalInterval outer = enclose(SqrtExt(0, 1, w.sq_outer), bits);
  RationalInterval inner = enclose(SqrtExt(0, 1, w.sq_inner), bits);
  Rational lo = outer.lo - inner.hi;
  if (w.sq_outer == w.sq_inner || sgn(lo) < 0) lo = 0;
  return truncated(lo, digits);
}

Annulus tight_annulus(const std::vector<Point2>& points, const Point2& center) {
  Annulus a;
  a.center = center;
  for (std::size_t i = 0; i < points.size(); ++i) {
    Rational d = sq_dist(points[i], center);
    int id = static_cast<int>(i);
    if (a.inner_witnesses.empty() || d < a.sq_inner) {
      a.sq_inner = d;
      a.inner_witnesses.assign(1, id);
    } else if (d == a.sq_inner) {
      a.inner_witnesses.push_back(id);
    }
    if (a.outer_witnesses.empty() || d > a.sq_outer) {
      a.sq_outer = d;
      a.outer_witnesses.assign(1, id);
    } else if (d == a.sq_outer) {
      a.outer_witnesses.push_back(id);
    }
  }
  return a;
}

std::optional<Annulus> min_width_annulus_points(const std::vector<Point2>& points) {
  require_points(points);
  if (all_collinear(points)) return std::nullopt;
  auto traits = points_traits(points);
  LabeledDiagram nearest = voronoi(*traits);
  LabeledDiagram farthest = farthest_voronoi(*traits);
  OverlayProvenance prov;
  Arrangement both = overlay(nearest.arrangement, farthest.arrangement, &prov);
  auto label = [](const Arrangement& arr, const FeatureRef& ref) -> const Label& {
    switch (ref.kind) {
      case FeatureKind::Vertex: return arr.vertex(ref.id).data;
      case FeatureKind::Edge: return arr.edge(ref.id).data;
      case FeatureKind::Face: break;
    }
    return arr.face(ref.id).data;
  };
  std::optional<Annulus> best;
  std::size_t candidates = 0;
  for (Id v : both.vertex_ids()) {
    ++candidates;
    Annulus a;
    a.center = *both.vertex(v).point;
    a.inner_witnesses = label(nearest.arrangement, prov.vertex_a[v]);
    a.outer_witnesses = label(farthest.arrangement, prov.vertex_b[v]);
    a.sq_inner = sq_dist(points[static_cast<std::size_t>(a.inner_witnesses.front())], a.center);
    a.sq_outer = sq_dist(points[static_cast<std::size_t>(a.outer_witnesses.front())], a.center);
    consider(best, std::move(a));
  }
  if (best) best->candidate_count = candidates;
  return best;
}

std::optional<Annulus> brute_force_annulus(const std::vector<Point2>& points) {
  if (points.size() > 12) throw Error(Errc::TooManyPoints, "brute force is limited to 12 points");
  require_points(points);
  if (all_collinear(points)) return std::nullopt;
  std::vector<Line2> bisectors;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (!(points[i] == points[j])) bisectors.push_back(perpendicular_bisector(points[i], points[j]));
  std::optional<Annulus> best;
  std::size_t candidates = 0;
  for (std::size_t i = 0; i < bisectors.size(); ++i) {
    for (std::size_t j = i + 1; j < bisectors.size(); ++j) {
      const Line2 &l1 = bisectors[i], &l2 = bisectors[j];
      Rational det = l1.a() * l2.b() - l2.a() * l1.b();
      if (sgn(det) == 0) continue;
      Point2 c(Rational((l1.b() * l2.c() - l2.b() * l1.c()) / det), Rational((l2.a() * l1.c() - l1.a() * l2.c()) / det));
      ++candidates;
      consider(best, tight_annulus(points, c));
    }
  }
  if (best) best->candidate_count = candidates;
  return best;
}

std::string annulus_report(const std::optional<Annulus>& annulus) {
  using nlohmann::json;
  if (!annulus) return json{{"result", "NoAnnulus"}}.dump(1);
  const Annulus& a = *annulus;
  json j{{"result", "Annulus"},
         {"center", {to_string(a.center.x.rational()), to_string(a.center.y.rational())}},
         {"sq_inner", to_string(a.sq_inner)},
         {"sq_outer", to_string(a.sq_outer)},
         {"width_decimal", width_decimal(a.width())},
         {"inner_witnesses", a.inner_witnesses},
         {"outer_witnesses", a.outer_witnesses},
         {"candidate_count", a.candidate_count}};
  return j.dump(1);
}

}  // namespace envvor

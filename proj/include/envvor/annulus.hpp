#pragma once

// Minimum-width annulus of a planar point set.

#include <optional>
#include <string>
#include <vector>

#include "envvor/kernel.hpp"

namespace envvor {

/// sqrt(sq_outer) - sqrt(sq_inner).
struct WidthExpr {
  Rational sq_outer;
  Rational sq_inner;
};

/// Exact ordering of two widths.
Ordering compare_widths(const WidthExpr& w1, const WidthExpr& w2);

/// Truncated decimal expansion with `digits` digits after the point.
std::string width_decimal(const WidthExpr& w, int digits = 30);

struct Annulus {
  Point2 center;
  Rational sq_inner;
  Rational sq_outer;
  std::vector<int> inner_witnesses;
  std::vector<int> outer_witnesses;
  std::size_t candidate_count = 0;

  WidthExpr width() const { return {sq_outer, sq_inner}; }
};

/// Tight annulus centered at a rational point.
Annulus tight_annulus(const std::vector<Point2>& points, const Point2& center);

/// Scans the vertices of the overlay of the nearest and farthest point
/// diagrams. Empty when all points are collinear. Throws TooFewPoints.
std::optional<Annulus> min_width_annulus_points(const std::vector<Point2>& points);

/// O(n^4) candidate enumeration. Throws TooManyPoints above 12 points.
std::optional<Annulus> brute_force_annulus(const std::vector<Point2>& points);

/// Report JSON; `annulus` empty gives a NoAnnulus report.
std::string annulus_report(const std::optional<Annulus>& annulus);

}  // namespace envvor

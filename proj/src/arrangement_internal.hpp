#pragma once

#include "envvor/arrangement.hpp"

namespace envvor::detail {

/// Strictly inside the counterclockwise sector running from a to b.
bool between_ccw(const Direction& a, const Direction& x, const Direction& b);

/// Padded double bounding box; unbounded sides are infinite.
struct Box {
  double xlo, xhi, ylo, yhi;
};
Box box_of(const XCurve& c);

inline Direction west() { return Direction{SqrtExt(-1), SqrtExt(0), Sign::Zero, Rational(0)}; }
inline Direction south() { return Direction{SqrtExt(0), SqrtExt(-1), Sign::Zero, Rational(0)}; }

/// Vertical order of two curves at x = p.x (both defined there).
Ordering compare_heights(const XCurve& c1, const XCurve& c2, const Point2& p);

/// Shoots an upward ray from p against the given edges. Returns the
/// halfedge whose left side holds the points just above p (a border
/// halfedge when nothing is hit).
Id ray_up(const Arrangement& arr, const Point2& p, const std::vector<Id>& edges);

}  // namespace envvor::detail

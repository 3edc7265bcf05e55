#pragma once

// Filtered evaluation of one polynomial expression in two number types.
// The expression is a generic lambda; it is run over intervals first and
// over exact extensions only when the interval straddles zero.

#include "envvor/numeric.hpp"

namespace envvor::detail {

template <class T>
struct Lift;

template <>
struct Lift<Interval> {
  static Interval of(const Rational& q) { return to_interval(q); }
  static Interval of(const SqrtExt& v) { return v.approx(); }
};

template <>
struct Lift<SqrtExt> {
  static SqrtExt of(const Rational& q) { return SqrtExt(q); }
  static const SqrtExt& of(const SqrtExt& v) { return v; }
};

inline Interval abs_of(const Interval& x) {
  if (x.lo >= 0.0) return x;
  if (x.hi <= 0.0) return -x;
  return Interval(0.0, std::max(-x.lo, x.hi));
}

inline SqrtExt abs_of(const SqrtExt& x) { return sqrtext_sign(x) == Sign::Negative ? -x : x; }

template <class F>
Sign eval_sign(F&& expr) {
  return filtered_sign(expr.template operator()<Interval>(),
                       [&] { return sqrtext_sign(expr.template operator()<SqrtExt>()); });
}

}  // namespace envvor::detail

#pragma once

// Exact scalars for the Voronoi kernel.
//
// Rational is GMP's mpq_class: canonical (gcd-reduced, positive denominator)
// after every arithmetic operation. SqrtExt is a + b*sqrt(c) over the
// rationals; values are only combined when rational or sharing the same
// radicand. Interval is an outward-rounded double enclosure used as a
// filter in front of every exact sign decision.

#include <atomic>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "envvor/error.hpp"

namespace envvor {

using Rational = mpq_class;
using Integer = mpz_class;

enum class Sign : int { Negative = -1, Zero = 0, Positive = 1 };
enum class Ordering : int { Less = -1, Equal = 0, Greater = 1 };

inline Sign sign_of(int s) noexcept {
  return s < 0 ? Sign::Negative : (s > 0 ? Sign::Positive : Sign::Zero);
}
inline Sign sign_of(const Rational& q) noexcept { return sign_of(sgn(q)); }
inline Sign operator-(Sign s) noexcept { return static_cast<Sign>(-static_cast<int>(s)); }
inline Sign operator*(Sign a, Sign b) noexcept {
  return static_cast<Sign>(static_cast<int>(a) * static_cast<int>(b));
}
inline Ordering to_ordering(Sign s) noexcept { return static_cast<Ordering>(static_cast<int>(s)); }
inline Ordering reverse(Ordering o) noexcept { return static_cast<Ordering>(-static_cast<int>(o)); }
const char* to_string(Sign s) noexcept;
const char* to_string(Ordering o) noexcept;

/// Canonical n/d.
inline Rational ratio(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// Parses "p", "p/q" or a finite decimal such as "-1.25". Throws ParseError.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

// ---------------------------------------------------------------------------
// Interval

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double l, double h) : lo(l), hi(h) {}
  explicit Interval(double point) : lo(point), hi(point) {}

  bool is_zero() const noexcept { return lo == 0.0 && hi == 0.0; }
  bool contains(double v) const noexcept { return lo <= v && v <= hi; }
  double width() const noexcept { return hi - lo; }
  /// Sign if the interval excludes zero (or is exactly [0,0]).
  bool sign_known() const noexcept { return lo > 0.0 || hi < 0.0 || is_zero(); }
  Sign sign() const noexcept {
    return lo > 0.0 ? Sign::Positive : (hi < 0.0 ? Sign::Negative : Sign::Zero);
  }
};

Interval operator+(const Interval& x, const Interval& y);
Interval operator-(const Interval& x, const Interval& y);
Interval operator-(const Interval& x);
Interval operator*(const Interval& x, const Interval& y);
Interval sqrt(const Interval& x);
Interval square(const Interval& x);

Interval to_interval(const Rational& q);

// ---------------------------------------------------------------------------
// Filter instrumentation. Shared mutable state; updated atomically.

struct FilterCounters {
  std::uint64_t predicate_calls = 0;
  std::uint64_t exact_fallbacks = 0;
};

FilterCounters filter_counters() noexcept;
void reset_filter_counters() noexcept;
void note_predicate_call() noexcept;
void note_exact_fallback() noexcept;

/// Counts one predicate evaluation, answers from the interval when it
/// excludes zero, otherwise counts a filter failure and runs `exact`.
template <class Exact>
Sign filtered_sign(const Interval& approx, Exact&& exact) {
  note_predicate_call();
  if (approx.sign_known()) return approx.sign();
  note_exact_fallback();
  return exact();
}

// ---------------------------------------------------------------------------
// SqrtExt

class SqrtExt {
 public:
  SqrtExt() : approx_(0.0) {}
  SqrtExt(const Rational& a);  // NOLINT(google-explicit-constructor)
  SqrtExt(long a) : SqrtExt(Rational(a)) {}  // NOLINT(google-explicit-constructor)
  SqrtExt(const Rational& a, const Rational& b, const Rational& c);

  const Rational& a() const noexcept { return a_; }
  const Rational& b() const noexcept { return b_; }
  const Rational& c() const noexcept { return c_; }
  bool is_rational() const noexcept { return sgn(b_) == 0; }
  const Interval& approx() const noexcept { return approx_; }

  /// Rational value; throws IncompatibleExtensions when irrational.
  const Rational& rational() const;

  SqrtExt operator-() const;
  friend SqrtExt operator+(const SqrtExt& x, const SqrtExt& y);
  friend SqrtExt operator-(const SqrtExt& x, const SqrtExt& y);
  friend SqrtExt operator*(const SqrtExt& x, const SqrtExt& y);
  /// Division; the divisor may be irrational (multiplies by the conjugate).
  friend SqrtExt operator/(const SqrtExt& x, const SqrtExt& y);

  /// Structural equality of the normalized representation.
  bool same_repr(const SqrtExt& other) const;

  std::string to_string() const;
  double to_double() const;

 private:
  void normalize();

  Rational a_;
  Rational b_;
  Rational c_;
  Interval approx_;
};

/// True when x and y may be combined arithmetically.
bool compatible(const SqrtExt& x, const SqrtExt& y) noexcept;

/// Exact sign of a + b*sqrt(c).
Sign sqrtext_sign(const SqrtExt& x);
/// Filtered sign (interval first, exact on failure).
Sign filtered_sign(const SqrtExt& x);
/// Ordering of two compatible values; IncompatibleExtensions otherwise.
Ordering sqrtext_compare(const SqrtExt& x, const SqrtExt& y);
/// Ordering of arbitrary values, even with different radicands.
Ordering compare_values(const SqrtExt& x, const SqrtExt& y);

/// Exact sign of a + b*sqrt(c) + d*sqrt(e) with c, e >= 0.
Sign sign_two_roots(const Rational& a, const Rational& b, const Rational& c, const Rational& d,
                    const Rational& e);

Interval to_interval(const SqrtExt& x);

struct RationalInterval {
  Rational lo;
  Rational hi;
};

/// Rational enclosure whose width shrinks as `bits` grows.
RationalInterval enclose(const SqrtExt& x, unsigned bits);
/// Double enclosure derived from enclose(x, bits).
Interval to_interval(const SqrtExt& x, unsigned bits);

/// A short dyadic rational strictly between x < y.
Rational rational_between(const SqrtExt& x, const SqrtExt& y);

/// Decimal expansion with `digits` significant digits.
std::string to_decimal(const SqrtExt& x, int digits);

}  // namespace envvor

#include "envvor/numeric.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace envvor {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::IncompatibleExtensions: return "IncompatibleExtensions";
    case Errc::CoincidentSites: return "CoincidentSites";
    case Errc::DegenerateSite: return "DegenerateSite";
    case Errc::NotABisectorPiece: return "NotABisectorPiece";
    case Errc::PredicateFailure: return "PredicateFailure";
    case Errc::FallbackRequired: return "FallbackRequired";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::TooFewPoints: return "TooFewPoints";
    case Errc::TooManyPoints: return "TooManyPoints";
    case Errc::UnknownKind: return "UnknownKind";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

const char* to_string(Sign s) noexcept {
  switch (s) {
    case Sign::Negative: return "Negative";
    case Sign::Zero: return "Zero";
    case Sign::Positive: return "Positive";
  }
  return "?";
}

const char* to_string(Ordering o) noexcept {
  switch (o) {
    case Ordering::Less: return "Less";
    case Ordering::Equal: return "Equal";
    case Ordering::Greater: return "Greater";
  }
  return "?";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  if (s.empty()) throw Error(Errc::ParseError, "empty rational");
  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational result;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw Error(Errc::ParseError, "bad rational '" + std::string(text) + "'");
    Integer d{std::string(den)};
    if (d == 0) throw Error(Errc::ParseError, "zero denominator in '" + std::string(text) + "'");
    result = Rational(Integer{std::string(num)}, d);
    result.canonicalize();
  } else {
    auto dot = s.find('.');
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac)))
      throw Error(Errc::ParseError, "bad rational '" + std::string(text) + "'");
    Integer num(std::string(whole.empty() ? "0" : whole) + std::string(frac));
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    result = Rational(num, den);
    result.canonicalize();
  }
  if (negative) result = -result;
  return result;
}

std::string to_string(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  return c.get_str();
}

// ---------------------------------------------------------------------------
// Interval arithmetic with outward rounding by one ulp per operation.

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double down(double v) { return std::nextafter(v, -kInf); }
double up(double v) { return std::nextafter(v, kInf); }

}  // namespace

Interval operator+(const Interval& x, const Interval& y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  return {down(x.lo + y.lo), up(x.hi + y.hi)};
}

Interval operator-(const Interval& x) { return {-x.hi, -x.lo}; }

Interval operator-(const Interval& x, const Interval& y) { return x + (-y); }

Interval operator*(const Interval& x, const Interval& y) {
  if (x.is_zero() || y.is_zero()) return Interval(0.0);
  double p1 = x.lo * y.lo, p2 = x.lo * y.hi, p3 = x.hi * y.lo, p4 = x.hi * y.hi;
  if (std::isnan(p1) || std::isnan(p2) || std::isnan(p3) || std::isnan(p4)) return {-kInf, kInf};
  double lo = std::min(std::min(p1, p2), std::min(p3, p4));
  double hi = std::max(std::max(p1, p2), std::max(p3, p4));
  return {down(lo), up(hi)};
}

Interval square(const Interval& x) {
  if (x.is_zero()) return Interval(0.0);
  double a = x.lo * x.lo, b = x.hi * x.hi;
  double hi = std::max(a, b);
  double lo = (x.lo <= 0.0 && x.hi >= 0.0) ? 0.0 : down(std::min(a, b));
  return {std::max(0.0, lo), up(hi)};
}

Interval sqrt(const Interval& x) {
  if (x.is_zero()) return Interval(0.0);
  double lo = x.lo <= 0.0 ? 0.0 : std::max(0.0, down(std::sqrt(x.lo)));
  double hi = x.hi < 0.0 ? 0.0 : up(std::sqrt(x.hi));
  return {lo, hi};
}

Interval to_interval(const Rational& q) {
  int s = sgn(q);
  if (s == 0) return Interval(0.0);
  long num_bits = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2));
  long den_bits = static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
  long magnitude = num_bits - den_bits;
  if (magnitude > 1000) return s > 0 ? Interval(std::numeric_limits<double>::max(), kInf)
                                     : Interval(-kInf, -std::numeric_limits<double>::max());
  if (magnitude < -1000) return s > 0 ? Interval(0.0, std::numeric_limits<double>::min())
                                      : Interval(-std::numeric_limits<double>::min(), 0.0);
  double d = mpq_get_d(q.get_mpq_t());
  mpz_srcptr den = q.get_den_mpz_t();
  bool dyadic = mpz_scan1(den, 0) + 1 == static_cast<mp_bitcnt_t>(den_bits);
  if (dyadic && num_bits <= 53 && magnitude > -1000) return Interval(d);
  // mpq_get_d truncates toward zero, so one ulp on each side encloses q.
  return {down(d), up(d)};
}

// ---------------------------------------------------------------------------
// Counters

namespace {
std::atomic<std::uint64_t> g_predicate_calls{0};
std::atomic<std::uint64_t> g_exact_fallbacks{0};
}  // namespace

FilterCounters filter_counters() noexcept {
  return {g_predicate_calls.load(std::memory_order_relaxed),
          g_exact_fallbacks.load(std::memory_order_relaxed)};
}

void reset_filter_counters() noexcept {
  g_predicate_calls.store(0, std::memory_order_relaxed);
  g_exact_fallbacks.store(0, std::memory_order_relaxed);
}

void note_predicate_call() noexcept { g_predicate_calls.fetch_add(1, std::memory_order_relaxed); }
void note_exact_fallback() noexcept { g_exact_fallbacks.fetch_add(1, std::memory_order_relaxed); }

// ---------------------------------------------------------------------------
// SqrtExt

SqrtExt::SqrtExt(const Rational& a) : a_(a) {
  a_.canonicalize();
  approx_ = to_interval(a_);
}

SqrtExt::SqrtExt(const Rational& a, const Rational& b, const Rational& c) : a_(a), b_(b), c_(c) {
  a_.canonicalize();
  b_.canonicalize();
  c_.canonicalize();
  if (sgn(c_) < 0) throw std::invalid_argument("SqrtExt: negative radicand " + c_.get_str());
  normalize();
}

void SqrtExt::normalize() {
  if (sgn(b_) == 0 || sgn(c_) == 0) {
    b_ = 0;
    c_ = 0;
  } else if (mpz_perfect_square_p(c_.get_num_mpz_t()) && mpz_perfect_square_p(c_.get_den_mpz_t())) {
    Integer n, d;
    mpz_sqrt(n.get_mpz_t(), c_.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), c_.get_den_mpz_t());
    Rational root(n, d);
    root.canonicalize();
    a_ += b_ * root;
    b_ = 0;
    c_ = 0;
  }
  approx_ = is_rational() ? to_interval(a_) : to_interval(a_) + to_interval(b_) * sqrt(to_interval(c_));
}

const Rational& SqrtExt::rational() const {
  if (!is_rational()) throw Error(Errc::IncompatibleExtensions, "value " + to_string() + " is irrational");
  return a_;
}

bool compatible(const SqrtExt& x, const SqrtExt& y) noexcept {
  return x.is_rational() || y.is_rational() || x.c() == y.c();
}

namespace {

const Rational& shared_root(const SqrtExt& x, const SqrtExt& y) {
  if (!compatible(x, y))
    throw Error(Errc::IncompatibleExtensions,
                "radicands " + x.c().get_str() + " and " + y.c().get_str() + " differ");
  return x.is_rational() ? y.c() : x.c();
}

}  // namespace

SqrtExt SqrtExt::operator-() const {
  SqrtExt r;
  r.a_ = -a_;
  r.b_ = -b_;
  r.c_ = c_;
  r.approx_ = -approx_;
  return r;
}

SqrtExt operator+(const SqrtExt& x, const SqrtExt& y) {
  if (x.is_rational() && y.is_rational()) return SqrtExt(Rational(x.a_ + y.a_));
  const Rational& c = shared_root(x, y);
  return SqrtExt(x.a_ + y.a_, x.b_ + y.b_, c);
}

SqrtExt operator-(const SqrtExt& x, const SqrtExt& y) {
  if (x.is_rational() && y.is_rational()) return SqrtExt(Rational(x.a_ - y.a_));
  const Rational& c = shared_root(x, y);
  return SqrtExt(x.a_ - y.a_, x.b_ - y.b_, c);
}

SqrtExt operator*(const SqrtExt& x, const SqrtExt& y) {
  if (x.is_rational() && y.is_rational()) return SqrtExt(Rational(x.a_ * y.a_));
  if (x.is_rational()) return SqrtExt(x.a_ * y.a_, x.a_ * y.b_, y.c_);
  if (y.is_rational()) return SqrtExt(y.a_ * x.a_, y.a_ * x.b_, x.c_);
  const Rational& c = shared_root(x, y);
  return SqrtExt(x.a_ * y.a_ + x.b_ * y.b_ * c, x.a_ * y.b_ + x.b_ * y.a_, c);
}

SqrtExt operator/(const SqrtExt& x, const SqrtExt& y) {
  if (y.is_rational()) {
    if (sgn(y.a_) == 0) throw std::domain_error("SqrtExt: division by zero");
    if (x.is_rational()) return SqrtExt(Rational(x.a_ / y.a_));
    return SqrtExt(x.a_ / y.a_, x.b_ / y.a_, x.c_);
  }
  shared_root(x, y);
  Rational norm = y.a_ * y.a_ - y.b_ * y.b_ * y.c_;
  if (sgn(norm) == 0) throw std::domain_error("SqrtExt: division by zero");
  SqrtExt conj(y.a_, -y.b_, y.c_);
  SqrtExt num = x * conj;
  return SqrtExt(num.a_ / norm, num.b_ / norm, num.c_);
}

bool SqrtExt::same_repr(const SqrtExt& other) const {
  return a_ == other.a_ && b_ == other.b_ && c_ == other.c_;
}

std::string SqrtExt::to_string() const {
  if (is_rational()) return a_.get_str();
  return a_.get_str() + (sgn(b_) < 0 ? "-" : "+") + Rational(abs(b_)).get_str() + "*sqrt(" +
         c_.get_str() + ")";
}

double SqrtExt::to_double() const {
  if (is_rational()) return a_.get_d();
  return a_.get_d() + b_.get_d() * std::sqrt(c_.get_d());
}

Sign sqrtext_sign(const SqrtExt& x) {
  Sign sa = sign_of(x.a());
  if (x.is_rational()) return sa;
  Sign sb = sign_of(x.b());
  if (sa == Sign::Zero) return sb;
  if (sa == sb) return sa;
  Rational lhs = x.a() * x.a();
  Rational rhs = x.b() * x.b() * x.c();
  int cmp = ::cmp(lhs, rhs);
  if (cmp > 0) return sa;
  if (cmp < 0) return sb;
  return Sign::Zero;
}

Sign filtered_sign(const SqrtExt& x) {
  return filtered_sign(x.approx(), [&] { return sqrtext_sign(x); });
}

Ordering sqrtext_compare(const SqrtExt& x, const SqrtExt& y) {
  shared_root(x, y);
  return compare_values(x, y);
}

namespace {

// Sign of b*sqrt(c) + d*sqrt(e).
Sign sign_root_sum(const Rational& b, const Rational& c, const Rational& d, const Rational& e) {
  Sign t1 = sgn(c) == 0 ? Sign::Zero : sign_of(b);
  Sign t2 = sgn(e) == 0 ? Sign::Zero : sign_of(d);
  if (t1 == Sign::Zero) return t2;
  if (t2 == Sign::Zero || t1 == t2) return t1;
  int cmp = ::cmp(Rational(b * b * c), Rational(d * d * e));
  if (cmp > 0) return t1;
  if (cmp < 0) return t2;
  return Sign::Zero;
}

}  // namespace

Sign sign_two_roots(const Rational& a, const Rational& b, const Rational& c, const Rational& d,
                    const Rational& e) {
  Sign st = sign_root_sum(b, c, d, e);
  Sign sa = sign_of(a);
  if (st == Sign::Zero) return sa;
  if (sa == Sign::Zero || sa == st) return st;
  // |a| vs |T| where T^2 = b^2 c + d^2 e + 2 b d sqrt(c e)
  Rational p = a * a - b * b * c - d * d * e;
  Rational q = -2 * b * d;
  Sign diff = sqrtext_sign(SqrtExt(p, q, Rational(c * e)));
  if (diff == Sign::Positive) return sa;
  if (diff == Sign::Negative) return st;
  return Sign::Zero;
}

Ordering compare_values(const SqrtExt& x, const SqrtExt& y) {
  if (x.same_repr(y)) return Ordering::Equal;
  Interval approx = x.approx() - y.approx();
  Sign s = filtered_sign(approx, [&] {
    if (compatible(x, y)) return sqrtext_sign(x - y);
    return sign_two_roots(Rational(x.a() - y.a()), x.b(), x.c(), Rational(-y.b()), y.c());
  });
  return to_ordering(s);
}

Interval to_interval(const SqrtExt& x) { return x.approx(); }

RationalInterval enclose(const SqrtExt& x, unsigned bits) {
  if (x.is_rational()) return {x.a(), x.a()};
  const Rational& c = x.c();
  Integer pq = c.get_num() * c.get_den();
  Integer scaled = pq << (2 * bits);
  Integer s;
  mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
  Integer scale = c.get_den() << bits;
  Rational root_lo(s, scale);
  root_lo.canonicalize();
  Rational root_hi = root_lo;
  if (s * s != scaled) {
    root_hi = Rational(Integer(s + 1), scale);
    root_hi.canonicalize();
  }
  if (sgn(x.b()) > 0) return {x.a() + x.b() * root_lo, x.a() + x.b() * root_hi};
  return {x.a() + x.b() * root_hi, x.a() + x.b() * root_lo};
}

Interval to_interval(const SqrtExt& x, unsigned bits) {
  auto r = enclose(x, bits);
  return {to_interval(r.lo).lo, to_interval(r.hi).hi};
}

Rational rational_between(const SqrtExt& x, const SqrtExt& y) {
  if (compare_values(x, y) != Ordering::Less)
    throw std::invalid_argument("rational_between: empty range");
  for (unsigned bits = 64;; bits *= 2) {
    auto ex = enclose(x, bits);
    auto ey = enclose(y, bits);
    if (ex.hi < ey.lo) {
      const Rational& lo = ex.hi;
      const Rational& hi = ey.lo;
      for (unsigned k = 0;; ++k) {
        Integer scaled_lo = lo.get_num() << k;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), scaled_lo.get_mpz_t(), lo.get_den_mpz_t());
        Rational m(Integer(q + 1), Integer(Integer(1) << k));
        m.canonicalize();
        if (m < hi) return m;
      }
    }
  }
}

std::string to_decimal(const SqrtExt& x, int digits) {
  mp_bitcnt_t prec = static_cast<mp_bitcnt_t>(digits * 4 + 128);
  mpf_class a(x.a(), prec);
  if (!x.is_rational()) {
    mpf_class c(x.c(), prec);
    mpf_class root(0, prec);
    mpf_sqrt(root.get_mpf_t(), c.get_mpf_t());
    mpf_class b(x.b(), prec);
    a += b * root;
  }
  mp_exp_t exp = 0;
  std::string mant = a.get_str(exp, 10, static_cast<size_t>(digits));
  if (mant.empty()) return "0";
  std::string sign;
  if (mant.front() == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  std::string out;
  if (exp <= 0) {
    out = "0." + std::string(static_cast<size_t>(-exp), '0') + mant;
  } else if (static_cast<size_t>(exp) >= mant.size()) {
    out = mant + std::string(static_cast<size_t>(exp) - mant.size(), '0');
  } else {
    out = mant.substr(0, static_cast<size_t>(exp)) + "." + mant.substr(static_cast<size_t>(exp));
  }
  return sign + out;
}

}  // namespace envvor

#include <cmath>
#include <random>

#include "doctest.h"
#include "envvor/annulus.hpp"

using namespace envvor;

namespace {

Point2 pt(long x, long y) { return Point2(x, y); }

void check_contains_all(const Annulus& a, const std::vector<Point2>& pts) {
  for (const Point2& p : pts) {
    Rational dx = p.x.rational() - a.center.x.rational(), dy = p.y.rational() - a.center.y.rational();
    Rational d = dx * dx + dy * dy;
    CHECK(a.sq_inner <= d);
    CHECK(d <= a.sq_outer);
  }
}

}  // namespace

TEST_CASE("width comparison") {
  CHECK(compare_widths({4, 1}, {4, 1}) == Ordering::Equal);
  CHECK(compare_widths({9, 4}, {4, 1}) == Ordering::Equal);
  CHECK(compare_widths({2, 1}, {5, 3}) == Ordering::Less);
  CHECK(compare_widths({5, 3}, {2, 1}) == Ordering::Greater);
  CHECK(compare_widths({8, 2}, {2, 0}) == Ordering::Equal);
}

TEST_CASE("width comparison agrees with high precision decimals") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> r(0, 400);
  for (int i = 0; i < 2000; ++i) {
    long a = r(rng), b = r(rng), c = r(rng), d = r(rng);
    if (a < b) std::swap(a, b);
    if (c < d) std::swap(c, d);
    long double w1 = std::sqrt(static_cast<long double>(a)) - std::sqrt(static_cast<long double>(b));
    long double w2 = std::sqrt(static_cast<long double>(c)) - std::sqrt(static_cast<long double>(d));
    Ordering o = compare_widths({a, b}, {c, d});
    if (std::fabs(w1 - w2) > 1e-12L) {
      CHECK(o == (w1 < w2 ? Ordering::Less : Ordering::Greater));
    } else {
      // Near ties: the order must be antisymmetric and consistent with the decimals.
      CHECK(compare_widths({c, d}, {a, b}) == reverse(o));
      std::string s1 = width_decimal({a, b}, 40), s2 = width_decimal({c, d}, 40);
      if (o == Ordering::Equal) CHECK(s1 == s2);
      if (o == Ordering::Less) CHECK(s1 <= s2);
      if (o == Ordering::Greater) CHECK(s1 >= s2);
    }
  }
}

TEST_CASE("width decimals") {
  CHECK(width_decimal({4, 1}, 5) == "1.00000");
  CHECK(width_decimal({2, 0}, 30) == "1.414213562373095048801688724209");
  CHECK(width_decimal({1, 1}, 3) == "0.000");
}

TEST_CASE("cocircular points give width zero") {
  std::vector<Point2> pts{pt(5, 0), pt(0, 5), pt(-3, 4), pt(4, -3)};
  auto a = min_width_annulus_points(pts);
  REQUIRE(a);
  CHECK(a->sq_inner == a->sq_outer);
  CHECK(a->center == pt(0, 0));
  CHECK(a->inner_witnesses.size() == 4);
}

TEST_CASE("axis diamond") {
  std::vector<Point2> pts{pt(1, 0), pt(-1, 0), pt(0, 2), pt(0, -2)};
  auto a = min_width_annulus_points(pts);
  REQUIRE(a);
  CHECK(a->center == pt(0, 0));
  CHECK(a->sq_inner == 1);
  CHECK(a->sq_outer == 4);
  auto b = brute_force_annulus(pts);
  REQUIRE(b);
  CHECK(compare_widths(a->width(), b->width()) == Ordering::Equal);
  CHECK(annulus_report(a).find("\"sq_outer\": \"4\"") != std::string::npos);
}

TEST_CASE("collinear input has no annulus") {
  std::vector<Point2> pts{pt(0, 0), pt(1, 1), pt(2, 2), pt(5, 5)};
  CHECK_FALSE(min_width_annulus_points(pts));
  CHECK_FALSE(brute_force_annulus(pts));
  CHECK(annulus_report(std::nullopt).find("NoAnnulus") != std::string::npos);
  CHECK_THROWS_AS(min_width_annulus_points({pt(1, 1), pt(1, 1)}), Error);
  std::vector<Point2> many(13, pt(0, 0));
  CHECK_THROWS_AS(brute_force_annulus(many), Error);
}

TEST_CASE("triangle has zero width at its circumcenter") {
  std::vector<Point2> pts{pt(0, 0), pt(4, 0), pt(1, 3)};
  auto a = min_width_annulus_points(pts);
  REQUIRE(a);
  CHECK(a->sq_inner == a->sq_outer);
  CHECK(a->center == Point2(Rational(2), Rational(1)));
}

TEST_CASE("random instances match the brute force oracle") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> coord(-10, 10);
  std::uniform_int_distribution<int> size(4, 8);
  for (int round = 0; round < 12; ++round) {
    std::vector<Point2> pts;
    int n = size(rng);
    while (static_cast<int>(pts.size()) < n) pts.push_back(pt(coord(rng), coord(rng)));
    auto a = min_width_annulus_points(pts);
    auto b = brute_force_annulus(pts);
    REQUIRE(a.has_value() == b.has_value());
    if (!a) continue;
    CHECK(compare_widths(a->width(), b->width()) == Ordering::Equal);
    check_contains_all(*a, pts);
    CHECK((a->inner_witnesses.size() >= 3 || a->outer_witnesses.size() >= 3 ||
           (a->inner_witnesses.size() >= 2 && a->outer_witnesses.size() >= 2)));
  }
}

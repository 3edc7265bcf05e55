#include <set>

#include "doctest.h"
#include "envvor/diagrams.hpp"
#include "envvor/generate.hpp"

using namespace envvor;

TEST_CASE("dataset kinds round trip") {
  for (DatasetKind k : {DatasetKind::RandomSquare, DatasetKind::Grid, DatasetKind::OnCircle, DatasetKind::Cross,
                        DatasetKind::RandomDisks, DatasetKind::RandomMobius})
    CHECK(parse_dataset_kind(to_string(k)) == k);
  CHECK_THROWS_AS(parse_dataset_kind("spiral"), Error);
}

TEST_CASE("random points are distinct and seeded") {
  auto a = random_points(500, 9, 50);
  CHECK(a.size() == 500);
  std::set<std::pair<Rational, Rational>> seen;
  for (const Point2& p : a) {
    CHECK(abs(p.x.rational()) <= 50);
    seen.insert({p.x.rational(), p.y.rational()});
  }
  CHECK(seen.size() == 500);
  CHECK(random_points(500, 9, 50) == a);
  CHECK_FALSE(random_points(500, 10, 50) == a);
}

TEST_CASE("grid and cross layouts") {
  auto g = grid_points(16);
  CHECK(g.size() == 16);
  CHECK(grid_points(10).size() == 16);
  auto c = cross_points(7);
  REQUIRE(c.size() == 7);
  CHECK(c[3] == Point2(0, 3));
  CHECK(c[4] == Point2(7, 0));
  CHECK(c[6] == Point2(9, 0));
}

TEST_CASE("circle points lie on the unit circle") {
  auto pts = circle_points(36);
  REQUIRE(pts.size() == 36);
  std::set<std::pair<Rational, Rational>> seen;
  for (const Point2& p : pts) {
    Rational x = p.x.rational(), y = p.y.rational();
    CHECK(x * x + y * y == 1);
    seen.insert({x, y});
  }
  CHECK(seen.size() == 36);
}

TEST_CASE("generated sites match their family") {
  CHECK(family_of(generate_sites(DatasetKind::RandomDisks, 10, 1)) == SiteFamily::Power);
  CHECK(family_of(generate_sites(DatasetKind::RandomMobius, 10, 1)) == SiteFamily::Mobius);
  CHECK(family_of(generate_sites(DatasetKind::Grid, 10, 1)) == SiteFamily::Points);
  auto m = generate_sites(DatasetKind::RandomMobius, 30, 2);
  auto traits = make_traits(SiteFamily::Mobius, m);
  CHECK(traits->size() == 30);
}

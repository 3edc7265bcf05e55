#include <random>
#include <sstream>

#include "doctest.h"
#include "envvor/diagrams.hpp"

using namespace envvor;

namespace {

Point2 pt(long x, long y) { return Point2(x, y); }

void check_labels(const LabeledDiagram& d, const VoronoiTraits& traits, std::uint64_t seed, int samples) {
  const Arrangement& arr = d.arrangement;
  auto r = arr.validate();
  REQUIRE_MESSAGE(r.ok, (r.problems.empty() ? std::string() : r.problems.front()));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coord(-30 * 16, 30 * 16);
  for (int i = 0; i < samples; ++i) {
    Point2 p(ratio(coord(rng), 16), ratio(coord(rng), 16));
    INFO("point " << p.to_string());
    CHECK(d.label_at(p) == brute_force_label(traits, p, d.farthest));
  }
  for (Id v : arr.vertex_ids()) {
    INFO("vertex " << arr.vertex(v).point->to_string());
    CHECK(arr.vertex(v).data == brute_force_label(traits, *arr.vertex(v).point, d.farthest));
  }
  for (Id e : arr.edge_ids()) {
    INFO("edge " << arr.edge(e).curve->to_string());
    CHECK(arr.edge(e).data == brute_force_label(traits, arr.edge(e).curve->interior_point(), d.farthest));
  }
}

std::vector<Circle2> random_disks(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> coord(-20, 20), rad(0, 6);
  std::vector<Circle2> disks;
  for (std::size_t i = 0; i < n; ++i) {
    long r = rad(rng);
    disks.emplace_back(Rational(coord(rng)), Rational(coord(rng)), Rational(r * r));
  }
  return disks;
}

}  // namespace

TEST_CASE("above side of point bisector") {
  auto traits = points_traits({pt(0, 0), pt(2, 0)});
  auto bis = traits->construct_bisector(0, 1);
  REQUIRE(bis.size() == 1);
  // Vertical lines run upward, so the left side is x < 1.
  CHECK(traits->compare_distance_above(0, 1, bis[0]) == Ordering::Less);
  CHECK(traits->compare_distance_above(1, 0, bis[0]) == Ordering::Greater);
  CHECK_THROWS_AS(traits->compare_distance_above(0, 1, XCurve::line(Line2(Rational(1), Rational(0), Rational(-3)))),
                  Error);
}

TEST_CASE("power bisectors and dominance") {
  auto traits = power_traits({Circle2(0, 0, 4), Circle2(4, 0, 0), Circle2(0, 0, 9)});
  auto bis = traits->construct_bisector(0, 1);
  REQUIRE(bis.size() == 1);
  Ordering above = traits->compare_distance_above(0, 1, bis[0]);
  CHECK(above == Ordering::Less);
  CHECK(traits->construct_bisector(0, 2).empty());
  CHECK(traits->compare_dominance(0, 2) == Ordering::Greater);
}

TEST_CASE("concentric power disks keep the dominant diagram") {
  auto traits = power_traits({Circle2(0, 0, 1), Circle2(0, 0, 4)});
  LabeledDiagram d = voronoi(*traits);
  CHECK(d.arrangement.num_vertices() == 0);
  CHECK(d.arrangement.num_edges() == 0);
  CHECK(d.arrangement.num_faces() == 1);
  CHECK(d.label_at(pt(5, 5)) == Label{1});
}

TEST_CASE("power diagrams agree with the oracle") {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 3; ++round) {
    auto traits = power_traits(random_disks(12, rng));
    LabeledDiagram d = voronoi(*traits, PartitionStrategy::randomized(static_cast<std::uint64_t>(round)));
    check_labels(d, *traits, 100 + static_cast<std::uint64_t>(round), 150);
    for (Id f : d.arrangement.face_ids()) {
      // Convex faces: consecutive bounded edges turn left.
      for (Id h : d.arrangement.boundary(f)) {
        const Arrangement& a = d.arrangement;
        Id n = a.next(h);
        if (a.vertex(a.origin(h)).at_infinity() || a.vertex(a.target(h)).at_infinity() ||
            a.vertex(a.target(n)).at_infinity())
          continue;
        CHECK(orientation(*a.vertex(a.origin(h)).point, *a.vertex(a.target(h)).point,
                          *a.vertex(a.target(n)).point) != Sign::Negative);
      }
    }
  }
}

TEST_CASE("equal-radius power diagram matches the point diagram") {
  std::vector<Point2> centers{pt(0, 0), pt(5, 1), pt(-3, 4), pt(2, -6), pt(7, 7)};
  std::vector<Circle2> disks;
  for (const Point2& c : centers) disks.emplace_back(c.x.rational(), c.y.rational(), Rational(9));
  LabeledDiagram a = voronoi(*points_traits(centers));
  LabeledDiagram b = voronoi(*power_traits(disks));
  CHECK(canonical_serialization(a) == canonical_serialization(b));
}

TEST_CASE("mobius with uniform lambda matches power") {
  std::mt19937_64 rng(5);
  auto disks = random_disks(8, rng);
  std::vector<MobiusSite> sites;
  for (const Circle2& d : disks) sites.push_back({d.center(), Rational(3), 3 * d.sq_radius});
  LabeledDiagram p = voronoi(*power_traits(disks));
  LabeledDiagram m = voronoi(*mobius_traits(sites));
  CHECK(canonical_serialization(p) == canonical_serialization(m));
}

TEST_CASE("mobius circle bisector") {
  auto traits = mobius_traits({{pt(0, 0), Rational(2), Rational(0)}, {pt(3, 0), Rational(1), Rational(0)}});
  auto bis = traits->construct_bisector(0, 1);
  REQUIRE(bis.size() == 2);
  for (const XCurve& c : bis) {
    CHECK(c.is_arc());
    Ordering o = traits->compare_distance_above(0, 1, c);
    // Larger lambda wins inside the circle: left of the upper arc is outside.
    CHECK(o == (c.is_upper() ? Ordering::Greater : Ordering::Less));
  }
  LabeledDiagram d = voronoi(*traits);
  CHECK(d.arrangement.num_faces() == 2);
  CHECK(d.label_at(pt(0, 0)) == Label{0});
  CHECK(d.label_at(pt(10, 10)) == Label{1});
  check_labels(d, *traits, 7, 100);
}

TEST_CASE("mobius diagrams agree with the oracle") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> coord(-12, 12), lam(1, 3), mu(-4, 20);
  for (int round = 0; round < 3; ++round) {
    std::vector<MobiusSite> sites;
    for (int i = 0; i < 7; ++i) sites.push_back({pt(coord(rng), coord(rng)), Rational(lam(rng)), Rational(mu(rng))});
    auto traits = mobius_traits(sites);
    LabeledDiagram d = voronoi(*traits, PartitionStrategy::randomized(static_cast<std::uint64_t>(round)));
    check_labels(d, *traits, 200 + static_cast<std::uint64_t>(round), 150);
  }
}

TEST_CASE("triangle-area bisectors pass through a shared point") {
  Point2 c = pt(1, 1);
  auto traits = triangle_area_traits({{c, pt(4, 2)}, {c, pt(-1, 5)}, {c, pt(3, -4)}});
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      for (const XCurve& piece : traits->construct_bisector(i, j)) {
        CHECK(piece.is_linear());
        CHECK(piece.supporting_line().side(c) == Sign::Zero);
      }
  LabeledDiagram d = voronoi(*traits);
  check_labels(d, *traits, 8, 200);
}

TEST_CASE("triangle-area diagrams agree with the oracle") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> coord(-9, 9);
  for (int round = 0; round < 3; ++round) {
    std::vector<PairSite> sites;
    while (sites.size() < 5) {
      Point2 p = pt(coord(rng), coord(rng)), q = pt(coord(rng), coord(rng));
      if (!(p == q)) sites.push_back({p, q});
    }
    auto traits = triangle_area_traits(sites);
    LabeledDiagram d = voronoi(*traits, PartitionStrategy::randomized(static_cast<std::uint64_t>(round)));
    check_labels(d, *traits, 300 + static_cast<std::uint64_t>(round), 150);
  }
}

TEST_CASE("collinear equal pairs tie everywhere") {
  auto traits = triangle_area_traits({{pt(0, 0), pt(1, 0)}, {pt(3, 0), pt(4, 0)}});
  CHECK(traits->construct_bisector(0, 1).empty());
  CHECK(traits->compare_dominance(0, 1) == Ordering::Equal);
  auto same = triangle_area_traits({{pt(0, 0), pt(1, 0)}, {pt(1, 0), pt(0, 0)}});
  CHECK(same->construct_bisector(0, 1).empty());
  CHECK(same->compare_dominance(0, 1) == Ordering::Equal);
  LabeledDiagram d = voronoi(*same);
  CHECK(d.arrangement.num_faces() == 1);
  CHECK(d.label_at(pt(2, 3)) == Label{0, 1});
}

TEST_CASE("site files round trip") {
  std::vector<DistanceFn> sites{PointSite{Point2(ratio(1, 2), Rational(-3))},
                                DiskSite{Circle2(Rational(1), Rational(2), ratio(9, 4))},
                                PairSite{pt(0, 0), pt(1, 1)},
                                MobiusSite{pt(2, 2), Rational(3), ratio(-1, 7)}};
  std::stringstream s;
  write_sites(s, sites);
  auto back = read_sites(s);
  REQUIRE(back.size() == 4);
  std::stringstream again;
  write_sites(again, back);
  CHECK(again.str() == s.str());
  CHECK_THROWS_AS(family_of(back), Error);

  std::istringstream bad("{\"type\":\"hexagon\"}\n");
  CHECK_THROWS_AS(read_sites(bad), Error);
  std::istringstream broken("{\"type\":\"point\",\"x\":\"1/0\",\"y\":\"0\"}\n");
  CHECK_THROWS_AS(read_sites(broken), Error);
  CHECK_THROWS_AS(mobius_traits({{pt(0, 0), Rational(-1), Rational(0)}}), Error);
  CHECK(parse_family("triangle-area") == SiteFamily::TriangleArea);
  CHECK_THROWS_AS(parse_family("apollonius"), Error);
}

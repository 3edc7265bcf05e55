#include <random>

#include "doctest.h"
#include "envvor/diagrams.hpp"

using namespace envvor;

namespace {

Point2 pt(long x, long y) { return Point2(x, y); }

void require_valid(const Arrangement& arr) {
  auto r = arr.validate();
  REQUIRE_MESSAGE(r.ok, (r.problems.empty() ? std::string() : r.problems.front()));
}

// Labels at random points, at every vertex and inside every edge.
void check_against_oracle(const LabeledDiagram& d, const VoronoiTraits& traits, std::uint64_t seed, int samples,
                          long range) {
  const Arrangement& arr = d.arrangement;
  require_valid(arr);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coord(-range * 64, range * 64);
  for (int i = 0; i < samples; ++i) {
    Point2 p(ratio(coord(rng), 64), ratio(coord(rng), 64));
    INFO("point " << p.to_string());
    CHECK(d.label_at(p) == brute_force_label(traits, p, d.farthest));
  }
  for (Id v : arr.vertex_ids()) {
    const Point2& p = *arr.vertex(v).point;
    INFO("vertex " << p.to_string());
    CHECK(arr.vertex(v).data == brute_force_label(traits, p, d.farthest));
  }
  for (Id e : arr.edge_ids()) {
    Point2 p = arr.edge(e).curve->interior_point();
    INFO("edge " << arr.edge(e).curve->to_string());
    CHECK(arr.edge(e).data == brute_force_label(traits, p, d.farthest));
  }
}

std::vector<Point2> random_points(std::size_t n, std::uint64_t seed, long range) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coord(-range, range);
  std::vector<Point2> pts;
  while (pts.size() < n) {
    Point2 p = pt(coord(rng), coord(rng));
    bool dup = false;
    for (const Point2& q : pts) dup = dup || q == p;
    if (!dup) pts.push_back(p);
  }
  return pts;
}

std::vector<Point2> circle_points(int n) {
  std::vector<Point2> pts;
  // t = tan(theta/2) spread over the circle, both signs and t = infinity.
  pts.push_back(pt(-1, 0));
  for (int i = 0; static_cast<int>(pts.size()) < n; ++i) {
    Rational t = ratio(i, 5) - ratio(n / 4, 5) + ratio(1, 1000);
    Rational den = 1 + t * t;
    pts.emplace_back((1 - t * t) / den, 2 * t / den);
  }
  return pts;
}

}  // namespace

TEST_CASE("single site covers the plane") {
  auto traits = points_traits({pt(3, 4)});
  LabeledDiagram d = voronoi(*traits);
  CHECK(d.arrangement.num_faces() == 1);
  CHECK(d.arrangement.num_edges() == 0);
  CHECK(d.label_at(pt(-100, 7)) == Label{0});
}

TEST_CASE("two points split by their bisector") {
  auto traits = points_traits({pt(0, 0), pt(2, 0)});
  LabeledDiagram d = voronoi(*traits);
  REQUIRE(d.arrangement.num_faces() == 2);
  REQUIRE(d.arrangement.num_edges() == 1);
  CHECK(d.arrangement.edge(d.arrangement.edge_ids().front()).curve->supporting_line() ==
        Line2(Rational(1), Rational(0), Rational(-1)));
  CHECK(d.label_at(pt(1, 5)) == Label{0, 1});
  CHECK(d.label_at(pt(-3, 1)) == Label{0});
  CHECK(d.label_at(pt(3, 1)) == Label{1});
}

TEST_CASE("merge removes the redundant middle edge") {
  auto traits = points_traits({pt(0, 0), pt(4, 0), pt(2, 0)});
  LabeledDiagram left = voronoi({0, 1}, *traits);
  CHECK(left.arrangement.num_faces() == 2);
  std::vector<std::string> stages;
  MergeOptions options;
  options.audit = [&](const Arrangement& arr, const char* stage) {
    stages.emplace_back(stage);
    require_valid(arr);
  };
  LabeledDiagram d = merge(left, single_site(2), *traits, options);
  CHECK(d.arrangement.num_faces() == 3);
  CHECK(d.arrangement.num_edges() == 2);
  for (Id e : d.arrangement.edge_ids()) {
    const Line2& l = d.arrangement.edge(e).curve->supporting_line();
    CHECK(l.is_vertical());
    CHECK((l.c() == -1 || l.c() == -3));
  }
  CHECK(stages.front() == "overlay");
  CHECK(stages.back() == "merged");
  check_against_oracle(d, *traits, 1, 100, 6);
}

TEST_CASE("coincident sites share every feature") {
  auto traits = points_traits({pt(0, 0), pt(0, 0), pt(3, 0)});
  LabeledDiagram d = voronoi(*traits);
  CHECK(d.arrangement.num_faces() == 2);
  CHECK(d.label_at(pt(-1, 0)) == Label{0, 1});
  check_against_oracle(d, *traits, 2, 50, 5);
}

TEST_CASE("farthest diagram of a square") {
  auto traits = points_traits({pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 2)});
  LabeledDiagram d = farthest_voronoi(*traits);
  CHECK(d.farthest);
  CHECK(d.arrangement.num_faces() == 4);
  CHECK(d.arrangement.num_vertices() == 1);
  CHECK(d.label_at(pt(-5, -6)) == Label{2});
  CHECK(d.label_at(pt(7, 8)) == Label{0});
  CHECK(d.label_at(pt(1, 1)) == Label{0, 1, 2, 3});
  check_against_oracle(d, *traits, 3, 100, 5);
}

TEST_CASE("cocircular points meet at one vertex") {
  auto pts = circle_points(12);
  auto traits = points_traits(pts);
  LabeledDiagram d = voronoi(*traits);
  CHECK(d.arrangement.num_vertices() == 1);
  CHECK(d.arrangement.num_edges() == 12);
  CHECK(d.arrangement.num_faces() == 12);
  check_against_oracle(d, *traits, 4, 50, 3);
}

TEST_CASE("random points agree with the oracle") {
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    auto traits = points_traits(random_points(15, seed, 20));
    LabeledDiagram d = voronoi(*traits, PartitionStrategy::randomized(seed));
    check_against_oracle(d, *traits, seed, 200, 25);
    CHECK(d.arrangement.num_faces() == 15);
    CHECK(d.arrangement.num_vertices() <= 2 * 15 - 5);
    CHECK(d.arrangement.num_edges() <= 3 * 15 - 6);
  }
}

TEST_CASE("grid points with many ties") {
  std::vector<Point2> pts;
  for (long i = 0; i < 4; ++i)
    for (long j = 0; j < 4; ++j) pts.push_back(pt(i, j));
  auto traits = points_traits(pts);
  LabeledDiagram d = voronoi(*traits);
  CHECK(d.arrangement.num_faces() == 16);
  CHECK(d.arrangement.num_vertices() == 9);
  check_against_oracle(d, *traits, 5, 200, 5);
}

TEST_CASE("partition strategies give the same diagram") {
  auto traits = points_traits(random_points(20, 77, 30));
  std::string ref = canonical_serialization(voronoi(*traits, PartitionStrategy::lex_sorted()));
  CHECK(canonical_serialization(voronoi(*traits, PartitionStrategy::spatial_sorted())) == ref);
  for (std::uint64_t seed : {1u, 2u, 3u})
    CHECK(canonical_serialization(voronoi(*traits, PartitionStrategy::randomized(seed))) == ref);
}

TEST_CASE("optimizations leave the diagram unchanged") {
  auto traits = points_traits(random_points(25, 99, 40));
  MergeOptions none;
  none.three_bisector = false;
  none.simple_zone = false;
  MergeOptions hint;
  hint.simple_zone = false;
  std::string ref = canonical_serialization(voronoi(*traits, {}, none));
  CHECK(canonical_serialization(voronoi(*traits, {}, hint)) == ref);
  CHECK(canonical_serialization(voronoi(*traits)) == ref);
}

TEST_CASE("partition splits") {
  auto traits = points_traits({pt(5, 0), pt(1, 0), pt(3, 0), pt(2, 9), pt(4, 1)});
  std::mt19937_64 rng(1);
  std::vector<int> all{0, 1, 2, 3, 4};
  auto [a, b] = partition(all, *traits, PartitionStrategy::lex_sorted(), rng);
  CHECK(a == std::vector<int>{1, 3, 2});
  CHECK(b == std::vector<int>{4, 0});
  auto [c, e] = partition(all, *traits, PartitionStrategy::randomized(9), rng);
  CHECK(!c.empty());
  CHECK(!e.empty());
  CHECK(c.size() + e.size() == 5);
  auto [s, t] = partition(all, *traits, PartitionStrategy::spatial_sorted(), rng);
  CHECK(s.size() == 3);
  CHECK(t.size() == 2);
}

TEST_CASE("overlay statistics of strip diagrams") {
  std::vector<Point2> pts;
  const int k = 4;
  for (long i = 0; i < k; ++i) pts.push_back(pt(2 * i, 0));
  for (long i = 0; i < k; ++i) pts.push_back(pt(100, 2 * i));
  auto traits = points_traits(pts);
  LabeledDiagram vertical = voronoi({0, 1, 2, 3}, *traits);
  LabeledDiagram horizontal = voronoi({4, 5, 6, 7}, *traits);
  OverlayStats s = overlay_stats(vertical, horizontal);
  CHECK(s.crossings == static_cast<std::size_t>((k - 1) * (k - 1)));
  CHECK(overlay_stats(single_site(0), single_site(1)).crossings == 0);
}

TEST_CASE("duplicate sites in a farthest diagram") {
  auto traits = points_traits({pt(8, 9), pt(-6, 8), pt(-4, 3), pt(7, -1), pt(1, 2), pt(8, 9)});
  MergeOptions options;
  options.audit = [](const Arrangement& arr, const char*) { require_valid(arr); };
  LabeledDiagram d = farthest_voronoi(*traits, {}, options);
  check_against_oracle(d, *traits, 6, 200, 20);
  CHECK(d.label_at(pt(-100, -100)) == Label{0, 5});
}

TEST_CASE("diagram json re-validates") {
  auto traits = points_traits(random_points(12, 5, 10));
  LabeledDiagram d = voronoi(*traits);
  std::string text = to_json(d);
  auto r = validate_diagram_json(text);
  CHECK_MESSAGE(r.ok, (r.problems.empty() ? std::string() : r.problems.front()));
  CHECK(text.find("\"mode\": \"nearest\"") != std::string::npos);
  CHECK_FALSE(validate_diagram_json("{\"vertices\": []}").ok);
  std::string broken = text;
  broken.replace(broken.find("\"payload\": [\n"), 12, "\"payload\": [], \"was\": [");
  CHECK_FALSE(validate_diagram_json(broken).ok);
}

#include <algorithm>
#include <random>

#include "doctest.h"
#include "envvor/arrangement.hpp"

using namespace envvor;

namespace {

Point2 pt(long x, long y) { return Point2(x, y); }

void require_valid(const Arrangement& arr) {
  auto r = arr.validate();
  REQUIRE_MESSAGE(r.ok, (r.problems.empty() ? std::string() : r.problems.front()));
  auto g = arr.validate_geometry();
  REQUIRE_MESSAGE(g.ok, (g.problems.empty() ? std::string() : g.problems.front()));
}

std::vector<std::string> curve_set(const Arrangement& arr) {
  std::vector<std::string> out;
  for (Id e : arr.edge_ids()) out.push_back(arr.edge(e).curve->to_string());
  std::sort(out.begin(), out.end());
  return out;
}

Arrangement unit_square() {
  return sweep_construct({XCurve::segment(pt(0, 0), pt(1, 0)), XCurve::segment(pt(1, 0), pt(1, 1)),
                          XCurve::segment(pt(1, 1), pt(0, 1)), XCurve::segment(pt(0, 1), pt(0, 0))});
}

Id inner_face(const Arrangement& arr) { return arr.locate(Point2(ratio(1, 3), ratio(1, 7))).id; }

}  // namespace

TEST_CASE("zone insertion through an existing vertex") {
  auto arr = sweep_construct({XCurve::line(Line2(0, 1, 0)), XCurve::line(Line2(1, 0, 0))});
  auto r = insert_with_zone(arr, XCurve::line(Line2(1, -1, 0)));
  require_valid(arr);
  CHECK(r.new_vertices.empty());
  CHECK(r.new_edges.size() == 2);
  CHECK(arr.num_vertices() == 1);
  CHECK(arr.num_edges() == 6);
  CHECK(arr.num_faces() == 6);
}

TEST_CASE("zone insertion of a segment inside a face") {
  auto arr = sweep_construct({XCurve::line(Line2(0, 1, 0))});
  auto r = insert_with_zone(arr, XCurve::segment(pt(1, 1), pt(3, 2)));
  require_valid(arr);
  CHECK(r.new_vertices.size() == 2);
  CHECK(r.new_edges.size() == 1);
  CHECK(arr.num_faces() == 2);
  Id f = arr.locate(pt(0, 5)).id;
  CHECK(arr.face(f).holes.size() == 1);
}

TEST_CASE("zone insertion of an existing edge adds nothing") {
  auto arr = unit_square();
  auto r = insert_with_zone(arr, XCurve::segment(pt(0, 0), pt(1, 0)));
  require_valid(arr);
  CHECK(r.new_edges.empty());
  CHECK(r.new_vertices.empty());
  CHECK(arr.num_edges() == 4);
}

TEST_CASE("incremental lines match the batch construction") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> d(-6, 6);
  std::vector<XCurve> lines;
  while (lines.size() < 12) {
    long a = d(rng), b = d(rng), c = d(rng);
    if (a == 0 && b == 0) continue;
    lines.push_back(XCurve::line(Line2(a, b, c)));
  }
  auto batch = sweep_construct(lines);
  Arrangement inc;
  for (const auto& l : lines) {
    insert_with_zone(inc, l);
    require_valid(inc);
  }
  CHECK(inc.num_vertices() == batch.num_vertices());
  CHECK(inc.num_faces() == batch.num_faces());
  CHECK(curve_set(inc) == curve_set(batch));
}

TEST_CASE("simplified zone on the unit square") {
  auto arr = unit_square();
  Id f = inner_face(arr);
  auto r = simplified_convex_zone(arr, XCurve::line(Line2(2, 0, -1)), f);
  require_valid(arr);
  CHECK(r.new_vertices.size() == 2);
  CHECK(r.new_edges.size() == 1);
  CHECK(arr.num_faces() == 3);
}

TEST_CASE("simplified zone starts at a hinted corner") {
  auto arr = unit_square();
  Id f = inner_face(arr);
  Id corner = *arr.find_vertex(pt(0, 0));
  auto r = simplified_convex_zone(arr, XCurve::line(Line2(1, -2, 0)), f, corner);
  require_valid(arr);
  CHECK(r.new_vertices.size() == 1);
  CHECK(std::find(r.touched_vertices.begin(), r.touched_vertices.end(), corner) != r.touched_vertices.end());
  CHECK(std::find(r.tested_vertices.begin(), r.tested_vertices.end(), corner) == r.tested_vertices.end());
  CHECK(arr.find_vertex(Point2(Rational(1), ratio(1, 2))));
  CHECK(arr.num_faces() == 3);

  auto plain = unit_square();
  auto r2 = simplified_convex_zone(plain, XCurve::line(Line2(1, -2, 0)), inner_face(plain));
  CHECK(std::find(r2.tested_vertices.begin(), r2.tested_vertices.end(), *plain.find_vertex(pt(0, 0))) !=
        r2.tested_vertices.end());
  CHECK(curve_set(plain) == curve_set(arr));
}

TEST_CASE("simplified zone misses a triangle and touches corners") {
  auto arr = sweep_construct({XCurve::segment(pt(0, 0), pt(4, 0)), XCurve::segment(pt(4, 0), pt(0, 4)),
                              XCurve::segment(pt(0, 4), pt(0, 0))});
  Id f = arr.locate(pt(1, 1)).id;
  auto miss = simplified_convex_zone(arr, XCurve::line(Line2(1, 1, -10)), f);
  CHECK(miss.new_edges.empty());
  auto touch = simplified_convex_zone(arr, XCurve::line(Line2(1, 0, 0)), f);
  CHECK(touch.new_edges.empty());
  auto corner = simplified_convex_zone(arr, XCurve::line(Line2(1, 1, -8)), f);
  CHECK(corner.new_edges.empty());
  CHECK(arr.num_edges() == 3);
  CHECK_THROWS_AS(simplified_convex_zone(arr, XCurve::segment(pt(0, 1), pt(1, 1)), f), Error);
  Id outside = arr.locate(pt(9, 9)).id;
  CHECK_THROWS_AS(simplified_convex_zone(arr, XCurve::line(Line2(1, 0, 0)), outside), Error);
}

TEST_CASE("simplified zone agrees with general insertion") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> d(-9, 9);
  int compared = 0;
  for (int round = 0; round < 40; ++round) {
    std::vector<XCurve> lines;
    for (int i = 0; i < 5; ++i) {
      long a = d(rng), b = d(rng), c = d(rng);
      if (a == 0 && b == 0) a = 1;
      lines.push_back(XCurve::line(Line2(a, b, c)));
    }
    auto base = sweep_construct(lines);
    long a = d(rng), b = d(rng), c = d(rng);
    if (a == 0 && b == 0) b = 1;
    XCurve probe = XCurve::line(Line2(a, b, c));
    for (Id f : base.face_ids()) {
      bool bounded = true;
      for (Id h : base.ccb(base.face(f).outer)) bounded = bounded && !base.is_fictitious(h);
      if (!bounded) continue;
      Arrangement x = base, y = base;
      simplified_convex_zone(x, probe, f);
      insert_in_face(y, probe, f);
      require_valid(x);
      require_valid(y);
      CHECK(curve_set(x) == curve_set(y));
      CHECK(x.num_faces() == y.num_faces());
      ++compared;
    }
  }
  CHECK(compared > 20);
}

TEST_CASE("insert in face keeps other faces intact") {
  auto arr = sweep_construct({XCurve::line(Line2(1, 0, 0))});
  Id right = arr.locate(pt(1, 0)).id;
  insert_in_face(arr, XCurve::line(Line2(0, 1, 0)), right);
  require_valid(arr);
  CHECK(arr.num_faces() == 3);
  CHECK(arr.num_vertices() == 1);
  CHECK(arr.locate(pt(-1, 0)).kind == FeatureKind::Face);
}

TEST_CASE("closed loop inside a face") {
  auto arr = unit_square();
  Id f = inner_face(arr);
  Circle2 k(ratio(1, 2), ratio(1, 2), ratio(1, 16));
  for (const XCurve& arc : XCurve::circle_arcs(k)) {
    Id host = arr.locate(arc.interior_point()).id;
    insert_in_face(arr, arc, host);
  }
  require_valid(arr);
  CHECK(arr.num_faces() == 3);
  CHECK(arr.num_vertices() == 6);
  (void)f;
}

TEST_CASE("edge removal") {
  SUBCASE("chord of a square") {
    auto arr = unit_square();
    insert_with_zone(arr, XCurve::segment(pt(0, 0), pt(1, 1)));
    REQUIRE(arr.num_faces() == 3);
    Id chord = kNoId;
    for (Id e : arr.edge_ids())
      if (arr.edge(e).curve->supporting_line() == Line2(1, -1, 0)) chord = e;
    arr.remove_edge(chord);
    require_valid(arr);
    CHECK(arr.num_faces() == 2);
  }
  SUBCASE("antenna") {
    auto arr = unit_square();
    insert_with_zone(arr, XCurve::segment(pt(1, 1), pt(2, 3)));
    REQUIRE(arr.num_vertices() == 5);
    Id e = arr.locate(Point2(ratio(3, 2), Rational(2))).id;
    arr.remove_edge(e);
    require_valid(arr);
    CHECK(arr.num_vertices() == 4);
  }
  SUBCASE("grid edge") {
    std::vector<XCurve> curves;
    for (long i = 0; i < 3; ++i) {
      curves.push_back(XCurve::line(Line2(1, 0, -i)));
      curves.push_back(XCurve::line(Line2(0, 1, -i)));
    }
    auto arr = sweep_construct(curves);
    std::size_t faces = arr.num_faces();
    arr.remove_edge(arr.locate(Point2(ratio(1, 2), Rational(1))).id);
    require_valid(arr);
    CHECK(arr.num_faces() == faces - 1);
  }
  SUBCASE("unbounded line") {
    auto arr = sweep_construct({XCurve::line(Line2(0, 1, 0)), XCurve::line(Line2(1, 0, 0))});
    arr.remove_edge(arr.locate(pt(5, 0)).id);
    require_valid(arr);
    CHECK(arr.num_faces() == 3);
    arr.remove_edge(arr.locate(pt(-5, 0)).id);
    require_valid(arr);
    CHECK(arr.merge_vertex(*arr.find_vertex(pt(0, 0))));
    require_valid(arr);
    CHECK(arr.num_vertices() == 0);
    CHECK(arr.num_edges() == 1);
  }
  SUBCASE("tear everything down") {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<long> d(-20, 20);
    std::vector<XCurve> segs;
    while (segs.size() < 15) {
      Point2 p = pt(d(rng), d(rng)), q = pt(d(rng), d(rng));
      if (!(p == q)) segs.push_back(XCurve::segment(p, q));
    }
    segs.push_back(XCurve::line(Line2(1, 3, -2)));
    auto arr = sweep_construct(segs);
    auto ids = arr.edge_ids();
    std::shuffle(ids.begin(), ids.end(), rng);
    for (Id e : ids) {
      arr.remove_edge(e);
      require_valid(arr);
    }
    CHECK(arr.num_vertices() == 0);
    CHECK(arr.num_faces() == 1);
    auto c = arr.compacted();
    require_valid(c);
    CHECK(c.vertex_capacity() == 4);
    CHECK(c.edge_capacity() == 4);
  }
}

TEST_CASE("vertex merging restores the original curve") {
  auto arr = sweep_construct({XCurve::segment(pt(0, 0), pt(4, 4)), XCurve::segment(pt(0, 4), pt(4, 0))});
  Id cross = *arr.find_vertex(pt(2, 2));
  CHECK_FALSE(arr.merge_vertex(cross));
  Id e = arr.locate(pt(3, 1)).id;
  arr.remove_edge(e);
  Id low = arr.locate(pt(1, 3)).id;
  arr.remove_edge(low);
  REQUIRE(arr.degree(cross) == 2);
  CHECK(arr.merge_vertex(cross));
  require_valid(arr);
  CHECK(arr.num_edges() == 1);
  CHECK(arr.edge(arr.edge_ids().front()).curve->same_as(XCurve::segment(pt(0, 0), pt(4, 4))));
}

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "envvor/annulus.hpp"
#include "envvor/diagrams.hpp"
#include "envvor/generate.hpp"

using namespace envvor;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, bool pass, const std::string& name, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("%s %d %s: %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
}

// Structural audit shared by every construction below.
struct Audit {
  std::size_t arrangements = 0;
  std::size_t violations = 0;
  std::string first_problem;
  std::size_t skipped = 0;
  bool per_face = true;
  static constexpr std::size_t kPerFaceEdges = 200;

  void check(const Arrangement& arr, const char* stage) {
    if (std::string(stage) == "bisector" && (!per_face || arr.num_edges() > kPerFaceEdges)) {
      ++skipped;
      return;
    }
    ++arrangements;
    ValidationReport r = arr.validate();
    if (r.ok) r = arr.validate_geometry();
    if (!r.ok) {
      ++violations;
      if (first_problem.empty()) first_problem = std::string(stage) + ": " + r.problems.front();
    }
  }

  MergeOptions options(bool three = true, bool simple = true) {
    MergeOptions o;
    o.three_bisector = three;
    o.simple_zone = simple;
    o.audit = [this](const Arrangement& arr, const char* stage) { check(arr, stage); };
    return o;
  }
};

Audit audit;

Rational rnd(std::mt19937_64& rng, long lo, long hi, long den = 1) {
  return ratio(std::uniform_int_distribution<long>(lo * den, hi * den)(rng), den);
}

Point2 rnd_point(std::mt19937_64& rng, long range, long den = 1) {
  return Point2(rnd(rng, -range, range, den), rnd(rng, -range, range, den));
}

// ---------------------------------------------------------------------------

void cocircular() {
  auto t0 = Clock::now();
  auto traits = points_traits(circle_points(36));
  LabeledDiagram d = voronoi(*traits, {}, audit.options());
  double secs = seconds_since(t0);
  std::size_t v = d.arrangement.num_vertices(), e = d.arrangement.num_edges(), f = d.arrangement.num_faces();
  char buf[128];
  std::snprintf(buf, sizeof buf, "V=%zu E=%zu F=%zu in %.2f s (need V=1 E=36 F=36, < 10 s)", v, e, f, secs);
  report(1, v == 1 && e == 36 && f == 36 && secs < 10, "cocircular degeneracy", buf);
}

void randomization() {
  const std::size_t n = 64;
  auto traits = points_traits(cross_points(n));
  VoronoiRun run;
  auto t0 = Clock::now();
  voronoi(*traits, PartitionStrategy::lex_sorted(), {}, &run);
  std::size_t lex = run.final_overlay.crossings;
  double total = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    voronoi(*traits, PartitionStrategy::randomized(seed), {}, &run);
    total += static_cast<double>(run.final_overlay.crossings);
  }
  double secs = seconds_since(t0);
  voronoi(*traits, PartitionStrategy::lex_sorted(), audit.options());
  for (std::uint64_t seed = 1; seed <= 5; ++seed) voronoi(*traits, PartitionStrategy::randomized(seed), audit.options());
  double mean = total / 5;
  double half = static_cast<double>(n) / 2 - 1;
  double lex_floor = half * half * 0.8;
  double rnd_cap = 10.0 * static_cast<double>(n);
  char buf[200];
  std::snprintf(buf, sizeof buf, "lex crossings %zu (>= %.1f), randomized mean %.1f (<= %.0f), %.1f s (< 60 s)", lex,
                lex_floor, mean, rnd_cap, secs);
  report(2, static_cast<double>(lex) >= lex_floor && mean <= rnd_cap && secs < 60, "randomization effect", buf);
}

void counters() {
  auto traits = points_traits(random_points(1000, 2007));
  std::uint64_t fb[3];
  std::string canon[3];
  audit.per_face = false;
  for (int cfg = 0; cfg < 3; ++cfg) {
    reset_filter_counters();
    LabeledDiagram d = voronoi(*traits, PartitionStrategy::randomized(1), audit.options(cfg >= 1, cfg >= 2));
    fb[cfg] = filter_counters().exact_fallbacks;
    canon[cfg] = canonical_serialization(d);
  }
  audit.per_face = true;
  bool same = canon[0] == canon[1] && canon[1] == canon[2];
  bool pass = fb[0] > 0 && 3 * fb[1] <= fb[0] && 10 * fb[2] <= fb[0] && same;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "exact fallbacks none=%llu three-bisector=%llu (<= 1/3) +simple-zone=%llu (<= 1/10), outputs %s",
                static_cast<unsigned long long>(fb[0]), static_cast<unsigned long long>(fb[1]),
                static_cast<unsigned long long>(fb[2]), same ? "identical" : "DIFFER");
  report(3, pass, "optimization counters", buf);
}

std::unique_ptr<SiteTraits> random_family(SiteFamily family, std::size_t n, std::mt19937_64& rng) {
  switch (family) {
    case SiteFamily::Points: {
      std::vector<Point2> pts;
      for (std::size_t i = 0; i < n; ++i) pts.push_back(rnd_point(rng, 50));
      return points_traits(pts);
    }
    case SiteFamily::Power: {
      std::vector<Circle2> disks;
      for (std::size_t i = 0; i < n; ++i) {
        Rational r = rnd(rng, 0, 15);
        disks.emplace_back(rnd(rng, -50, 50), rnd(rng, -50, 50), r * r);
      }
      return power_traits(disks);
    }
    case SiteFamily::TriangleArea: {
      std::vector<PairSite> pairs;
      while (pairs.size() < n) {
        Point2 p = rnd_point(rng, 20), q = rnd_point(rng, 20);
        if (!(p == q)) pairs.push_back({p, q});
      }
      return triangle_area_traits(pairs);
    }
    case SiteFamily::Mobius: {
      std::vector<MobiusSite> sites;
      for (std::size_t i = 0; i < n; ++i) sites.push_back({rnd_point(rng, 30), rnd(rng, 1, 4), rnd(rng, 0, 400)});
      return mobius_traits(sites);
    }
  }
  return nullptr;
}

void oracle() {
  auto t0 = Clock::now();
  std::mt19937_64 rng(4);
  std::size_t queries = 0, mismatches = 0, diagrams = 0;
  std::string first;
  auto check = [&](const LabeledDiagram& d, const VoronoiTraits& traits, const Point2& p) {
    ++queries;
    if (d.label_at(p) == brute_force_label(traits, p, d.farthest)) return;
    if (++mismatches == 1) first = " first at " + p.to_string();
  };
  for (SiteFamily family : {SiteFamily::Points, SiteFamily::Power, SiteFamily::TriangleArea, SiteFamily::Mobius}) {
    for (int inst = 0; inst < 20; ++inst) {
      std::size_t n = std::uniform_int_distribution<std::size_t>(2, 40)(rng);
      auto traits = random_family(family, n, rng);
      bool far = inst % 4 == 3 && (family == SiteFamily::Points || family == SiteFamily::Power);
      LabeledDiagram d = far ? farthest_voronoi(*traits, PartitionStrategy::randomized(inst), audit.options())
                             : voronoi(*traits, PartitionStrategy::randomized(inst), audit.options());
      ++diagrams;
      for (int q = 0; q < 1000; ++q) check(d, *traits, rnd_point(rng, 80, 7));
      for (Id v : d.arrangement.vertex_ids()) check(d, *traits, *d.arrangement.vertex(v).point);
      for (Id e : d.arrangement.edge_ids()) check(d, *traits, d.arrangement.edge(e).curve->interior_point());
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu diagrams over 4 families, %zu located queries, %zu mismatches%s (%.1f s)",
                diagrams, queries, mismatches, first.c_str(), seconds_since(t0));
  report(4, mismatches == 0, "oracle label equivalence", buf);
}

void mobius_power() {
  std::mt19937_64 rng(5);
  int equal = 0;
  for (int inst = 0; inst < 20; ++inst) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(3, 25)(rng);
    Rational lambda = rnd(rng, 1, 9, 2);
    std::vector<Circle2> disks;
    std::vector<MobiusSite> sites;
    for (std::size_t i = 0; i < n; ++i) {
      Rational r = rnd(rng, 0, 12);
      Circle2 c(rnd(rng, -40, 40), rnd(rng, -40, 40), r * r);
      disks.push_back(c);
      sites.push_back({c.center(), lambda, lambda * c.sq_radius});
    }
    std::string a = canonical_serialization(voronoi(*power_traits(disks), {}, audit.options()));
    std::string b = canonical_serialization(voronoi(*mobius_traits(sites), {}, audit.options()));
    equal += a == b;
  }
  report(5, equal == 20, "mobius to power reduction", std::to_string(equal) + "/20 identical labeled subdivisions");
}

void partition_invariance() {
  int equal = 0;
  for (std::uint64_t inst = 0; inst < 10; ++inst) {
    auto traits = points_traits(random_points(50, 600 + inst, 1000));
    std::string ref = canonical_serialization(voronoi(*traits, PartitionStrategy::lex_sorted(), audit.options()));
    bool same = canonical_serialization(voronoi(*traits, PartitionStrategy::spatial_sorted(), audit.options())) == ref;
    for (std::uint64_t seed : {11u, 22u, 33u})
      same = same &&
             canonical_serialization(voronoi(*traits, PartitionStrategy::randomized(seed), audit.options())) == ref;
    equal += same;
  }
  report(6, equal == 10, "partition-strategy invariance", std::to_string(equal) + "/10 instances identical across 5 runs");
}

void annulus() {
  auto t0 = Clock::now();
  std::mt19937_64 rng(7);
  int equal = 0, none = 0;
  for (int inst = 0; inst < 50; ++inst) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(4, 10)(rng);
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(rnd_point(rng, 20));
    auto a = min_width_annulus_points(pts);
    auto b = brute_force_annulus(pts);
    if (!a && !b) {
      ++equal;
      ++none;
    } else if (a && b && compare_widths(a->width(), b->width()) == Ordering::Equal) {
      ++equal;
    }
  }
  double secs = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d/50 widths equal to the brute-force oracle (%d without annulus), %.1f s (< 120 s)",
                equal, none, secs);
  report(7, equal == 50 && secs < 120, "annulus oracle equivalence", buf);
}

void structure() {
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "%zu arrangements audited (DCEL, Euler, pairwise intersections), %zu per-face stages above %zu edges "
                "skipped, %zu violations%s%s",
                audit.arrangements, audit.skipped, Audit::kPerFaceEdges, audit.violations, audit.first_problem.empty() ? "" : ": ",
                audit.first_problem.c_str());
  report(8, audit.violations == 0 && audit.arrangements > 0, "structural invariants", buf);
}

}  // namespace

int main() {
  const std::function<void()> criteria[] = {cocircular, randomization, counters, oracle, mobius_power,
                                            partition_invariance, annulus};
  int id = 1;
  for (const auto& run : criteria) {
    try {
      run();
    } catch (const std::exception& e) {
      report(id, false, "exception", e.what());
    }
    ++id;
  }
  structure();
  return failures == 0 ? 0 : 1;
}

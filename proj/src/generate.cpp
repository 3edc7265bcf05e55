#include "envvor/generate.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <set>

namespace envvor {

const char* to_string(DatasetKind kind) noexcept {
  switch (kind) {
    case DatasetKind::RandomSquare: return "random-square";
    case DatasetKind::Grid: return "grid";
    case DatasetKind::OnCircle: return "on-circle";
    case DatasetKind::Cross: return "cross";
    case DatasetKind::RandomDisks: return "random-disks";
    case DatasetKind::RandomMobius: return "random-mobius";
  }
  return "?";
}

DatasetKind parse_dataset_kind(const std::string& name) {
  for (DatasetKind k : {DatasetKind::RandomSquare, DatasetKind::Grid, DatasetKind::OnCircle, DatasetKind::Cross,
                        DatasetKind::RandomDisks, DatasetKind::RandomMobius})
    if (name == to_string(k)) return k;
  throw Error(Errc::UnknownKind, "unknown dataset kind '" + name + "'");
}

std::vector<Point2> random_points(std::size_t n, std::uint64_t seed, long range) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coord(-range, range);
  std::set<std::pair<long, long>> seen;
  std::vector<Point2> pts;
  while (pts.size() < n) {
    long x = coord(rng), y = coord(rng);
    if (seen.emplace(x, y).second) pts.emplace_back(x, y);
  }
  return pts;
}

std::vector<Point2> grid_points(std::size_t n) {
  auto k = static_cast<long>(std::ceil(std::sqrt(static_cast<double>(n))));
  std::vector<Point2> pts;
  for (long i = 0; i < k; ++i)
    for (long j = 0; j < k; ++j) pts.emplace_back(i, j);
  return pts;
}

std::vector<Point2> circle_points(std::size_t n) {
  std::vector<Point2> pts;
  std::set<Rational> used;
  for (std::size_t i = 0; i < n; ++i) {
    double theta = 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    if (std::fabs(theta - std::numbers::pi) < 1e-12) {
      pts.emplace_back(-1L, 0L);
      continue;
    }
    // t = tan(theta / 2), rounded to a short rational.
    Rational t = ratio(std::lround(std::tan(theta / 2) * 4096), 4096);
    while (!used.insert(t).second) t += ratio(1, 4096);
    Rational den = 1 + t * t;
    pts.emplace_back(Rational((1 - t * t) / den), Rational(2 * t / den));
  }
  return pts;
}

std::vector<Point2> cross_points(std::size_t n) {
  std::vector<Point2> pts;
  const std::size_t up = (n + 1) / 2;
  for (std::size_t i = 0; i < up; ++i) pts.emplace_back(0L, static_cast<long>(i));
  for (std::size_t i = 0; i < n / 2; ++i) pts.emplace_back(static_cast<long>(n + i), 0L);
  return pts;
}

std::vector<DistanceFn> generate_sites(DatasetKind kind, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(Errc::EmptyInput, "n must be positive");
  std::vector<DistanceFn> sites;
  auto add_points = [&](const std::vector<Point2>& pts) {
    for (const Point2& p : pts) sites.emplace_back(PointSite{p});
  };
  switch (kind) {
    case DatasetKind::RandomSquare: add_points(random_points(n, seed)); break;
    case DatasetKind::Grid: add_points(grid_points(n)); break;
    case DatasetKind::OnCircle: add_points(circle_points(n)); break;
    case DatasetKind::Cross: add_points(cross_points(n)); break;
    case DatasetKind::RandomDisks: {
      std::mt19937_64 rng(seed ^ 0xd15c);
      std::uniform_int_distribution<long> r(0, 100);
      for (const Point2& p : random_points(n, seed, 1000)) {
        long radius = r(rng);
        sites.emplace_back(DiskSite{Circle2(p.x.rational(), p.y.rational(), Rational(radius * radius))});
      }
      break;
    }
    case DatasetKind::RandomMobius: {
      std::mt19937_64 rng(seed ^ 0x30b1);
      std::uniform_int_distribution<long> lam(1, 4), mu(0, 10000);
      for (const Point2& p : random_points(n, seed, 100))
        sites.emplace_back(MobiusSite{p, Rational(lam(rng)), Rational(mu(rng))});
      break;
    }
  }
  return sites;
}

}  // namespace envvor

#pragma once

// Concrete site families: points, power disks, two-point triangle-area
// sites and Moebius sites.

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "envvor/envelope_voronoi.hpp"
#include "envvor/kernel.hpp"

namespace envvor {

enum class SiteFamily { Points, Power, TriangleArea, Mobius };

const char* to_string(SiteFamily family) noexcept;
/// Accepts "points", "power", "triangle-area" and "mobius".
SiteFamily parse_family(const std::string& name);

class SiteTraits final : public VoronoiTraits {
 public:
  SiteTraits(SiteFamily family, std::vector<DistanceFn> sites);

  SiteFamily site_family() const noexcept { return family_; }
  const std::vector<DistanceFn>& sites() const noexcept { return sites_; }

  std::size_t size() const override { return sites_.size(); }
  CurveFamily family() const override;
  bool affine() const override;
  std::vector<XCurve> construct_bisector(int s1, int s2) const override;
  Ordering compare_distance_at_point(int s1, int s2, const Point2& p) const override;
  Ordering compare_dominance(int s1, int s2) const override;
  Point2 anchor(int s) const override;

 private:
  SiteFamily family_;
  std::vector<DistanceFn> sites_;
};

std::unique_ptr<SiteTraits> points_traits(const std::vector<Point2>& points);
std::unique_ptr<SiteTraits> power_traits(const std::vector<Circle2>& disks);
std::unique_ptr<SiteTraits> triangle_area_traits(const std::vector<PairSite>& pairs);
std::unique_ptr<SiteTraits> mobius_traits(const std::vector<MobiusSite>& sites);

/// Validates sites against their family and builds the traits. Throws
/// DegenerateSite or UnknownKind.
std::unique_ptr<SiteTraits> make_traits(SiteFamily family, const std::vector<DistanceFn>& sites);

/// One JSON object per line: {"type":"point","x":"1/2","y":"3"},
/// {"type":"disk","x":..,"y":..,"sq_radius":..},
/// {"type":"pair","px":..,"py":..,"qx":..,"qy":..} or
/// {"type":"mobius","x":..,"y":..,"lambda":..,"mu":..}. An optional header
/// line {"family":"points"} names the family.
std::vector<DistanceFn> read_sites(std::istream& in, std::optional<SiteFamily>* header = nullptr);
void write_sites(std::ostream& out, const std::vector<DistanceFn>& sites,
                 std::optional<SiteFamily> header = std::nullopt);
std::string site_to_json(const DistanceFn& site);
/// Family implied by the site types; throws UnknownKind when mixed.
SiteFamily family_of(const std::vector<DistanceFn>& sites);

}  // namespace envvor

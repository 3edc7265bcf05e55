#include "envvor/diagrams.hpp"

#include <istream>
#include <ostream>

#include "json.hpp"

namespace envvor {

namespace {

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

const char* type_name(const DistanceFn& s) {
  switch (s.index()) {
    case 0: return "point";
    case 1: return "disk";
    case 2: return "pair";
    default: return "mobius";
  }
}

SiteFamily family_of_site(const DistanceFn& s) {
  switch (s.index()) {
    case 0: return SiteFamily::Points;
    case 1: return SiteFamily::Power;
    case 2: return SiteFamily::TriangleArea;
    default: return SiteFamily::Mobius;
  }
}

Point2 rational_point(const Point2& p) {
  if (!p.is_rational()) throw Error(Errc::DegenerateSite, "site coordinates must be rational");
  return p;
}

void validate(SiteFamily family, const DistanceFn& s) {
  if (family_of_site(s) != family)
    throw Error(Errc::UnknownKind, std::string(type_name(s)) + " site in a " + to_string(family) + " diagram");
  std::visit(overloaded{
                 [](const PointSite& p) { rational_point(p.p); },
                 [](const DiskSite& d) {
                   if (sgn(d.disk.sq_radius) < 0) throw Error(Errc::DegenerateSite, "negative squared radius");
                 },
                 [](const PairSite& p) {
                   rational_point(p.p);
                   rational_point(p.q);
                   if (p.p == p.q) throw Error(Errc::DegenerateSite, "pair site with equal points");
                 },
                 [](const MobiusSite& m) {
                   rational_point(m.p);
                   if (sgn(m.lambda) <= 0) throw Error(Errc::DegenerateSite, "mobius lambda must be positive");
                 },
             },
             s);
}

Ordering dominance_of(const std::variant<Line2, NoBisector>& b) { return std::get<NoBisector>(b).dominant; }

}  // namespace

const char* to_string(SiteFamily family) noexcept {
  switch (family) {
    case SiteFamily::Points: return "points";
    case SiteFamily::Power: return "power";
    case SiteFamily::TriangleArea: return "triangle-area";
    case SiteFamily::Mobius: return "mobius";
  }
  return "?";
}

SiteFamily parse_family(const std::string& name) {
  for (SiteFamily f : {SiteFamily::Points, SiteFamily::Power, SiteFamily::TriangleArea, SiteFamily::Mobius})
    if (name == to_string(f)) return f;
  if (name == "point") return SiteFamily::Points;
  throw Error(Errc::UnknownKind, "unknown family '" + name + "'");
}

SiteTraits::SiteTraits(SiteFamily family, std::vector<DistanceFn> sites) : family_(family), sites_(std::move(sites)) {
  for (const DistanceFn& s : sites_) validate(family_, s);
}

CurveFamily SiteTraits::family() const {
  return family_ == SiteFamily::Mobius ? CurveFamily::CircleSegment : CurveFamily::Linear;
}

bool SiteTraits::affine() const { return family_ == SiteFamily::Points || family_ == SiteFamily::Power; }

std::vector<XCurve> SiteTraits::construct_bisector(int s1, int s2) const {
  const DistanceFn& a = sites_[static_cast<std::size_t>(s1)];
  const DistanceFn& b = sites_[static_cast<std::size_t>(s2)];
  switch (family_) {
    case SiteFamily::Points: {
      const Point2& p = std::get<PointSite>(a).p;
      const Point2& q = std::get<PointSite>(b).p;
      if (p == q) return {};
      return {XCurve::line(perpendicular_bisector(p, q))};
    }
    case SiteFamily::Power: {
      auto r = radical_axis(std::get<DiskSite>(a).disk, std::get<DiskSite>(b).disk);
      if (const Line2* l = std::get_if<Line2>(&r)) return {XCurve::line(*l)};
      return {};
    }
    case SiteFamily::TriangleArea: {
      TriangleAreaBisector t = triangle_area_bisector(std::get<PairSite>(a), std::get<PairSite>(b));
      std::vector<XCurve> out;
      for (const LinearPiece& piece : t.pieces) out.push_back(XCurve::from_piece(piece));
      return out;
    }
    case SiteFamily::Mobius: {
      auto r = mobius_bisector(std::get<MobiusSite>(a), std::get<MobiusSite>(b));
      if (const Line2* l = std::get_if<Line2>(&r)) return {XCurve::line(*l)};
      if (const Circle2* c = std::get_if<Circle2>(&r)) return XCurve::circle_arcs(*c);
      return {};
    }
  }
  return {};
}

Ordering SiteTraits::compare_distance_at_point(int s1, int s2, const Point2& p) const {
  return distance_compare_at(p, sites_[static_cast<std::size_t>(s1)], sites_[static_cast<std::size_t>(s2)]);
}

Ordering SiteTraits::compare_dominance(int s1, int s2) const {
  const DistanceFn& a = sites_[static_cast<std::size_t>(s1)];
  const DistanceFn& b = sites_[static_cast<std::size_t>(s2)];
  switch (family_) {
    case SiteFamily::Points: return Ordering::Equal;
    case SiteFamily::Power: return dominance_of(radical_axis(std::get<DiskSite>(a).disk, std::get<DiskSite>(b).disk));
    case SiteFamily::TriangleArea:
      if (triangle_area_bisector(std::get<PairSite>(a), std::get<PairSite>(b)).coincident) return Ordering::Equal;
      break;
    case SiteFamily::Mobius: {
      auto r = mobius_bisector(std::get<MobiusSite>(a), std::get<MobiusSite>(b));
      if (const NoBisector* n = std::get_if<NoBisector>(&r)) return n->dominant;
      break;
    }
  }
  return VoronoiTraits::compare_dominance(s1, s2);
}

Point2 SiteTraits::anchor(int s) const {
  return std::visit(overloaded{
                        [](const PointSite& p) { return p.p; },
                        [](const DiskSite& d) { return d.disk.center(); },
                        [](const PairSite& p) { return p.p; },
                        [](const MobiusSite& m) { return m.p; },
                    },
                    sites_[static_cast<std::size_t>(s)]);
}

std::unique_ptr<SiteTraits> points_traits(const std::vector<Point2>& points) {
  std::vector<DistanceFn> sites;
  for (const Point2& p : points) sites.emplace_back(PointSite{p});
  return std::make_unique<SiteTraits>(SiteFamily::Points, std::move(sites));
}

std::unique_ptr<SiteTraits> power_traits(const std::vector<Circle2>& disks) {
  std::vector<DistanceFn> sites;
  for (const Circle2& d : disks) sites.emplace_back(DiskSite{d});
  return std::make_unique<SiteTraits>(SiteFamily::Power, std::move(sites));
}

std::unique_ptr<SiteTraits> triangle_area_traits(const std::vector<PairSite>& pairs) {
  return std::make_unique<SiteTraits>(SiteFamily::TriangleArea, std::vector<DistanceFn>(pairs.begin(), pairs.end()));
}

std::unique_ptr<SiteTraits> mobius_traits(const std::vector<MobiusSite>& sites) {
  return std::make_unique<SiteTraits>(SiteFamily::Mobius, std::vector<DistanceFn>(sites.begin(), sites.end()));
}

std::unique_ptr<SiteTraits> make_traits(SiteFamily family, const std::vector<DistanceFn>& sites) {
  return std::make_unique<SiteTraits>(family, sites);
}

SiteFamily family_of(const std::vector<DistanceFn>& sites) {
  if (sites.empty()) throw Error(Errc::EmptyInput, "no sites");
  SiteFamily f = family_of_site(sites.front());
  for (const DistanceFn& s : sites)
    if (family_of_site(s) != f) throw Error(Errc::UnknownKind, "mixed site types");
  return f;
}

// ---------------------------------------------------------------------------
// JSON lines

namespace {

using nlohmann::json;

Rational field(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(Errc::ParseError, std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw Error(Errc::ParseError, std::string("field '") + key + "' must be a rational string");
}

}  // namespace

std::vector<DistanceFn> read_sites(std::istream& in, std::optional<SiteFamily>* header) {
  std::vector<DistanceFn> sites;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": " + e.what());
    }
    if (!j.is_object()) throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": expected an object");
    if (j.contains("family") && !j.contains("type")) {
      SiteFamily f = parse_family(j.at("family").get<std::string>());
      if (header) *header = f;
      continue;
    }
    std::string type = j.value("type", "");
    if (type == "point") {
      sites.emplace_back(PointSite{Point2(field(j, "x"), field(j, "y"))});
    } else if (type == "disk") {
      sites.emplace_back(DiskSite{Circle2(field(j, "x"), field(j, "y"), field(j, "sq_radius"))});
    } else if (type == "pair") {
      sites.emplace_back(
          PairSite{Point2(field(j, "px"), field(j, "py")), Point2(field(j, "qx"), field(j, "qy"))});
    } else if (type == "mobius") {
      sites.emplace_back(MobiusSite{Point2(field(j, "x"), field(j, "y")), field(j, "lambda"), field(j, "mu")});
    } else {
      throw Error(Errc::UnknownKind, "line " + std::to_string(lineno) + ": unknown site type '" + type + "'");
    }
  }
  return sites;
}

std::string site_to_json(const DistanceFn& site) {
  auto str = [](const SqrtExt& v) { return to_string(v.rational()); };
  json j{{"type", type_name(site)}};
  std::visit(overloaded{
                 [&](const PointSite& p) {
                   j["x"] = str(p.p.x);
                   j["y"] = str(p.p.y);
                 },
                 [&](const DiskSite& d) {
                   j["x"] = to_string(d.disk.cx);
                   j["y"] = to_string(d.disk.cy);
                   j["sq_radius"] = to_string(d.disk.sq_radius);
                 },
                 [&](const PairSite& p) {
                   j["px"] = str(p.p.x);
                   j["py"] = str(p.p.y);
                   j["qx"] = str(p.q.x);
                   j["qy"] = str(p.q.y);
                 },
                 [&](const MobiusSite& m) {
                   j["x"] = str(m.p.x);
                   j["y"] = str(m.p.y);
                   j["lambda"] = to_string(m.lambda);
                   j["mu"] = to_string(m.mu);
                 },
             },
             site);
  return j.dump();
}

void write_sites(std::ostream& out, const std::vector<DistanceFn>& sites, std::optional<SiteFamily> header) {
  if (header) out << json{{"family", to_string(*header)}}.dump() << '\n';
  for (const DistanceFn& s : sites) out << site_to_json(s) << '\n';
}

}  // namespace envvor

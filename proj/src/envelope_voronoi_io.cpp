#include <map>
#include <numeric>

#include "envvor/envelope_voronoi.hpp"
#include "json.hpp"

namespace envvor {

using nlohmann::json;

std::string to_json(const LabeledDiagram& d) {
  json j = json::parse(to_json(d.arrangement));
  j["mode"] = d.farthest ? "farthest" : "nearest";
  return j.dump(1);
}

namespace {

struct Dsu {
  std::vector<std::size_t> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

ValidationReport validate_diagram_json(const std::string& text) {
  ValidationReport r;
  auto fail = [&](const std::string& msg) {
    r.ok = false;
    r.problems.push_back(msg);
  };
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("unreadable: ") + e.what());
    return r;
  }
  for (const char* key : {"vertices", "halfedges", "edges", "faces"})
    if (!j.contains(key) || !j.at(key).is_array()) {
      fail(std::string("missing ") + key);
      return r;
    }

  std::map<long, std::size_t> vindex, findex;
  for (const json& v : j["vertices"]) {
    vindex.emplace(v.at("id").get<long>(), vindex.size());
    if (v.contains("x") && v.at("payload").empty()) fail("vertex " + v.at("id").dump() + " has no label");
  }
  std::map<long, bool> fictitious;
  for (const json& f : j["faces"]) {
    long id = f.at("id").get<long>();
    findex.emplace(id, findex.size());
    fictitious[id] = f.at("fictitious").get<bool>();
    if (!fictitious[id] && f.at("payload").empty()) fail("face " + std::to_string(id) + " has no label");
  }
  for (const json& e : j["edges"])
    if (e.at("curve") != "border" && e.at("payload").empty()) fail("edge " + e.at("id").dump() + " has no label");

  struct H {
    long twin, next, source, face;
  };
  std::map<long, H> hs;
  for (const json& h : j["halfedges"])
    hs[h.at("id").get<long>()] = {h.at("twin").get<long>(), h.at("next").get<long>(), h.at("source").get<long>(),
                                  h.at("face").get<long>()};
  std::map<long, int> incoming;
  for (const auto& [id, h] : hs) {
    if (!hs.count(h.twin) || hs[h.twin].twin != id) fail("halfedge " + std::to_string(id) + " has a bad twin");
    if (!hs.count(h.next)) {
      fail("halfedge " + std::to_string(id) + " has a dangling next");
      continue;
    }
    ++incoming[h.next];
    if (hs.count(h.twin) && hs[h.next].source != hs[h.twin].source)
      fail("halfedge " + std::to_string(id) + " does not chain to its next");
    if (!vindex.count(h.source)) fail("halfedge " + std::to_string(id) + " has an unknown source");
    if (!findex.count(h.face)) fail("halfedge " + std::to_string(id) + " has an unknown face");
    if (hs[h.next].face != h.face) fail("cycle through halfedge " + std::to_string(id) + " changes face");
  }
  for (const auto& [id, h] : hs)
    if (incoming[id] != 1) fail("halfedge " + std::to_string(id) + " is not a next of exactly one halfedge");
  if (!r.ok) return r;

  Dsu dsu(vindex.size());
  for (const auto& [id, h] : hs) dsu.unite(vindex[h.source], vindex[hs[h.twin].source]);
  std::size_t components = 0;
  for (std::size_t i = 0; i < vindex.size(); ++i) components += dsu.find(i) == i;
  long euler = static_cast<long>(vindex.size()) - static_cast<long>(j["edges"].size()) +
               static_cast<long>(findex.size());
  if (euler != 1 + static_cast<long>(components))
    fail("Euler characteristic " + std::to_string(euler) + " with " + std::to_string(components) + " components");
  return r;
}

}  // namespace envvor

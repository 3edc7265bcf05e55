#pragma once

// Randomized divide-and-conquer Voronoi diagrams as minimization diagrams.
//
// Sites are referred to by index into the traits object. Every feature of a
// diagram's arrangement carries its label (the sorted indices of the sites
// attaining the minimum, or the maximum in farthest mode) as its payload.

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "envvor/arrangement.hpp"

namespace envvor {

using Label = Payload;

class VoronoiTraits {
 public:
  virtual ~VoronoiTraits() = default;

  virtual std::size_t size() const = 0;
  virtual CurveFamily family() const = 0;
  /// Bisectors are full lines and diagram faces are convex.
  virtual bool affine() const = 0;

  /// Interior-disjoint x-monotone pieces; empty when no bisector exists.
  virtual std::vector<XCurve> construct_bisector(int s1, int s2) const = 0;
  virtual Ordering compare_distance_at_point(int s1, int s2, const Point2& p) const = 0;
  /// Which site dominates the region left of c traversed from its
  /// xy-smaller end (Less: s1). Throws NotABisectorPiece.
  virtual Ordering compare_distance_above(int s1, int s2, const XCurve& c) const;
  /// Used only when construct_bisector is empty.
  virtual Ordering compare_dominance(int s1, int s2) const;
  virtual Point2 construct_point_on_curve(const XCurve& c) const { return c.interior_point(); }
  /// Representative rational point used for sorted partitions.
  virtual Point2 anchor(int s) const = 0;

  /// compare_distance_above for a curve already known to be a piece of the
  /// given bisector.
  Ordering above_on(int s1, int s2, const XCurve& c, const std::vector<XCurve>& bisector) const;
};

/// The same sites with every comparison reversed (maximization diagram).
class ReversedTraits final : public VoronoiTraits {
 public:
  explicit ReversedTraits(const VoronoiTraits& base) : base_(base) {}
  std::size_t size() const override { return base_.size(); }
  CurveFamily family() const override { return base_.family(); }
  bool affine() const override { return false; }
  std::vector<XCurve> construct_bisector(int s1, int s2) const override { return base_.construct_bisector(s1, s2); }
  Ordering compare_distance_at_point(int s1, int s2, const Point2& p) const override {
    return reverse(base_.compare_distance_at_point(s1, s2, p));
  }
  Ordering compare_distance_above(int s1, int s2, const XCurve& c) const override {
    return reverse(base_.compare_distance_above(s1, s2, c));
  }
  Ordering compare_dominance(int s1, int s2) const override { return reverse(base_.compare_dominance(s1, s2)); }
  Point2 anchor(int s) const override { return base_.anchor(s); }

 private:
  const VoronoiTraits& base_;
};

struct LabeledDiagram {
  Arrangement arrangement;
  bool farthest = false;

  /// Label of the feature containing p.
  Label label_at(const Point2& p) const;
};

struct PartitionStrategy {
  enum class Kind { Randomized, LexSorted, SpatialSorted };
  Kind kind = Kind::Randomized;
  std::uint64_t seed = 0x5eed;

  static PartitionStrategy randomized(std::uint64_t seed) { return {Kind::Randomized, seed}; }
  static PartitionStrategy lex_sorted() { return {Kind::LexSorted, 0}; }
  static PartitionStrategy spatial_sorted() { return {Kind::SpatialSorted, 0}; }
};

const char* to_string(PartitionStrategy::Kind kind) noexcept;

struct OverlayStats {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t faces = 0;
  std::size_t crossings = 0;      // edge of one input crossing an edge of the other
  std::size_t first_only = 0;     // vertices of the first input only
  std::size_t second_only = 0;    // vertices of the second input only
};

struct MergeOptions {
  bool three_bisector = true;
  bool simple_zone = true;
  /// Called with every intermediate arrangement (after overlay, after each
  /// bisector insertion, after cleanup).
  std::function<void(const Arrangement&, const char* stage)> audit;
};

struct VoronoiRun {
  /// Overlay statistics of the top-level merge.
  OverlayStats final_overlay;
  /// Crossings summed over every merge.
  std::size_t total_crossings = 0;
  std::size_t merges = 0;
  std::size_t simplified_zones = 0;
  std::size_t general_zones = 0;
};

std::pair<std::vector<int>, std::vector<int>> partition(const std::vector<int>& sites, const VoronoiTraits& traits,
                                                        const PartitionStrategy& strategy, std::mt19937_64& rng);

OverlayStats overlay_stats(const LabeledDiagram& d1, const LabeledDiagram& d2);

/// Diagram of a single site: the whole plane.
LabeledDiagram single_site(int site);

/// `run`, when given, accumulates the zone counters.
LabeledDiagram merge(const LabeledDiagram& d1, const LabeledDiagram& d2, const VoronoiTraits& traits,
                     const MergeOptions& options = {}, OverlayStats* stats = nullptr, VoronoiRun* run = nullptr);

/// Nearest-site diagram of the sites 0..traits.size()-1 (or `sites`).
LabeledDiagram voronoi(const VoronoiTraits& traits, const PartitionStrategy& strategy = {},
                       const MergeOptions& options = {}, VoronoiRun* run = nullptr);
LabeledDiagram voronoi(const std::vector<int>& sites, const VoronoiTraits& traits,
                       const PartitionStrategy& strategy = {}, const MergeOptions& options = {},
                       VoronoiRun* run = nullptr);

LabeledDiagram farthest_voronoi(const VoronoiTraits& traits, const PartitionStrategy& strategy = {},
                                const MergeOptions& options = {}, VoronoiRun* run = nullptr);

/// Deterministic text form of a labeled subdivision, independent of ids.
std::string canonical_serialization(const LabeledDiagram& d);
std::string to_json(const LabeledDiagram& d);
/// Re-checks a diagram written by to_json: halfedge links, one face per
/// cycle, nonempty labels on real features and the Euler formula.
ValidationReport validate_diagram_json(const std::string& text);

/// Brute-force label at p: all sites attaining the minimum (maximum).
Label brute_force_label(const VoronoiTraits& traits, const Point2& p, bool farthest = false);

}  // namespace envvor

#pragma once

// Synthetic site sets.

#include <cstdint>
#include <string>
#include <vector>

#include "envvor/kernel.hpp"

namespace envvor {

enum class DatasetKind { RandomSquare, Grid, OnCircle, Cross, RandomDisks, RandomMobius };

const char* to_string(DatasetKind kind) noexcept;
/// Throws UnknownKind.
DatasetKind parse_dataset_kind(const std::string& name);

/// Distinct integer points in [-range, range]^2.
std::vector<Point2> random_points(std::size_t n, std::uint64_t seed, long range = 1000000);
/// The k x k integer grid with k = ceil(sqrt(n)).
std::vector<Point2> grid_points(std::size_t n);
/// n distinct rational points exactly on the unit circle, roughly evenly spread.
std::vector<Point2> circle_points(std::size_t n);
/// ceil(n/2) points (0, i) followed by floor(n/2) points (n + i, 0).
std::vector<Point2> cross_points(std::size_t n);

std::vector<DistanceFn> generate_sites(DatasetKind kind, std::size_t n, std::uint64_t seed);

}  // namespace envvor

#pragma once

// Test-only reference implementations. None of these share code paths with
// the library routines they check.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "morpho/grid.hpp"

namespace morpho::oracle {

/// Pattern counts by direct enumeration of every window. Codes are packed
/// LSB-first (the opposite of the library) since entropy only depends on the
/// multiset of counts.
std::map<std::uint32_t, std::uint64_t> recount_patterns(const Grid& g);

/// -sum p log2 p over recount_patterns, summed in map order.
double recount_entropy(const Grid& g);

/// Number of 4-connected components of cells equal to `value` (BFS).
std::size_t count_components(const Grid& g, std::uint8_t value);

/// Built/open edge adjacencies inside the grid for the given cells.
std::size_t count_exposed_edges(const Grid& g, const std::vector<std::pair<std::size_t, std::size_t>>& cells);

/// Least-squares box-counting dimension over the given box sides.
double box_counting_dimension(const Grid& g, const std::vector<std::size_t>& sides);

/// Independent seeded generator (SplitMix64 stream) for random test grids.
Grid random_grid(std::size_t width, std::size_t height, double p, std::uint64_t seed);

Grid checkerboard(std::size_t width, std::size_t height);

/// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& tag);

std::string slurp(const std::filesystem::path& path);

}  // namespace morpho::oracle

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "morpho/grid.hpp"

namespace morpho {

struct Cell {
  std::uint32_t row;
  std::uint32_t col;
  friend bool operator==(const Cell&, const Cell&) = default;
};

/// One 4-connected component of built cells.
struct Block {
  std::size_t id;         // scan-order rank of the block's first cell
  std::size_t area;       // member cell count
  std::size_t perimeter;  // built/open edges strictly inside the grid
  std::vector<Cell> cells;
};

/// Area and perimeter only; what permeability needs on large grids.
struct BlockMeasure {
  std::size_t area;
  std::size_t perimeter;
};

/// 4-connected components in row-major scan order of their first cell.
/// Edges on the grid boundary are not perimeter: the raster is a crop.
std::vector<Block> extract_blocks(const Grid& g);

std::vector<BlockMeasure> measure_blocks(const Grid& g);

/// Area of the convex hull of the corner points of every built unit cell.
/// Throws Error(kEmptySettlement) when nothing is built.
double convex_hull_area(const Grid& g);

}  // namespace morpho

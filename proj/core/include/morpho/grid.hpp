#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace morpho {

/// Binary occupancy raster. Cells are stored row-major; 1 marks built form,
/// 0 marks open space.
class Grid {
 public:
  /// All-open grid. Throws Error(kInvalidArgument) if either dimension is 0.
  Grid(std::size_t width, std::size_t height);

  /// Takes ownership of `cells`. Throws if the size does not match or any
  /// value is outside {0, 1}.
  Grid(std::size_t width, std::size_t height, std::vector<std::uint8_t> cells);

  /// Builds a grid from nested rows; convenient in tests.
  static Grid from_rows(const std::vector<std::vector<int>>& rows);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return cells_.size(); }

  bool built(std::size_t row, std::size_t col) const noexcept {
    return cells_[row * width_ + col] != 0;
  }
  std::uint8_t operator()(std::size_t row, std::size_t col) const noexcept {
    return cells_[row * width_ + col];
  }
  void set(std::size_t row, std::size_t col, bool built) noexcept {
    cells_[row * width_ + col] = built ? 1 : 0;
  }

  std::span<const std::uint8_t> cells() const noexcept { return cells_; }

  std::size_t built_count() const noexcept;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<std::uint8_t> cells_;
};

/// Majority-vote resampling. Each target cell covers an exact (possibly
/// fractional) rectangle of source cells and is built iff built cells cover
/// at least half of it. Upsampling by an integer factor replicates cells.
Grid resample(const Grid& g, std::size_t target_width, std::size_t target_height);

/// 90 degree clockwise rotation.
Grid rotate90(const Grid& g);

}  // namespace morpho

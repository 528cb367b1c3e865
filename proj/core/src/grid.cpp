#include "morpho/grid.hpp"

#include <algorithm>
#include <string>

#include "morpho/error.hpp"

namespace morpho {

Grid::Grid(std::size_t width, std::size_t height)
    : width_(width), height_(height) {
  if (width == 0 || height == 0) {
    throw Error(ErrorCode::kInvalidArgument, "grid dimensions must be at least 1x1");
  }
  cells_.assign(width * height, 0);
}

Grid::Grid(std::size_t width, std::size_t height, std::vector<std::uint8_t> cells)
    : width_(width), height_(height), cells_(std::move(cells)) {
  if (width == 0 || height == 0) {
    throw Error(ErrorCode::kInvalidArgument, "grid dimensions must be at least 1x1");
  }
  if (cells_.size() != width * height) {
    throw Error(ErrorCode::kInvalidArgument,
                "cell count " + std::to_string(cells_.size()) + " does not match " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
  if (std::any_of(cells_.begin(), cells_.end(), [](std::uint8_t v) { return v > 1; })) {
    throw Error(ErrorCode::kInvalidArgument, "cell values must be 0 or 1");
  }
}

Grid Grid::from_rows(const std::vector<std::vector<int>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw Error(ErrorCode::kInvalidArgument, "grid dimensions must be at least 1x1");
  }
  const std::size_t width = rows.front().size();
  std::vector<std::uint8_t> cells;
  cells.reserve(width * rows.size());
  for (const auto& row : rows) {
    if (row.size() != width) {
      throw Error(ErrorCode::kInconsistentRows, "rows differ in length");
    }
    for (int v : row) {
      if (v != 0 && v != 1) throw Error(ErrorCode::kInvalidArgument, "cell values must be 0 or 1");
      cells.push_back(static_cast<std::uint8_t>(v));
    }
  }
  return Grid(width, rows.size(), std::move(cells));
}

std::size_t Grid::built_count() const noexcept {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

namespace {

// One overlap run along an axis: source index and overlap length, measured in
// units of 1/target_extent of a source cell.
struct Span1D {
  std::size_t source;
  std::uint64_t length;
};

// For every target index, the source cells its footprint overlaps. Target cell
// t spans [t*S, (t+1)*S) and source cell s spans [s*T, (s+1)*T) in the common
// scaled coordinate, so all overlaps are exact integers.
std::vector<std::vector<Span1D>> axis_overlaps(std::size_t source_extent, std::size_t target_extent) {
  std::vector<std::vector<Span1D>> out(target_extent);
  const std::uint64_t s_ext = source_extent;
  const std::uint64_t t_ext = target_extent;
  for (std::uint64_t t = 0; t < t_ext; ++t) {
    const std::uint64_t lo = t * s_ext;
    const std::uint64_t hi = (t + 1) * s_ext;
    for (std::uint64_t s = lo / t_ext; s < s_ext && s * t_ext < hi; ++s) {
      const std::uint64_t a = std::max(lo, s * t_ext);
      const std::uint64_t b = std::min(hi, (s + 1) * t_ext);
      if (b > a) out[t].push_back({static_cast<std::size_t>(s), b - a});
    }
  }
  return out;
}

}  // namespace

Grid resample(const Grid& g, std::size_t target_width, std::size_t target_height) {
  if (target_width == 0 || target_height == 0) {
    throw Error(ErrorCode::kInvalidArgument, "resample targets must be at least 1");
  }
  if (target_width == g.width() && target_height == g.height()) return g;

  const auto rows = axis_overlaps(g.height(), target_height);
  const auto cols = axis_overlaps(g.width(), target_width);
  // Each target cell covers height*width scaled units in total.
  const std::uint64_t full = static_cast<std::uint64_t>(g.height()) * g.width();

  std::vector<std::uint8_t> out(target_width * target_height, 0);
  for (std::size_t ty = 0; ty < target_height; ++ty) {
    for (std::size_t tx = 0; tx < target_width; ++tx) {
      std::uint64_t built = 0;
      for (const auto& ry : rows[ty]) {
        for (const auto& rx : cols[tx]) {
          if (g.built(ry.source, rx.source)) built += ry.length * rx.length;
        }
      }
      out[ty * target_width + tx] = (2 * built >= full) ? 1 : 0;
    }
  }
  return Grid(target_width, target_height, std::move(out));
}

Grid rotate90(const Grid& g) {
  const std::size_t w = g.width();
  const std::size_t h = g.height();
  // Clockwise: new(r, c) = old(h - 1 - c, r); new dimensions are h x w.
  std::vector<std::uint8_t> out(w * h);
  for (std::size_t r = 0; r < w; ++r) {
    for (std::size_t c = 0; c < h; ++c) {
      out[r * h + c] = g(h - 1 - c, r);
    }
  }
  return Grid(h, w, std::move(out));
}

}  // namespace morpho

#include "morpho/blocks.hpp"

#include <algorithm>
#include <limits>

#include "morpho/error.hpp"

namespace morpho {
namespace {

constexpr std::uint32_t kUnlabeled = std::numeric_limits<std::uint32_t>::max();

std::size_t open_neighbours(const Grid& g, std::size_t r, std::size_t c) {
  std::size_t n = 0;
  if (r > 0 && !g.built(r - 1, c)) ++n;
  if (r + 1 < g.height() && !g.built(r + 1, c)) ++n;
  if (c > 0 && !g.built(r, c - 1)) ++n;
  if (c + 1 < g.width() && !g.built(r, c + 1)) ++n;
  return n;
}

// Flood-fills every component; `visit(block_index, row, col)` sees each built
// cell exactly once, grouped by component.
template <typename Visit, typename Begin>
void label_components(const Grid& g, Begin&& begin_block, Visit&& visit) {
  const std::size_t w = g.width();
  const std::size_t h = g.height();
  std::vector<std::uint32_t> label(w * h, kUnlabeled);
  std::vector<std::size_t> stack;
  std::uint32_t next = 0;
  for (std::size_t start = 0; start < w * h; ++start) {
    if (!g.cells()[start] || label[start] != kUnlabeled) continue;
    begin_block();
    label[start] = next;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t idx = stack.back();
      stack.pop_back();
      const std::size_t r = idx / w;
      const std::size_t c = idx % w;
      visit(r, c);
      auto push = [&](std::size_t n) {
        if (g.cells()[n] && label[n] == kUnlabeled) {
          label[n] = next;
          stack.push_back(n);
        }
      };
      if (r > 0) push(idx - w);
      if (r + 1 < h) push(idx + w);
      if (c > 0) push(idx - 1);
      if (c + 1 < w) push(idx + 1);
    }
    ++next;
  }
}

}  // namespace

std::vector<Block> extract_blocks(const Grid& g) {
  std::vector<Block> blocks;
  label_components(
      g, [&] { blocks.push_back(Block{blocks.size(), 0, 0, {}}); },
      [&](std::size_t r, std::size_t c) {
        Block& b = blocks.back();
        ++b.area;
        b.perimeter += open_neighbours(g, r, c);
        b.cells.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c)});
      });
  for (auto& b : blocks) {
    std::sort(b.cells.begin(), b.cells.end(), [](const Cell& a, const Cell& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
  }
  return blocks;
}

std::vector<BlockMeasure> measure_blocks(const Grid& g) {
  std::vector<BlockMeasure> blocks;
  label_components(
      g, [&] { blocks.push_back({0, 0}); },
      [&](std::size_t r, std::size_t c) {
        ++blocks.back().area;
        blocks.back().perimeter += open_neighbours(g, r, c);
      });
  return blocks;
}

namespace {

struct Point {
  std::int64_t x;
  std::int64_t y;
  auto operator<=>(const Point&) const = default;
};

std::int64_t cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew's monotone chain; returns the hull counter-clockwise without
// repeating the first point. Collinear points are dropped.
std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

double convex_hull_area(const Grid& g) {
  // Only the extreme built cells of each row can contribute hull vertices.
  std::vector<Point> corners;
  for (std::size_t r = 0; r < g.height(); ++r) {
    std::size_t first = g.width();
    std::size_t last = 0;
    for (std::size_t c = 0; c < g.width(); ++c) {
      if (g.built(r, c)) {
        first = std::min(first, c);
        last = c;
      }
    }
    if (first == g.width()) continue;
    const auto y0 = static_cast<std::int64_t>(r);
    const auto xl = static_cast<std::int64_t>(first);
    const auto xr = static_cast<std::int64_t>(last) + 1;
    corners.push_back({xl, y0});
    corners.push_back({xl, y0 + 1});
    corners.push_back({xr, y0});
    corners.push_back({xr, y0 + 1});
  }
  if (corners.empty()) throw Error(ErrorCode::kEmptySettlement, "empty settlement");

  const auto hull = convex_hull(std::move(corners));
  std::int64_t twice_area = 0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point& a = hull[i];
    const Point& b = hull[(i + 1) % hull.size()];
    twice_area += a.x * b.y - b.x * a.y;
  }
  return static_cast<double>(twice_area < 0 ? -twice_area : twice_area) / 2.0;
}

}  // namespace morpho

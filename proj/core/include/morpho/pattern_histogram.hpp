#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "morpho/grid.hpp"

namespace morpho {

/// Side of the square scanning window; 16 cells per window.
inline constexpr std::size_t kWindowSide = 4;
inline constexpr std::uint32_t kPatternSpace = 1u << 16;
inline constexpr std::uint16_t kAllOpen = 0x0000;
inline constexpr std::uint16_t kAllBuilt = 0xFFFF;
/// Number of admissible (non-homogeneous) patterns.
inline constexpr std::size_t kAdmissiblePatterns = kPatternSpace - 2;

/// Packs the 4x4 window whose top-left cell is (row, col). The window is
/// read row-major; the first cell lands in bit 15 and the last in bit 0.
std::uint16_t window_code(const Grid& g, std::size_t row, std::size_t col);

inline constexpr bool is_homogeneous(std::uint16_t code) {
  return code == kAllOpen || code == kAllBuilt;
}

/// Frequencies of non-homogeneous 4x4 patterns over every window position.
class PatternHistogram {
 public:
  PatternHistogram();

  std::uint64_t count(std::uint16_t code) const { return (*counts_)[code]; }
  std::uint64_t total() const noexcept { return total_; }
  /// Windows that were skipped because they were all-open or all-built.
  std::uint64_t homogeneous() const noexcept { return homogeneous_; }
  std::size_t distinct() const noexcept;

  /// Non-zero (code, count) pairs in ascending code order.
  std::vector<std::pair<std::uint16_t, std::uint64_t>> entries() const;

  /// Records one window; homogeneous codes only bump the skip counter.
  void add(std::uint16_t code, std::uint64_t n = 1);
  /// Removes one previously recorded window.
  void remove(std::uint16_t code, std::uint64_t n = 1);
  void merge(const PatternHistogram& other);

  friend bool operator==(const PatternHistogram& a, const PatternHistogram& b);

 private:
  std::unique_ptr<std::array<std::uint64_t, kPatternSpace>> counts_;
  std::uint64_t total_ = 0;
  std::uint64_t homogeneous_ = 0;

 public:
  PatternHistogram(const PatternHistogram& other);
  PatternHistogram& operator=(const PatternHistogram& other);
  PatternHistogram(PatternHistogram&&) noexcept = default;
  PatternHistogram& operator=(PatternHistogram&&) noexcept = default;
};

struct ScanOptions {
  /// Window rows are split into contiguous bands, one private histogram per
  /// worker, merged by integer addition. The result never depends on this.
  unsigned workers = 1;
};

/// Scans every 4x4 window fully inside the grid at unit stride.
/// Throws Error(kGridTooSmall) if the grid is smaller than 4x4.
PatternHistogram window_histogram(const Grid& g, const ScanOptions& options = {});

/// Shannon entropy in bits of the histogram's pattern distribution, with
/// probabilities taken over non-homogeneous windows. Empty histogram -> 0.
double shannon_entropy(const PatternHistogram& h);

}  // namespace morpho

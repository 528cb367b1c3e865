#pragma once

#include <cstddef>
#include <vector>

#include "morpho/blocks.hpp"
#include "morpho/generators.hpp"
#include "morpho/grid.hpp"
#include "morpho/pattern_histogram.hpp"

namespace morpho {

/// Maintains a grid's 4x4 pattern histogram and entropy under cell swaps.
/// A swap touches at most 32 windows, so its entropy change costs O(1)
/// instead of a full rescan.
class EntropyTracker {
 public:
  /// Throws Error(kGridTooSmall) below 4x4.
  explicit EntropyTracker(Grid grid);

  const Grid& grid() const noexcept { return grid_; }
  const PatternHistogram& histogram() const noexcept { return hist_; }
  double entropy() const noexcept { return entropy_; }

  /// Entropy after exchanging the values of cells a and b; state unchanged.
  double entropy_after_swap(Cell a, Cell b);

  /// Commits the swap and returns the new entropy.
  double apply_swap(Cell a, Cell b);

 private:
  struct Change {
    std::uint16_t before;
    std::uint16_t after;
  };
  void collect_changes(Cell a, Cell b);
  double entropy_with_changes(bool commit);

  Grid grid_;
  PatternHistogram hist_;
  long double weighted_log_sum_ = 0;  // sum over codes of n * log2(n)
  double entropy_ = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> windows_;
  std::vector<Change> changes_;
};

struct AnnealStep {
  std::size_t step;
  double entropy;  // entropy after the step's decision
  bool accepted;
  friend bool operator==(const AnnealStep&, const AnnealStep&) = default;
};

using AnnealTrace = std::vector<AnnealStep>;

struct AnnealResult {
  Grid grid;
  AnnealTrace trace;
  double initial_entropy = 0.0;
};

/// Swap-move entropy annealing. Each step swaps a uniformly chosen built cell
/// with a uniformly chosen open cell. Greedy mode accepts iff the entropy
/// does not rise; metropolis mode accepts with probability
/// min(1, exp(-dH / T)), T = initial_temperature * cooling^step.
/// Built-cell count never changes. Throws Error(kNoSwapPossible) for a
/// homogeneous start grid.
AnnealResult anneal_entropy(const Grid& start, const GenSpec& spec);

/// CSV rendering of a trace: header "step,H,accepted", H with 17 significant
/// digits, accepted as 0/1.
std::string trace_csv(const AnnealTrace& trace);

}  // namespace morpho

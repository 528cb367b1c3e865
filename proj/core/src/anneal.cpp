#include "morpho/anneal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "morpho/error.hpp"
#include "morpho/rng.hpp"

namespace morpho {
namespace {

long double xlog2x(std::uint64_t n) {
  return n == 0 ? 0.0L : static_cast<long double>(n) * std::log2(static_cast<long double>(n));
}

// H = log2(N) - (1/N) * sum n log2 n, the same quantity as -sum p log2 p.
double entropy_from(long double weighted_log_sum, std::uint64_t total) {
  if (total == 0) return 0.0;
  const long double n = static_cast<long double>(total);
  const long double h = std::log2(n) - weighted_log_sum / n;
  return static_cast<double>(std::max(h, 0.0L));
}

std::size_t window_lo(std::size_t pos) { return pos >= kWindowSide - 1 ? pos - (kWindowSide - 1) : 0; }

}  // namespace

EntropyTracker::EntropyTracker(Grid grid) : grid_(std::move(grid)), hist_(window_histogram(grid_)) {
  for (const auto& [code, n] : hist_.entries()) weighted_log_sum_ += xlog2x(n);
  entropy_ = entropy_from(weighted_log_sum_, hist_.total());
  windows_.reserve(2 * kWindowSide * kWindowSide);
  changes_.reserve(2 * kWindowSide * kWindowSide);
}

void EntropyTracker::collect_changes(Cell a, Cell b) {
  windows_.clear();
  const std::size_t max_r = grid_.height() - kWindowSide;
  const std::size_t max_c = grid_.width() - kWindowSide;
  for (const Cell& cell : {a, b}) {
    for (std::size_t r = window_lo(cell.row); r <= std::min<std::size_t>(cell.row, max_r); ++r) {
      for (std::size_t c = window_lo(cell.col); c <= std::min<std::size_t>(cell.col, max_c); ++c) {
        windows_.emplace_back(r, c);
      }
    }
  }
  std::sort(windows_.begin(), windows_.end());
  windows_.erase(std::unique(windows_.begin(), windows_.end()), windows_.end());

  changes_.clear();
  for (const auto& [r, c] : windows_) changes_.push_back({window_code(grid_, r, c), 0});
  const bool va = grid_.built(a.row, a.col);
  const bool vb = grid_.built(b.row, b.col);
  grid_.set(a.row, a.col, vb);
  grid_.set(b.row, b.col, va);
  for (std::size_t i = 0; i < windows_.size(); ++i) {
    changes_[i].after = window_code(grid_, windows_[i].first, windows_[i].second);
  }
  grid_.set(a.row, a.col, va);
  grid_.set(b.row, b.col, vb);
}

double EntropyTracker::entropy_with_changes(bool commit) {
  // Net count change per code touched by the swap.
  std::map<std::uint16_t, long> delta;
  for (const auto& ch : changes_) {
    if (ch.before == ch.after) continue;
    --delta[ch.before];
    ++delta[ch.after];
  }
  long double sum = weighted_log_sum_;
  long total = static_cast<long>(hist_.total());
  for (const auto& [code, d] : delta) {
    if (d == 0 || is_homogeneous(code)) continue;
    const std::uint64_t before = hist_.count(code);
    const auto after = static_cast<std::uint64_t>(static_cast<long>(before) + d);
    sum += xlog2x(after) - xlog2x(before);
    total += d;
  }
  const double h = entropy_from(sum, static_cast<std::uint64_t>(total));
  if (commit) {
    for (const auto& [code, d] : delta) {
      if (d > 0) hist_.add(code, static_cast<std::uint64_t>(d));
      if (d < 0) hist_.remove(code, static_cast<std::uint64_t>(-d));
    }
    weighted_log_sum_ = sum;
    entropy_ = h;
  }
  return h;
}

double EntropyTracker::entropy_after_swap(Cell a, Cell b) {
  collect_changes(a, b);
  return entropy_with_changes(false);
}

double EntropyTracker::apply_swap(Cell a, Cell b) {
  collect_changes(a, b);
  const double h = entropy_with_changes(true);
  const bool va = grid_.built(a.row, a.col);
  grid_.set(a.row, a.col, grid_.built(b.row, b.col));
  grid_.set(b.row, b.col, va);
  return h;
}

AnnealResult anneal_entropy(const Grid& start, const GenSpec& spec) {
  if (spec.kind != GenKind::kAnneal) {
    throw Error(ErrorCode::kInvalidArgument, "spec kind must be anneal");
  }
  if (!(spec.cooling > 0.0 && spec.cooling <= 1.0) || !(spec.initial_temperature >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "temperature must be >= 0 and cooling in (0, 1]");
  }
  const std::size_t built = start.built_count();
  if (built == 0 || built == start.size()) {
    throw Error(ErrorCode::kNoSwapPossible, "no swap possible");
  }

  // Cell lists; a swap exchanges one entry between them in O(1).
  std::vector<Cell> built_cells;
  std::vector<Cell> open_cells;
  built_cells.reserve(built);
  open_cells.reserve(start.size() - built);
  for (std::uint32_t r = 0; r < start.height(); ++r) {
    for (std::uint32_t c = 0; c < start.width(); ++c) {
      (start.built(r, c) ? built_cells : open_cells).push_back({r, c});
    }
  }

  EntropyTracker tracker(start);
  AnnealResult result{start, {}, tracker.entropy()};
  result.trace.reserve(spec.steps);
  Rng rng(spec.seed);
  double temperature = spec.initial_temperature;
  const bool metropolis = spec.mode == AnnealMode::kMetropolis;

  for (std::size_t step = 0; step < spec.steps; ++step) {
    const auto bi = static_cast<std::size_t>(rng.below(built_cells.size()));
    const auto oi = static_cast<std::size_t>(rng.below(open_cells.size()));
    const Cell a = built_cells[bi];
    const Cell b = open_cells[oi];
    const double current = tracker.entropy();
    const double proposed = tracker.entropy_after_swap(a, b);
    const double dh = proposed - current;

    bool accept = dh <= 0.0;
    if (!accept && metropolis && temperature > 0.0) {
      accept = rng.uniform() < std::exp(-dh / temperature);
    }
    if (accept) {
      tracker.apply_swap(a, b);
      built_cells[bi] = b;
      open_cells[oi] = a;
    }
    result.trace.push_back({step, tracker.entropy(), accept});
    temperature *= spec.cooling;
  }
  result.grid = tracker.grid();
  return result;
}

std::string trace_csv(const AnnealTrace& trace) {
  std::string out = "step,H,accepted\n";
  char buf[64];
  for (const auto& s : trace) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%d\n", s.step, s.entropy, s.accepted ? 1 : 0);
    out += buf;
  }
  return out;
}

}  // namespace morpho

#include "morpho/pattern_histogram.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

#include "morpho/error.hpp"

namespace morpho {

std::uint16_t window_code(const Grid& g, std::size_t row, std::size_t col) {
  std::uint16_t code = 0;
  for (std::size_t r = 0; r < kWindowSide; ++r) {
    for (std::size_t c = 0; c < kWindowSide; ++c) {
      code = static_cast<std::uint16_t>((code << 1) | g(row + r, col + c));
    }
  }
  return code;
}

PatternHistogram::PatternHistogram()
    : counts_(std::make_unique<std::array<std::uint64_t, kPatternSpace>>()) {
  counts_->fill(0);
}

PatternHistogram::PatternHistogram(const PatternHistogram& other)
    : counts_(std::make_unique<std::array<std::uint64_t, kPatternSpace>>(*other.counts_)),
      total_(other.total_),
      homogeneous_(other.homogeneous_) {}

PatternHistogram& PatternHistogram::operator=(const PatternHistogram& other) {
  if (this != &other) {
    counts_ = std::make_unique<std::array<std::uint64_t, kPatternSpace>>(*other.counts_);
    total_ = other.total_;
    homogeneous_ = other.homogeneous_;
  }
  return *this;
}

std::size_t PatternHistogram::distinct() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(counts_->begin(), counts_->end(), [](std::uint64_t n) { return n != 0; }));
}

std::vector<std::pair<std::uint16_t, std::uint64_t>> PatternHistogram::entries() const {
  std::vector<std::pair<std::uint16_t, std::uint64_t>> out;
  for (std::uint32_t code = 0; code < kPatternSpace; ++code) {
    if ((*counts_)[code]) out.emplace_back(static_cast<std::uint16_t>(code), (*counts_)[code]);
  }
  return out;
}

void PatternHistogram::add(std::uint16_t code, std::uint64_t n) {
  if (is_homogeneous(code)) {
    homogeneous_ += n;
    return;
  }
  (*counts_)[code] += n;
  total_ += n;
}

void PatternHistogram::remove(std::uint16_t code, std::uint64_t n) {
  if (is_homogeneous(code)) {
    homogeneous_ -= n;
    return;
  }
  (*counts_)[code] -= n;
  total_ -= n;
}

void PatternHistogram::merge(const PatternHistogram& other) {
  for (std::uint32_t code = 0; code < kPatternSpace; ++code) (*counts_)[code] += (*other.counts_)[code];
  total_ += other.total_;
  homogeneous_ += other.homogeneous_;
}

bool operator==(const PatternHistogram& a, const PatternHistogram& b) {
  return a.total_ == b.total_ && a.homogeneous_ == b.homogeneous_ && *a.counts_ == *b.counts_;
}

namespace {

// Scans window rows [row_begin, row_end). Each grid row is reduced once to
// 4-bit horizontal nibbles; a window code stacks four consecutive nibbles.
void scan_band(const Grid& g, std::size_t row_begin, std::size_t row_end, PatternHistogram& out) {
  const std::size_t w = g.width();
  const std::size_t nx = w - kWindowSide + 1;
  const auto cells = g.cells();
  std::array<std::vector<std::uint8_t>, kWindowSide> ring;
  for (auto& r : ring) r.resize(nx);

  auto fill_nibbles = [&](std::size_t row, std::vector<std::uint8_t>& dst) {
    const std::uint8_t* p = cells.data() + row * w;
    unsigned nib = (p[0] << 2) | (p[1] << 1) | p[2];
    for (std::size_t x = 0; x < nx; ++x) {
      nib = ((nib << 1) | p[x + 3]) & 0xF;
      dst[x] = static_cast<std::uint8_t>(nib);
    }
  };

  for (std::size_t k = 0; k + 1 < kWindowSide; ++k) fill_nibbles(row_begin + k, ring[k]);
  std::vector<std::uint64_t> local(kPatternSpace, 0);
  for (std::size_t y = row_begin; y < row_end; ++y) {
    fill_nibbles(y + kWindowSide - 1, ring[(y - row_begin + kWindowSide - 1) % kWindowSide]);
    const auto& r0 = ring[(y - row_begin) % kWindowSide];
    const auto& r1 = ring[(y - row_begin + 1) % kWindowSide];
    const auto& r2 = ring[(y - row_begin + 2) % kWindowSide];
    const auto& r3 = ring[(y - row_begin + 3) % kWindowSide];
    for (std::size_t x = 0; x < nx; ++x) {
      const unsigned code = (unsigned{r0[x]} << 12) | (unsigned{r1[x]} << 8) | (unsigned{r2[x]} << 4) | r3[x];
      ++local[code];
    }
  }
  for (std::uint32_t code = 0; code < kPatternSpace; ++code) {
    if (local[code]) out.add(static_cast<std::uint16_t>(code), local[code]);
  }
}

}  // namespace

PatternHistogram window_histogram(const Grid& g, const ScanOptions& options) {
  if (g.width() < kWindowSide || g.height() < kWindowSide) {
    throw Error(ErrorCode::kGridTooSmall, "grid too small for n=16 windows");
  }
  const std::size_t rows = g.height() - kWindowSide + 1;
  const std::size_t workers = std::clamp<std::size_t>(options.workers, 1, rows);

  if (workers == 1) {
    PatternHistogram h;
    scan_band(g, 0, rows, h);
    return h;
  }

  std::vector<PatternHistogram> partial(workers);
  std::vector<std::jthread> threads;
  threads.reserve(workers);
  for (std::size_t i = 0; i < workers; ++i) {
    const std::size_t begin = rows * i / workers;
    const std::size_t end = rows * (i + 1) / workers;
    threads.emplace_back([&g, &partial, i, begin, end] { scan_band(g, begin, end, partial[i]); });
  }
  threads.clear();  // joins

  PatternHistogram h;
  for (const auto& p : partial) h.merge(p);
  return h;
}

double shannon_entropy(const PatternHistogram& h) {
  if (h.total() == 0) return 0.0;
  std::vector<std::uint64_t> counts;
  counts.reserve(4096);
  for (const auto& [code, n] : h.entries()) counts.push_back(n);
  std::sort(counts.begin(), counts.end(), std::greater<>());

  // Neumaier-compensated sum of -p log2 p, largest terms first.
  const double total = static_cast<double>(h.total());
  double sum = 0.0;
  double comp = 0.0;
  for (std::uint64_t n : counts) {
    const double p = static_cast<double>(n) / total;
    const double term = -p * std::log2(p);
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

}  // namespace morpho

#include "morpho/generators.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <vector>

#include "morpho/anneal.hpp"
#include "morpho/error.hpp"
#include "morpho/pattern_histogram.hpp"
#include "morpho/rng.hpp"

namespace morpho {

std::string_view to_string(GenKind kind) {
  switch (kind) {
    case GenKind::kOrdered: return "ordered";
    case GenKind::kRandom: return "random";
    case GenKind::kDispersed: return "dispersed";
    case GenKind::kDla: return "dla";
    case GenKind::kRrp: return "rrp";
    case GenKind::kAnneal: return "anneal";
  }
  return "unknown";
}

std::string_view to_string(AnnealMode mode) {
  return mode == AnnealMode::kGreedy ? "greedy" : "metropolis";
}

GenKind parse_gen_kind(std::string_view text) {
  for (GenKind k : {GenKind::kOrdered, GenKind::kRandom, GenKind::kDispersed, GenKind::kDla, GenKind::kRrp,
                    GenKind::kAnneal}) {
    if (to_string(k) == text) return k;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown generator kind '" + std::string(text) + "'");
}

AnnealMode parse_anneal_mode(std::string_view text) {
  if (text == "greedy") return AnnealMode::kGreedy;
  if (text == "metropolis") return AnnealMode::kMetropolis;
  throw Error(ErrorCode::kInvalidArgument, "unknown anneal mode '" + std::string(text) + "'");
}

void GenSpec::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::kInvalidArgument, msg); };
  if (width < kWindowSide || height < kWindowSide) fail("generated grids must be at least 4x4");
  const std::size_t cells = width * height;
  switch (kind) {
    case GenKind::kRandom:
      if (!(p >= 0.0 && p <= 1.0)) fail("p must lie in [0, 1]");
      break;
    case GenKind::kOrdered:
      if (block_size < 1 || street_width < 1) fail("block and street widths must be at least 1");
      if (block_size + street_width > std::min(width, height)) {
        fail("block_size + street_width exceeds the grid's smaller side");
      }
      break;
    case GenKind::kDispersed:
      if (spacing < 2) fail("spacing must be at least 2 so cells stay isolated");
      break;
    case GenKind::kDla:
      if (particles < 1) fail("particles must be at least 1");
      if (particles > cells) fail("particles exceed the number of cells");
      break;
    case GenKind::kRrp:
      if (cells_to_place < 1) fail("cells_to_place must be at least 1");
      if (cells_to_place > cells - 1) fail("cells_to_place must leave at least one open cell");
      break;
    case GenKind::kAnneal:
      if (!(p >= 0.0 && p <= 1.0)) fail("p must lie in [0, 1]");
      if (!(initial_temperature >= 0.0)) fail("initial_temperature must be non-negative");
      if (!(cooling > 0.0 && cooling <= 1.0)) fail("cooling must lie in (0, 1]");
      break;
  }
}

std::string GenSpec::describe() const {
  std::ostringstream out;
  out.precision(17);
  out << "kind=" << to_string(kind) << ";width=" << width << ";height=" << height << ";seed=" << seed;
  switch (kind) {
    case GenKind::kRandom: out << ";p=" << p; break;
    case GenKind::kOrdered: out << ";block=" << block_size << ";street=" << street_width; break;
    case GenKind::kDispersed: out << ";spacing=" << spacing; break;
    case GenKind::kDla: out << ";particles=" << particles; break;
    case GenKind::kRrp: out << ";cells=" << cells_to_place; break;
    case GenKind::kAnneal:
      out << ";p=" << p << ";steps=" << steps << ";mode=" << to_string(mode);
      if (mode == AnnealMode::kMetropolis) out << ";t0=" << initial_temperature << ";cooling=" << cooling;
      break;
  }
  return out.str();
}

std::string GenSpec::digest() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : describe()) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

void require_kind(const GenSpec& spec, GenKind kind) {
  if (spec.kind != kind) {
    throw Error(ErrorCode::kInvalidArgument, "spec kind is " + std::string(to_string(spec.kind)) +
                                                 ", expected " + std::string(to_string(kind)));
  }
  spec.validate();
}

}  // namespace

Grid gen_random(const GenSpec& spec) {
  if (spec.kind != GenKind::kAnneal) require_kind(spec, GenKind::kRandom);
  Rng rng(spec.seed);
  std::vector<std::uint8_t> cells(spec.width * spec.height);
  for (auto& c : cells) c = rng.bernoulli(spec.p) ? 1 : 0;
  return Grid(spec.width, spec.height, std::move(cells));
}

Grid gen_ordered(const GenSpec& spec) {
  require_kind(spec, GenKind::kOrdered);
  Grid g(spec.width, spec.height);
  const std::size_t b = spec.block_size;
  const std::size_t period = b + spec.street_width;
  const bool chessboard = b == spec.street_width;
  for (std::size_t r = 0; r < g.height(); ++r) {
    for (std::size_t c = 0; c < g.width(); ++c) {
      const bool on = chessboard ? ((r / b + c / b) % 2 == 0) : (r % period < b && c % period < b);
      g.set(r, c, on);
    }
  }
  return g;
}

Grid gen_dispersed(const GenSpec& spec) {
  require_kind(spec, GenKind::kDispersed);
  Grid g(spec.width, spec.height);
  for (std::size_t r = 0; r < g.height(); r += spec.spacing) {
    for (std::size_t c = 0; c < g.width(); c += spec.spacing) g.set(r, c, true);
  }
  return g;
}

namespace {

class DlaWalk {
 public:
  DlaWalk(const GenSpec& spec)
      : grid_(spec.width, spec.height),
        rng_(spec.seed),
        cy_(static_cast<long>(spec.height / 2)),
        cx_(static_cast<long>(spec.width / 2)) {
    grid_.set(static_cast<std::size_t>(cy_), static_cast<std::size_t>(cx_), true);
    // Largest radius whose circle (plus one cell) stays inside the grid.
    const long room = std::min({cy_, cx_, static_cast<long>(spec.height) - 1 - cy_,
                                static_cast<long>(spec.width) - 1 - cx_});
    max_launch_ = static_cast<double>(room) - 1.0;
  }

  DlaResult run(std::size_t particles) {
    std::size_t stuck = 1;
    bool boundary = false;
    while (stuck < particles) {
      const double launch = cluster_radius_ + 5.0;
      if (launch > max_launch_) {
        boundary = true;
        break;
      }
      walk_one(launch);
      ++stuck;
    }
    return DlaResult{std::move(grid_), stuck, boundary};
  }

 private:
  bool inside(long y, long x) const {
    return y >= 0 && x >= 0 && y < static_cast<long>(grid_.height()) && x < static_cast<long>(grid_.width());
  }

  bool touches_cluster(long y, long x) const {
    auto b = [&](long yy, long xx) {
      return inside(yy, xx) && grid_.built(static_cast<std::size_t>(yy), static_cast<std::size_t>(xx));
    };
    return b(y - 1, x) || b(y + 1, x) || b(y, x - 1) || b(y, x + 1);
  }

  void place_on_circle(double cy, double cx, double radius, long& y, long& x) {
    const double theta = 2.0 * std::numbers::pi * rng_.uniform();
    y = std::lround(cy + radius * std::sin(theta));
    x = std::lround(cx + radius * std::cos(theta));
  }

  void walk_one(double launch) {
    const double kill = 2.0 * launch;
    long y = 0;
    long x = 0;
    place_on_circle(static_cast<double>(cy_), static_cast<double>(cx_), launch, y, x);
    for (;;) {
      if (!inside(y, x)) {
        place_on_circle(static_cast<double>(cy_), static_cast<double>(cx_), launch, y, x);
        continue;
      }
      if (touches_cluster(y, x) && !grid_.built(static_cast<std::size_t>(y), static_cast<std::size_t>(x))) {
        grid_.set(static_cast<std::size_t>(y), static_cast<std::size_t>(x), true);
        const double d = std::hypot(static_cast<double>(y - cy_), static_cast<double>(x - cx_));
        cluster_radius_ = std::max(cluster_radius_, d);
        return;
      }
      const double d = std::hypot(static_cast<double>(y - cy_), static_cast<double>(x - cx_));
      if (d > kill) {
        place_on_circle(static_cast<double>(cy_), static_cast<double>(cx_), launch, y, x);
        continue;
      }
      // Far from every cluster cell: jump to a uniform point on a circle that
      // cannot reach the cluster, the walk's first-passage distribution.
      const double gap = d - cluster_radius_ - 3.0;
      if (gap >= 4.0) {
        place_on_circle(static_cast<double>(y), static_cast<double>(x), gap, y, x);
        continue;
      }
      switch (rng_.below(4)) {
        case 0: --y; break;
        case 1: ++y; break;
        case 2: --x; break;
        default: ++x; break;
      }
    }
  }

  Grid grid_;
  Rng rng_;
  long cy_;
  long cx_;
  double cluster_radius_ = 0.0;
  double max_launch_ = 0.0;
};

}  // namespace

DlaResult gen_dla(const GenSpec& spec) {
  require_kind(spec, GenKind::kDla);
  return DlaWalk(spec).run(spec.particles);
}

namespace {

class RrpGrowth {
 public:
  explicit RrpGrowth(const GenSpec& spec)
      : grid_(spec.width, spec.height),
        rng_(spec.seed),
        slot_(spec.width * spec.height, kNone),
        open_count_(spec.width * spec.height) {}

  RrpResult run(std::size_t budget) {
    const std::size_t w = grid_.width();
    const std::size_t seed = (grid_.height() / 2) * w + grid_.width() / 2;
    RrpResult result{Grid(1, 1), 0, false};
    if (legal(seed)) {
      place(seed);
      ++result.placed;
    }
    std::size_t active = frontier_.size();
    while (result.placed < budget) {
      if (active == 0) {
        result.exhausted = true;
        break;
      }
      const std::size_t pick = static_cast<std::size_t>(rng_.below(active));
      const std::size_t cell = frontier_[pick];
      if (!legal(cell)) {
        // Park it behind the active range until the next successful placement.
        swap_slots(pick, active - 1);
        --active;
        continue;
      }
      place(cell);
      ++result.placed;
      active = frontier_.size();
    }
    result.grid = std::move(grid_);
    return result;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  void swap_slots(std::size_t i, std::size_t j) {
    std::swap(frontier_[i], frontier_[j]);
    slot_[frontier_[i]] = i;
    slot_[frontier_[j]] = j;
  }

  bool is_open(std::size_t idx) const { return grid_.cells()[idx] == 0; }

  template <typename F>
  void for_neighbours(std::size_t idx, F&& f) const {
    const std::size_t w = grid_.width();
    const std::size_t r = idx / w;
    const std::size_t c = idx % w;
    if (r > 0) f(idx - w);
    if (r + 1 < grid_.height()) f(idx + w);
    if (c > 0) f(idx - 1);
    if (c + 1 < w) f(idx + 1);
  }

  void place(std::size_t idx) {
    grid_.set(idx / grid_.width(), idx % grid_.width(), true);
    --open_count_;
    if (slot_[idx] != kNone) {
      const std::size_t last = frontier_.size() - 1;
      swap_slots(slot_[idx], last);
      frontier_.pop_back();
      slot_[idx] = kNone;
    }
    for_neighbours(idx, [&](std::size_t n) {
      if (is_open(n) && slot_[n] == kNone) {
        slot_[n] = frontier_.size();
        frontier_.push_back(n);
      }
    });
  }

  // True if turning `idx` into built form keeps the open cells one
  // 4-connected region. A local test on the 8-neighbourhood ring settles
  // most cases; otherwise a flood fill over open space decides exactly.
  bool legal(std::size_t idx) {
    if (open_count_ <= 1) return false;
    std::vector<std::size_t> open_nbrs;
    for_neighbours(idx, [&](std::size_t n) {
      if (is_open(n)) open_nbrs.push_back(n);
    });
    if (open_nbrs.empty()) return false;
    if (open_nbrs.size() == 1) return true;
    if (ring_connected(idx)) return true;
    return flood_reaches_all(idx, open_nbrs);
  }

  // Walks the 8 cells around idx in order; open 4-neighbours that sit in one
  // run of consecutive open ring cells are joined without passing through idx.
  bool ring_connected(std::size_t idx) const {
    const long w = static_cast<long>(grid_.width());
    const long h = static_cast<long>(grid_.height());
    const long r = static_cast<long>(idx) / w;
    const long c = static_cast<long>(idx) % w;
    static constexpr int dr[8] = {-1, -1, 0, 1, 1, 1, 0, -1};
    static constexpr int dc[8] = {0, 1, 1, 1, 0, -1, -1, -1};
    bool open[8];
    for (int k = 0; k < 8; ++k) {
      const long rr = r + dr[k];
      const long cc = c + dc[k];
      open[k] = rr >= 0 && cc >= 0 && rr < h && cc < w &&
                !grid_.built(static_cast<std::size_t>(rr), static_cast<std::size_t>(cc));
    }
    // Count runs of open ring cells that contain a 4-neighbour (even k).
    // Diagonal ring cells only join runs, so a run is a 4-connected path.
    int runs_with_edge = 0;
    int start = -1;
    for (int k = 0; k < 8; ++k) {
      if (!open[k]) {
        start = k;
        break;
      }
    }
    if (start < 0) return true;
    bool in_run = false;
    bool run_has_edge = false;
    for (int i = 1; i <= 8; ++i) {
      const int k = (start + i) % 8;
      if (open[k]) {
        in_run = true;
        if (k % 2 == 0) run_has_edge = true;
      } else if (in_run) {
        if (run_has_edge) ++runs_with_edge;
        in_run = false;
        run_has_edge = false;
      }
    }
    return runs_with_edge <= 1;
  }

  bool flood_reaches_all(std::size_t blocked, const std::vector<std::size_t>& targets) {
    ++epoch_;
    if (seen_.size() != grid_.size()) seen_.assign(grid_.size(), 0);
    std::size_t remaining = targets.size() - 1;
    std::vector<std::size_t> queue{targets.front()};
    seen_[targets.front()] = epoch_;
    seen_[blocked] = epoch_;
    for (std::size_t head = 0; head < queue.size() && remaining > 0; ++head) {
      for_neighbours(queue[head], [&](std::size_t n) {
        if (seen_[n] == epoch_ || !is_open(n)) return;
        seen_[n] = epoch_;
        queue.push_back(n);
        for (std::size_t k = 1; k < targets.size(); ++k) {
          if (targets[k] == n) --remaining;
        }
      });
    }
    return remaining == 0;
  }

  Grid grid_;
  Rng rng_;
  std::vector<std::size_t> frontier_;
  std::vector<std::size_t> slot_;
  std::size_t open_count_;
  std::vector<std::uint32_t> seen_;
  std::uint32_t epoch_ = 0;
};

}  // namespace

RrpResult gen_rrp(const GenSpec& spec) {
  require_kind(spec, GenKind::kRrp);
  return RrpGrowth(spec).run(spec.cells_to_place);
}

Grid generate(const GenSpec& spec) {
  switch (spec.kind) {
    case GenKind::kRandom: return gen_random(spec);
    case GenKind::kOrdered: return gen_ordered(spec);
    case GenKind::kDispersed: return gen_dispersed(spec);
    case GenKind::kDla: return gen_dla(spec).grid;
    case GenKind::kRrp: return gen_rrp(spec).grid;
    case GenKind::kAnneal: {
      spec.validate();
      return anneal_entropy(gen_random(spec), spec).grid;
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown generator kind");
}

}  // namespace morpho

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "morpho/grid.hpp"

namespace morpho {

enum class GenKind { kOrdered, kRandom, kDispersed, kDla, kRrp, kAnneal };
enum class AnnealMode { kGreedy, kMetropolis };

std::string_view to_string(GenKind kind);
std::string_view to_string(AnnealMode mode);
GenKind parse_gen_kind(std::string_view text);
AnnealMode parse_anneal_mode(std::string_view text);

/// Default seed used whenever a caller does not supply one.
inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// Parameters of one synthetic configuration. Fields irrelevant to `kind`
/// are ignored but still participate in describe() only when relevant.
struct GenSpec {
  GenKind kind = GenKind::kRandom;
  std::size_t width = 100;
  std::size_t height = 100;
  std::uint64_t seed = kDefaultSeed;

  double p = 0.5;                 // random; also the start density for anneal
  std::size_t block_size = 8;     // ordered
  std::size_t street_width = 2;   // ordered
  std::size_t spacing = 10;       // dispersed
  std::size_t particles = 1000;   // dla
  std::size_t cells_to_place = 500;  // rrp
  std::size_t steps = 10000;      // anneal
  AnnealMode mode = AnnealMode::kGreedy;
  double initial_temperature = 0.01;
  double cooling = 0.999;

  /// Throws Error(kInvalidArgument) describing the first violated constraint.
  void validate() const;

  /// Canonical one-line form listing only the fields `kind` uses.
  std::string describe() const;
  /// FNV-1a 64 of describe(), as 16 hex digits.
  std::string digest() const;
};

/// Each cell built independently with probability p, in row-major order from
/// the seeded stream.
Grid gen_random(const GenSpec& spec);

/// Solid block_size squares on a square lattice of period
/// block_size + street_width. Equal block and street widths give the
/// chessboard arrangement, of which the 1/1 checkerboard is the finest case.
Grid gen_ordered(const GenSpec& spec);

/// Isolated built cells at every (spacing*i, spacing*j).
Grid gen_dispersed(const GenSpec& spec);

struct DlaResult {
  Grid grid;
  std::size_t stuck = 0;           // built cells including the seed
  bool reached_boundary = false;   // launch circle no longer fits the grid
};

/// Diffusion-limited aggregation from a centre seed. Walkers start on a
/// circle of radius (cluster radius + 5), take 4-neighbour steps, stick on
/// first 4-adjacency, and are relaunched beyond twice the launch radius or
/// when they leave the grid.
DlaResult gen_dla(const GenSpec& spec);

struct RrpResult {
  Grid grid;
  std::size_t placed = 0;
  bool exhausted = false;  // stopped early: no legal candidate remained
};

/// Random aggregation restricted so open space stays one 4-connected region.
RrpResult gen_rrp(const GenSpec& spec);

/// Generators that need no start grid. kAnneal starts from gen_random with
/// the same spec and returns the annealed grid.
Grid generate(const GenSpec& spec);

}  // namespace morpho

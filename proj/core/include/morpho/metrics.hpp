#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "morpho/grid.hpp"
#include "morpho/pattern_histogram.hpp"

namespace morpho {

enum class DensityMode { kGlobal, kHull };

/// A settlement's coordinates in the density/permeability/information cube.
struct MorphoPoint {
  std::string label;
  double density = 0.0;       // De
  double permeability = 0.0;  // iPe
  double information = 0.0;   // I
  std::optional<std::uint64_t> population;
  std::optional<std::string> category;  // city | proto-urban | non-urban | theoretical

  friend bool operator==(const MorphoPoint&, const MorphoPoint&) = default;
};

/// Built cells over total cells.
double density(const Grid& g);

/// Built cells over the convex hull area of the built cells; for settlements
/// that do not fill their raster. Throws Error(kEmptySettlement).
double density_hull(const Grid& g);

/// Intermediate permeability quantities.
///
///   Pe     = sum_i P_i * A_i / A_O       (A_O = open cell count)
///   Pe_max = 4 * (C_T - 1)
///   iPe    = clamp(1 - Pe / Pe_max, 0, 1)
///
/// Pe_max is attained by one solid block with a single open cell left
/// (P = 4, A = C_T - 1, A_O = 1), so iPe = 0 is maximal obstruction. A grid
/// with no open cells has iPe = 0; a grid with no blocks has iPe = 1.
struct PermeabilityTerms {
  std::uint64_t weighted_perimeter = 0;  // sum_i P_i * A_i
  std::uint64_t open_area = 0;           // A_O
  std::uint64_t block_count = 0;
  double pe = 0.0;
  double pe_max = 0.0;
  double ipe = 0.0;
};

PermeabilityTerms permeability_terms(const Grid& g);

double permeability(const Grid& g);

struct InformationTerms {
  double entropy = 0.0;             // H in bits
  double max_entropy = 0.0;         // log2(65534)
  double normalized_entropy = 0.0;  // nH
  double information = 0.0;         // I = 1 - nH
  std::size_t distinct_patterns = 0;
};

/// Maximum pattern entropy: every admissible pattern equally likely.
double max_pattern_entropy();

InformationTerms information_terms(const PatternHistogram& h);

/// 1 - H / log2(65534) over the 4x4 window histogram. Grids without any
/// non-homogeneous window have I = 1.
double information(const Grid& g, const ScanOptions& options = {});

std::size_t distinct_patterns(const Grid& g, const ScanOptions& options = {});

struct MeasureOptions {
  DensityMode density_mode = DensityMode::kGlobal;
  ScanOptions scan;
};

MorphoPoint measure(const Grid& g, std::string label, std::optional<std::uint64_t> population = std::nullopt,
                    const MeasureOptions& options = {});

}  // namespace morpho

#include "morpho/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "morpho/blocks.hpp"

namespace morpho {

double density(const Grid& g) {
  return static_cast<double>(g.built_count()) / static_cast<double>(g.size());
}

double density_hull(const Grid& g) {
  const double hull = convex_hull_area(g);
  return static_cast<double>(g.built_count()) / hull;
}

PermeabilityTerms permeability_terms(const Grid& g) {
  PermeabilityTerms t;
  const std::uint64_t total = g.size();
  const std::uint64_t built = g.built_count();
  t.open_area = total - built;
  t.pe_max = 4.0 * static_cast<double>(total - 1);

  for (const auto& b : measure_blocks(g)) {
    t.weighted_perimeter += static_cast<std::uint64_t>(b.perimeter) * b.area;
    ++t.block_count;
  }

  if (t.open_area == 0) {
    t.ipe = 0.0;
    return t;
  }
  t.pe = static_cast<double>(t.weighted_perimeter) / static_cast<double>(t.open_area);
  if (t.weighted_perimeter == 0) {
    t.ipe = 1.0;
    return t;
  }
  // One rounding: weighted_perimeter / (A_O * Pe_max), both factors exact.
  const double npe = static_cast<double>(t.weighted_perimeter) / (static_cast<double>(t.open_area) * t.pe_max);
  t.ipe = std::clamp(1.0 - npe, 0.0, 1.0);
  return t;
}

double permeability(const Grid& g) { return permeability_terms(g).ipe; }

double max_pattern_entropy() { return std::log2(static_cast<double>(kAdmissiblePatterns)); }

InformationTerms information_terms(const PatternHistogram& h) {
  InformationTerms t;
  t.entropy = shannon_entropy(h);
  t.max_entropy = max_pattern_entropy();
  t.normalized_entropy = t.entropy / t.max_entropy;
  t.information = std::clamp(1.0 - t.normalized_entropy, 0.0, 1.0);
  t.distinct_patterns = h.distinct();
  return t;
}

double information(const Grid& g, const ScanOptions& options) {
  return information_terms(window_histogram(g, options)).information;
}

std::size_t distinct_patterns(const Grid& g, const ScanOptions& options) {
  return window_histogram(g, options).distinct();
}

MorphoPoint measure(const Grid& g, std::string label, std::optional<std::uint64_t> population,
                    const MeasureOptions& options) {
  MorphoPoint p;
  p.label = std::move(label);
  p.population = population;
  p.density = options.density_mode == DensityMode::kHull ? density_hull(g) : density(g);
  p.permeability = permeability(g);
  p.information = information_terms(window_histogram(g, options.scan)).information;
  return p;
}

}  // namespace morpho

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "morpho/metrics.hpp"

namespace morpho {

/// Closed interval [lo, hi] within [0, 1].
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  bool contains(double v) const { return v >= lo && v <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A named box in the morphospace cube.
struct BandSpec {
  std::string name;
  Interval density;
  Interval permeability;
  Interval information;

  bool contains(const MorphoPoint& p) const {
    return density.contains(p.density) && permeability.contains(p.permeability) &&
           information.contains(p.information);
  }
  /// Throws Error(kInvalidArgument) on unordered or out-of-range bounds.
  void validate() const;
  friend bool operator==(const BandSpec&, const BandSpec&) = default;
};

inline constexpr std::string_view kUnoccupied = "unoccupied";

/// urban-band: De [0.35, 0.6], iPe [0.25, 0.75], I [0.2, 0.4], where
/// contemporary cities cluster; then non-urban: De [0, 0.2], iPe [0.75, 1],
/// I [0, 1] for sparse, permeable settlements.
std::vector<BandSpec> default_bands();

/// Name of the first band containing p on all three axes, else "unoccupied".
std::string classify(const MorphoPoint& p, const std::vector<BandSpec>& bands);

/// Index pairs (i < j) of bands whose boxes intersect. With first-match
/// classification the earlier band wins inside the overlap.
std::vector<std::pair<std::size_t, std::size_t>> overlapping_bands(const std::vector<BandSpec>& bands);

/// Band table JSON: an array of objects, or {"bands": [...]}, each with
/// "name" and "De"/"iPe"/"I" given as [lo, hi] pairs.
std::vector<BandSpec> parse_bands_json(std::string_view text);
std::vector<BandSpec> load_bands(const std::filesystem::path& path);

/// Ordered points with one provenance string each; labels are unique.
class MorphoDataset {
 public:
  /// Throws Error(kInvalidArgument) on a duplicate label or out-of-range
  /// coordinate.
  void add(MorphoPoint point, std::string source);

  const std::vector<MorphoPoint>& points() const noexcept { return points_; }
  const std::vector<std::string>& sources() const noexcept { return sources_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }

  friend bool operator==(const MorphoDataset&, const MorphoDataset&) = default;

 private:
  std::vector<MorphoPoint> points_;
  std::vector<std::string> sources_;
};

inline constexpr std::string_view kCsvHeader = "label,category,De,iPe,I,population,source";

/// One CSV data row (no newline) for a point; numbers use 9 significant
/// digits and text fields are quoted only when they need it.
std::string csv_row(const MorphoPoint& p, std::string_view source);

/// Header plus one LF-terminated row per point, in insertion order.
std::string to_csv(const MorphoDataset& ds);
void emit_csv(const MorphoDataset& ds, const std::filesystem::path& path);

/// Parses a dataset CSV. Errors are Error(kMalformedData) with a message
/// naming the 1-based line number.
MorphoDataset parse_csv(std::string_view text);
MorphoDataset load_csv(const std::filesystem::path& path);

struct ClusterResult {
  /// Cluster index per point, in dataset order. Clusters are numbered by the
  /// order in which they first appear in the dataset.
  std::vector<std::size_t> assignment;
  /// Centroids as (De, iPe, I), indexed like assignment values.
  std::vector<std::array<double, 3>> centroids;
  std::size_t iterations = 0;
};

/// k-means on (De, iPe, I) with seeded k-means++ initialisation, at most 100
/// Lloyd iterations, stopping once no centroid moves more than 1e-9. Points
/// are processed in a canonical coordinate order, so reordering the input
/// only relabels clusters.
ClusterResult cluster(const MorphoDataset& ds, std::size_t k, std::uint64_t seed);

enum class Axis { kDensity, kPermeability, kInformation };
std::string_view axis_name(Axis axis);
double axis_value(const MorphoPoint& p, Axis axis);

/// Standalone SVG 1.1 scatter of one pair of axes over [0, 1] x [0, 1].
/// Throws Error(kInvalidArgument) if x == y.
std::string svg_scatter(const MorphoDataset& ds, Axis x, Axis y);
void emit_svg_scatter(const MorphoDataset& ds, Axis x, Axis y, const std::filesystem::path& path);

/// Plot-area geometry shared with tests.
struct PlotFrame {
  static constexpr double kWidth = 560;
  static constexpr double kHeight = 480;
  static constexpr double kLeft = 70;
  static constexpr double kTop = 30;
  static constexpr double kSide = 380;  // square plot area
  static double to_x(double v) { return kLeft + v * kSide; }
  static double to_y(double v) { return kTop + (1.0 - v) * kSide; }
};

}  // namespace morpho

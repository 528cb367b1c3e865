#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "morpho/grid.hpp"

namespace morpho {

enum class RasterFormat {
  kPgmBinary,  // P5
  kPgmAscii,   // P2
  kText,       // rows of '0'/'1'
};

struct LoadOptions {
  /// Gray levels (rescaled to 0..255) strictly below this are built.
  int threshold = 128;
  /// Swap polarity: light pixels become built. Ignored for text grids.
  bool built_is_light = false;
};

/// Parses an in-memory raster. PGM is detected by its "P2"/"P5" magic;
/// anything else is read as a text grid.
Grid parse_raster(std::string_view bytes, const LoadOptions& options = {});

Grid load_raster(const std::filesystem::path& path, const LoadOptions& options = {});

/// PGM output writes built cells as 0 and open cells as 255 with maxval 255,
/// so loading with any threshold in 1..255 recovers the grid.
std::string serialize_raster(const Grid& g, RasterFormat format);

void save_raster(const Grid& g, const std::filesystem::path& path, RasterFormat format);

/// .pgm -> binary PGM, anything else -> text grid.
RasterFormat format_for_path(const std::filesystem::path& path);

}  // namespace morpho

#include "morpho/raster_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>
#include <optional>
#include <vector>

#include "morpho/error.hpp"

namespace morpho {
namespace {

class PgmReader {
 public:
  explicit PgmReader(std::string_view bytes) : bytes_(bytes) {}

  // Skips whitespace and '#' comments, then reads a decimal token.
  std::optional<unsigned long> next_number() {
    skip_space_and_comments();
    const char* begin = bytes_.data() + pos_;
    const char* end = bytes_.data() + bytes_.size();
    unsigned long value = 0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr == begin) return std::nullopt;
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  // Exactly one whitespace byte separates the header from P5 raster data.
  bool consume_single_space() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) return false;
    ++pos_;
    return true;
  }

  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view bytes_;
  std::size_t pos_ = 2;  // past the magic
};

std::uint8_t classify_pixel(unsigned long value, unsigned long maxval, const LoadOptions& options) {
  // Rescale to 0..255 so the threshold means the same thing for any maxval.
  const unsigned long gray = maxval == 255 ? value : (value * 255 + maxval / 2) / maxval;
  const bool dark = gray < static_cast<unsigned long>(options.threshold);
  return (dark != options.built_is_light) ? 1 : 0;
}

Grid parse_pgm(std::string_view bytes, const LoadOptions& options) {
  const bool binary = bytes[1] == '5';
  PgmReader reader(bytes);
  const auto width = reader.next_number();
  const auto height = reader.next_number();
  const auto maxval = reader.next_number();
  if (!width || !height || !maxval) {
    throw Error(ErrorCode::kMalformedHeader, "PGM header must give width, height and maxval");
  }
  if (*width == 0 || *height == 0) throw Error(ErrorCode::kEmptyInput, "empty input");
  if (*maxval == 0 || *maxval > 255) {
    throw Error(ErrorCode::kMalformedHeader, "PGM maxval must be in 1..255");
  }
  const std::size_t count = *width * *height;
  std::vector<std::uint8_t> cells(count);

  if (binary) {
    if (!reader.consume_single_space()) {
      throw Error(ErrorCode::kMalformedHeader, "missing separator after PGM header");
    }
    if (reader.remaining() < count) {
      throw Error(ErrorCode::kInconsistentRows,
                  "P5 raster holds " + std::to_string(reader.remaining()) + " bytes, expected " +
                      std::to_string(count));
    }
    for (std::size_t i = 0; i < count; ++i) {
      const auto v = static_cast<unsigned char>(bytes[reader.pos() + i]);
      if (v > *maxval) throw Error(ErrorCode::kBadPixel, "pixel value exceeds maxval");
      cells[i] = classify_pixel(v, *maxval, options);
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const auto v = reader.next_number();
      if (!v) {
        throw Error(ErrorCode::kInconsistentRows,
                    "P2 raster ends after " + std::to_string(i) + " of " + std::to_string(count) +
                        " pixels");
      }
      if (*v > *maxval) throw Error(ErrorCode::kBadPixel, "pixel value exceeds maxval");
      cells[i] = classify_pixel(*v, *maxval, options);
    }
  }
  return Grid(*width, *height, std::move(cells));
}

Grid parse_text(std::string_view bytes) {
  std::vector<std::uint8_t> cells;
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t line_no = 0;
  std::size_t start = 0;
  bool trailing_blank = false;
  while (start < bytes.size()) {
    std::size_t end = bytes.find('\n', start);
    if (end == std::string_view::npos) end = bytes.size();
    std::string_view line = bytes.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      trailing_blank = true;
      continue;
    }
    if (trailing_blank) {
      throw Error(ErrorCode::kInconsistentRows, "blank line inside grid at line " + std::to_string(line_no));
    }
    if (height == 0) {
      width = line.size();
    } else if (line.size() != width) {
      throw Error(ErrorCode::kInconsistentRows,
                  "line " + std::to_string(line_no) + " has " + std::to_string(line.size()) +
                      " cells, expected " + std::to_string(width));
    }
    for (char c : line) {
      if (c != '0' && c != '1') {
        throw Error(ErrorCode::kBadPixel, "unexpected character in text grid at line " + std::to_string(line_no));
      }
      cells.push_back(c == '1' ? 1 : 0);
    }
    ++height;
  }
  if (height == 0) throw Error(ErrorCode::kEmptyInput, "empty input");
  return Grid(width, height, std::move(cells));
}

}  // namespace

Grid parse_raster(std::string_view bytes, const LoadOptions& options) {
  if (bytes.empty()) throw Error(ErrorCode::kEmptyInput, "empty input");
  if (options.threshold < 0 || options.threshold > 256) {
    throw Error(ErrorCode::kInvalidArgument, "threshold must be a gray level in 0..256");
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '2' || bytes[1] == '5')) {
    return parse_pgm(bytes, options);
  }
  if (bytes[0] == 'P') {
    throw Error(ErrorCode::kMalformedHeader, "unsupported PNM variant; expected P2 or P5");
  }
  return parse_text(bytes);
}

Grid load_raster(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kUnreadable, "cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kUnreadable, "read failed for " + path.string());
  return parse_raster(bytes, options);
}

std::string serialize_raster(const Grid& g, RasterFormat format) {
  std::string out;
  const auto cells = g.cells();
  switch (format) {
    case RasterFormat::kPgmBinary: {
      out = "P5\n" + std::to_string(g.width()) + " " + std::to_string(g.height()) + "\n255\n";
      out.reserve(out.size() + cells.size());
      for (auto v : cells) out.push_back(static_cast<char>(v ? 0 : 255));
      break;
    }
    case RasterFormat::kPgmAscii: {
      out = "P2\n" + std::to_string(g.width()) + " " + std::to_string(g.height()) + "\n255\n";
      for (std::size_t r = 0; r < g.height(); ++r) {
        for (std::size_t c = 0; c < g.width(); ++c) {
          if (c) out.push_back(' ');
          out += g.built(r, c) ? "0" : "255";
        }
        out.push_back('\n');
      }
      break;
    }
    case RasterFormat::kText: {
      out.reserve(cells.size() + g.height());
      for (std::size_t r = 0; r < g.height(); ++r) {
        for (std::size_t c = 0; c < g.width(); ++c) out.push_back(g.built(r, c) ? '1' : '0');
        out.push_back('\n');
      }
      break;
    }
  }
  return out;
}

void save_raster(const Grid& g, const std::filesystem::path& path, RasterFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kUnwritable, "cannot write " + path.string());
  const std::string bytes = serialize_raster(g, format);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kUnwritable, "write failed for " + path.string());
}

RasterFormat format_for_path(const std::filesystem::path& path) {
  return path.extension() == ".pgm" ? RasterFormat::kPgmBinary : RasterFormat::kText;
}

}  // namespace morpho

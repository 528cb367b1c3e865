#include "morpho/morphospace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "morpho/error.hpp"
#include "morpho/rng.hpp"

namespace morpho {

// ---------------------------------------------------------------- bands --

namespace {

void check_interval(const Interval& iv, const std::string& what) {
  if (!(iv.lo >= 0.0 && iv.hi <= 1.0 && iv.lo <= iv.hi)) {
    throw Error(ErrorCode::kInvalidArgument, what + " must satisfy 0 <= lo <= hi <= 1");
  }
}

bool intervals_meet(const Interval& a, const Interval& b) { return a.lo <= b.hi && b.lo <= a.hi; }

}  // namespace

void BandSpec::validate() const {
  if (name.empty()) throw Error(ErrorCode::kInvalidArgument, "band name must not be empty");
  check_interval(density, "band '" + name + "' De range");
  check_interval(permeability, "band '" + name + "' iPe range");
  check_interval(information, "band '" + name + "' I range");
}

std::vector<BandSpec> default_bands() {
  return {
      BandSpec{"urban-band", {0.35, 0.6}, {0.25, 0.75}, {0.2, 0.4}},
      BandSpec{"non-urban", {0.0, 0.2}, {0.75, 1.0}, {0.0, 1.0}},
  };
}

std::string classify(const MorphoPoint& p, const std::vector<BandSpec>& bands) {
  for (const auto& band : bands) {
    if (band.contains(p)) return band.name;
  }
  return std::string(kUnoccupied);
}

std::vector<std::pair<std::size_t, std::size_t>> overlapping_bands(const std::vector<BandSpec>& bands) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < bands.size(); ++i) {
    for (std::size_t j = i + 1; j < bands.size(); ++j) {
      if (intervals_meet(bands[i].density, bands[j].density) &&
          intervals_meet(bands[i].permeability, bands[j].permeability) &&
          intervals_meet(bands[i].information, bands[j].information)) {
        out.emplace_back(i, j);
      }
    }
  }
  return out;
}

std::vector<BandSpec> parse_bands_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kMalformedData, std::string("band table is not valid JSON: ") + e.what());
  }
  const nlohmann::json& list = doc.is_object() && doc.contains("bands") ? doc["bands"] : doc;
  if (!list.is_array()) throw Error(ErrorCode::kMalformedData, "band table must be an array of bands");

  auto read_interval = [](const nlohmann::json& band, const char* key) {
    if (!band.contains(key)) return Interval{};
    const auto& v = band[key];
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      throw Error(ErrorCode::kMalformedData, std::string("band field '") + key + "' must be [lo, hi]");
    }
    return Interval{v[0].get<double>(), v[1].get<double>()};
  };

  std::vector<BandSpec> bands;
  for (const auto& entry : list) {
    if (!entry.is_object() || !entry.contains("name") || !entry["name"].is_string()) {
      throw Error(ErrorCode::kMalformedData, "every band needs a string 'name'");
    }
    BandSpec band{entry["name"].get<std::string>(), read_interval(entry, "De"), read_interval(entry, "iPe"),
                  read_interval(entry, "I")};
    try {
      band.validate();
    } catch (const Error& e) {
      throw Error(ErrorCode::kMalformedData, e.what());
    }
    bands.push_back(std::move(band));
  }
  return bands;
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kUnreadable, "cannot open " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kUnwritable, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kUnwritable, "write failed for " + path.string());
}

}  // namespace

std::vector<BandSpec> load_bands(const std::filesystem::path& path) { return parse_bands_json(read_file(path)); }

// -------------------------------------------------------------- dataset --

void MorphoDataset::add(MorphoPoint point, std::string source) {
  if (point.label.find_first_of("\r\n") != std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument, "labels must be single-line");
  }
  for (double v : {point.density, point.permeability, point.information}) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "point '" + point.label + "' has a coordinate outside [0, 1]");
    }
  }
  if (std::any_of(points_.begin(), points_.end(), [&](const MorphoPoint& p) { return p.label == point.label; })) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate label '" + point.label + "'");
  }
  points_.push_back(std::move(point));
  sources_.push_back(std::move(source));
}

// ------------------------------------------------------------------ csv --

namespace {

std::string quote_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// Splits one CSV record; returns false on an unterminated quote.
bool split_record(std::string_view line, std::vector<std::string>& fields) {
  fields.clear();
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(std::move(cur));
  return !quoted;
}

}  // namespace

std::string csv_row(const MorphoPoint& p, std::string_view source) {
  std::string row = quote_field(p.label);
  row += ',';
  row += quote_field(p.category.value_or(""));
  row += ',' + format_number(p.density);
  row += ',' + format_number(p.permeability);
  row += ',' + format_number(p.information);
  row += ',';
  if (p.population) row += std::to_string(*p.population);
  row += ',';
  row += quote_field(source);
  return row;
}

std::string to_csv(const MorphoDataset& ds) {
  std::string out(kCsvHeader);
  out.push_back('\n');
  for (std::size_t i = 0; i < ds.size(); ++i) {
    out += csv_row(ds.points()[i], ds.sources()[i]);
    out.push_back('\n');
  }
  return out;
}

void emit_csv(const MorphoDataset& ds, const std::filesystem::path& path) { write_file(path, to_csv(ds)); }

MorphoDataset parse_csv(std::string_view text) {
  MorphoDataset ds;
  std::vector<std::string> fields;
  std::size_t line_no = 0;
  std::size_t start = 0;
  bool saw_header = false;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto fail = [&](const std::string& why) -> void {
      throw Error(ErrorCode::kMalformedData, "line " + std::to_string(line_no) + ": " + why);
    };
    if (!saw_header) {
      if (line != kCsvHeader) fail("expected header '" + std::string(kCsvHeader) + "'");
      saw_header = true;
      continue;
    }
    if (line.empty()) continue;
    if (!split_record(line, fields)) fail("unterminated quoted field");
    if (fields.size() != 7) fail("expected 7 fields, found " + std::to_string(fields.size()));

    MorphoPoint p;
    p.label = fields[0];
    if (p.label.empty()) fail("empty label");
    if (!fields[1].empty()) p.category = fields[1];
    double* coords[3] = {&p.density, &p.permeability, &p.information};
    for (int k = 0; k < 3; ++k) {
      const std::string& f = fields[2 + k];
      const char* b = f.data();
      const char* e = f.data() + f.size();
      auto [ptr, ec] = std::from_chars(b, e, *coords[k]);
      if (f.empty() || ec != std::errc{} || ptr != e) fail("field " + std::to_string(3 + k) + " is not a number");
      if (!(*coords[k] >= 0.0 && *coords[k] <= 1.0)) fail("coordinate outside [0, 1]");
    }
    if (!fields[5].empty()) {
      std::uint64_t pop = 0;
      const std::string& f = fields[5];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), pop);
      if (ec != std::errc{} || ptr != f.data() + f.size()) fail("population is not a non-negative integer");
      p.population = pop;
    }
    try {
      ds.add(std::move(p), fields[6]);
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  if (!saw_header) throw Error(ErrorCode::kMalformedData, "line 1: missing header");
  return ds;
}

MorphoDataset load_csv(const std::filesystem::path& path) { return parse_csv(read_file(path)); }

// ------------------------------------------------------------ clustering --

namespace {

using Vec3 = std::array<double, 3>;

Vec3 coords(const MorphoPoint& p) { return {p.density, p.permeability, p.information}; }

double dist2(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  const double dz = a[2] - b[2];
  return dx * dx + dy * dy + dz * dz;
}

}  // namespace

ClusterResult cluster(const MorphoDataset& ds, std::size_t k, std::uint64_t seed) {
  const std::size_t n = ds.size();
  if (k < 1 || k > n) {
    throw Error(ErrorCode::kInvalidArgument,
                "k must lie in [1, " + std::to_string(n) + "], got " + std::to_string(k));
  }

  // Canonical order makes the result independent of input order.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& pa = ds.points()[a];
    const auto& pb = ds.points()[b];
    const Vec3 ca = coords(pa);
    const Vec3 cb = coords(pb);
    if (ca != cb) return ca < cb;
    return pa.label < pb.label;
  });
  std::vector<Vec3> pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = coords(ds.points()[order[i]]);

  // k-means++ seeding.
  Rng rng(seed);
  std::vector<Vec3> centers;
  std::vector<bool> chosen(n, false);
  const std::size_t first = static_cast<std::size_t>(rng.below(n));
  centers.push_back(pts[first]);
  chosen[first] = true;
  std::vector<double> d2(n);
  while (centers.size() < k) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& c : centers) best = std::min(best, dist2(pts[i], c));
      d2[i] = chosen[i] ? 0.0 : best;
      sum += d2[i];
    }
    std::size_t pick = n;
    if (sum > 0.0) {
      const double target = rng.uniform() * sum;
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (d2[i] <= 0.0) continue;
        acc += d2[i];
        pick = i;
        if (acc > target) break;
      }
    } else {
      for (std::size_t i = 0; i < n && pick == n; ++i) {
        if (!chosen[i]) pick = i;
      }
    }
    centers.push_back(pts[pick]);
    chosen[pick] = true;
  }

  // Lloyd iterations.
  std::vector<std::size_t> label(n, 0);
  std::size_t iterations = 0;
  for (; iterations < 100; ++iterations) {
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d = dist2(pts[i], centers[0]);
      for (std::size_t c = 1; c < k; ++c) {
        const double d = dist2(pts[i], centers[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      label[i] = best;
    }
    std::vector<Vec3> sums(k, Vec3{0, 0, 0});
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (int a = 0; a < 3; ++a) sums[label[i]][a] += pts[i][a];
      ++counts[label[i]];
    }
    double shift = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;  // empty cluster keeps its centre
      Vec3 next;
      for (int a = 0; a < 3; ++a) next[a] = sums[c][a] / static_cast<double>(counts[c]);
      shift = std::max(shift, std::sqrt(dist2(next, centers[c])));
      centers[c] = next;
    }
    if (shift <= 1e-9) {
      ++iterations;
      break;
    }
  }

  // Final assignment in dataset order, relabelled by first appearance.
  std::vector<std::size_t> canonical_label(n);
  for (std::size_t i = 0; i < n; ++i) canonical_label[order[i]] = label[i];
  ClusterResult result;
  result.iterations = iterations;
  result.assignment.resize(n);
  std::vector<std::size_t> remap(k, k);
  std::size_t next_id = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t& id = remap[canonical_label[i]];
    if (id == k) id = next_id++;
    result.assignment[i] = id;
  }
  result.centroids.assign(next_id, Vec3{0, 0, 0});
  for (std::size_t c = 0; c < k; ++c) {
    if (remap[c] != k) result.centroids[remap[c]] = centers[c];
  }
  return result;
}

}  // namespace morpho

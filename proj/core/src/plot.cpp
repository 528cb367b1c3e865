#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "morpho/error.hpp"
#include "morpho/morphospace.hpp"

namespace morpho {

std::string_view axis_name(Axis axis) {
  switch (axis) {
    case Axis::kDensity: return "De";
    case Axis::kPermeability: return "iPe";
    case Axis::kInformation: return "I";
  }
  return "?";
}

double axis_value(const MorphoPoint& p, Axis axis) {
  switch (axis) {
    case Axis::kDensity: return p.density;
    case Axis::kPermeability: return p.permeability;
    case Axis::kInformation: return p.information;
  }
  return 0.0;
}

namespace {

struct CategoryStyle {
  std::string_view name;
  std::string_view color;
};

constexpr CategoryStyle kStyles[] = {
    {"city", "#7b3294"},
    {"proto-urban", "#e66101"},
    {"non-urban", "#fdb863"},
    {"theoretical", "#1b7837"},
};
constexpr std::string_view kOtherColor = "#808080";

std::string_view color_for(const std::optional<std::string>& category) {
  if (category) {
    for (const auto& s : kStyles) {
      if (s.name == *category) return s.color;
    }
  }
  return kOtherColor;
}

std::string axis_title(Axis axis) {
  switch (axis) {
    case Axis::kDensity: return "De (density)";
    case Axis::kPermeability: return "iPe (permeability)";
    case Axis::kInformation: return "I (information)";
  }
  return "";
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string svg_scatter(const MorphoDataset& ds, Axis x, Axis y) {
  if (x == y) throw Error(ErrorCode::kInvalidArgument, "scatter axes must differ");
  using F = PlotFrame;
  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt(F::kWidth) + "\" height=\"" +
       fmt(F::kHeight) + "\" viewBox=\"0 0 " + fmt(F::kWidth) + " " + fmt(F::kHeight) + "\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + fmt(F::kWidth) + "\" height=\"" + fmt(F::kHeight) +
       "\" fill=\"white\"/>\n";

  // Frame, grid lines and tick labels every 0.25.
  s += "<g id=\"axes\" stroke=\"black\" fill=\"none\" stroke-width=\"1\">\n";
  s += "<rect x=\"" + fmt(F::kLeft) + "\" y=\"" + fmt(F::kTop) + "\" width=\"" + fmt(F::kSide) + "\" height=\"" +
       fmt(F::kSide) + "\"/>\n";
  s += "</g>\n<g id=\"ticks\" font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
  static constexpr const char* kTickLabels[] = {"0", "0.25", "0.5", "0.75", "1"};
  for (int i = 0; i <= 4; ++i) {
    const double v = 0.25 * i;
    const std::string px = fmt(F::to_x(v));
    const std::string py = fmt(F::to_y(v));
    s += "<line x1=\"" + px + "\" y1=\"" + fmt(F::kTop) + "\" x2=\"" + px + "\" y2=\"" + fmt(F::kTop + F::kSide) +
         "\" stroke=\"#dddddd\"/>\n";
    s += "<line x1=\"" + fmt(F::kLeft) + "\" y1=\"" + py + "\" x2=\"" + fmt(F::kLeft + F::kSide) + "\" y2=\"" + py +
         "\" stroke=\"#dddddd\"/>\n";
    s += "<text x=\"" + px + "\" y=\"" + fmt(F::kTop + F::kSide + 16) + "\" text-anchor=\"middle\">" +
         kTickLabels[i] + "</text>\n";
    s += "<text x=\"" + fmt(F::kLeft - 8) + "\" y=\"" + fmt(F::to_y(v) + 4) + "\" text-anchor=\"end\">" +
         kTickLabels[i] + "</text>\n";
  }
  s += "<text x=\"" + fmt(F::kLeft + F::kSide / 2) + "\" y=\"" + fmt(F::kTop + F::kSide + 40) +
       "\" text-anchor=\"middle\" font-size=\"13\">" + axis_title(x) + "</text>\n";
  s += "<text x=\"" + fmt(F::kLeft - 45) + "\" y=\"" + fmt(F::kTop + F::kSide / 2) +
       "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 " + fmt(F::kLeft - 45) + " " +
       fmt(F::kTop + F::kSide / 2) + ")\">" + axis_title(y) + "</text>\n";
  s += "</g>\n";

  // Population sets dot area: radius grows with sqrt(population).
  std::uint64_t max_pop = 0;
  for (const auto& p : ds.points()) {
    if (p.population) max_pop = std::max(max_pop, *p.population);
  }
  s += "<g id=\"points\" stroke=\"black\" stroke-width=\"0.5\" fill-opacity=\"0.8\">\n";
  for (const auto& p : ds.points()) {
    double r = 3.0;
    if (p.population && max_pop > 0) {
      r = 3.0 + 12.0 * std::sqrt(static_cast<double>(*p.population) / static_cast<double>(max_pop));
    }
    s += "<circle cx=\"" + fmt(F::to_x(axis_value(p, x))) + "\" cy=\"" + fmt(F::to_y(axis_value(p, y))) +
         "\" r=\"" + fmt(r) + "\" fill=\"" + std::string(color_for(p.category)) + "\"><title>" +
         xml_escape(p.label) + "</title></circle>\n";
  }
  s += "</g>\n";

  s += "<g id=\"legend\" font-family=\"sans-serif\" font-size=\"11\">\n";
  double ly = F::kTop + 10;
  const double lx = F::kLeft + F::kSide + 20;
  auto legend_entry = [&](std::string_view name, std::string_view color) {
    s += "<circle cx=\"" + fmt(lx) + "\" cy=\"" + fmt(ly) + "\" r=\"4\" fill=\"" + std::string(color) +
         "\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
    s += "<text x=\"" + fmt(lx + 10) + "\" y=\"" + fmt(ly + 4) + "\">" + std::string(name) + "</text>\n";
    ly += 18;
  };
  for (const auto& st : kStyles) legend_entry(st.name, st.color);
  legend_entry("other", kOtherColor);
  s += "</g>\n</svg>\n";
  return s;
}

void emit_svg_scatter(const MorphoDataset& ds, Axis x, Axis y, const std::filesystem::path& path) {
  const std::string bytes = svg_scatter(ds, x, y);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kUnwritable, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kUnwritable, "write failed for " + path.string());
}

}  // namespace morpho

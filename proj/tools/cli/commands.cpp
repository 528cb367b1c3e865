#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "morpho/anneal.hpp"
#include "morpho/error.hpp"
#include "morpho/generators.hpp"
#include "morpho/metrics.hpp"
#include "morpho/morphospace.hpp"
#include "morpho/raster_io.hpp"

namespace morpho::cli {
namespace {

namespace fs = std::filesystem;

/// Analysis resolution used by a bare `--resample`.
constexpr std::size_t kAnalysisSide = 3000;

struct Dimensions {
  std::size_t width = 0;
  std::size_t height = 0;
};

// "WxH", or a single number for a square.
Dimensions parse_dimensions(const std::string& text) {
  if (text.empty()) return {kAnalysisSide, kAnalysisSide};
  auto parse_positive = [&](const std::string& s) -> std::size_t {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != s.size() || v == 0 || s.empty() || s[0] == '-') {
      throw Error(ErrorCode::kInvalidArgument, "bad dimensions '" + text + "', expected WxH");
    }
    return static_cast<std::size_t>(v);
  };
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) {
    const auto n = parse_positive(text);
    return {n, n};
  }
  return {parse_positive(text.substr(0, x)), parse_positive(text.substr(x + 1))};
}

DensityMode parse_mode(const std::string& s) {
  if (s == "global") return DensityMode::kGlobal;
  if (s == "hull") return DensityMode::kHull;
  throw Error(ErrorCode::kInvalidArgument, "mode must be global or hull");
}

// Loads `path` if it exists and is non-empty, otherwise starts a new dataset.
MorphoDataset open_dataset(const fs::path& path) {
  std::error_code ec;
  if (!fs::exists(path, ec) || fs::file_size(path, ec) == 0) return {};
  return load_csv(path);
}

// Runs `job(i)` for i in [0, n) over `workers` threads; each index is
// claimed exactly once and results are written to caller-owned slots.
template <typename Job>
void parallel_for(std::size_t n, unsigned workers, Job&& job) {
  const std::size_t threads = std::min<std::size_t>(std::max(1u, workers), n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) job(i);
    });
  }
}

// ------------------------------------------------------------- measure --

struct MeasureArgs {
  std::vector<std::string> inputs;
  std::string mode = "global";
  int threshold = 128;
  bool invert = false;
  std::string resample;
  bool resample_given = false;
  std::string out;
  std::string category;
  std::vector<std::uint64_t> population;
  unsigned workers = 1;
};

int cmd_measure(const MeasureArgs& args, std::ostream& out, std::ostream& err) {
  if (!args.population.empty() && args.population.size() != args.inputs.size()) {
    err << "error: --population needs one value per input\n";
    return kExitUsage;
  }
  MeasureOptions options;
  std::optional<Dimensions> target;
  try {
    options.density_mode = parse_mode(args.mode);
    if (args.resample_given) target = parse_dimensions(args.resample);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  // Labels default to the file stem; colliding stems fall back to the path.
  std::vector<std::string> labels;
  for (const auto& in : args.inputs) labels.push_back(fs::path(in).stem().string());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (std::count(labels.begin(), labels.end(), labels[i]) > 1) labels[i] = args.inputs[i];
  }

  const std::size_t n = args.inputs.size();
  std::vector<std::optional<MorphoPoint>> points(n);
  std::vector<std::string> failures(n);
  // Fan out across inputs when there are several; otherwise give the single
  // grid's window scan all workers. Either way output order is input order.
  options.scan.workers = n > 1 ? 1 : args.workers;
  parallel_for(n, n > 1 ? args.workers : 1, [&](std::size_t i) {
    try {
      LoadOptions load{args.threshold, args.invert};
      Grid g = load_raster(args.inputs[i], load);
      if (target) g = resample(g, target->width, target->height);
      std::optional<std::uint64_t> pop;
      if (!args.population.empty()) pop = args.population[i];
      MorphoPoint p = measure(g, labels[i], pop, options);
      if (!args.category.empty()) p.category = args.category;
      points[i] = std::move(p);
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  });

  bool any_failed = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (!points[i]) {
      err << "error: " << args.inputs[i] << ": " << failures[i] << "\n";
      any_failed = true;
    }
  }

  try {
    if (args.out.empty()) {
      out << kCsvHeader << "\n";
      for (std::size_t i = 0; i < n; ++i) {
        if (points[i]) out << csv_row(*points[i], args.inputs[i]) << "\n";
      }
    } else {
      MorphoDataset ds = open_dataset(args.out);
      for (std::size_t i = 0; i < n; ++i) {
        if (!points[i]) continue;
        try {
          ds.add(*points[i], args.inputs[i]);
        } catch (const Error& e) {
          err << "error: " << args.inputs[i] << ": " << e.what() << "\n";
          any_failed = true;
        }
      }
      emit_csv(ds, args.out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return any_failed ? kExitFailure : kExitOk;
}

// ------------------------------------------------------------ generate --

struct GenerateArgs {
  std::string kind = "random";
  std::size_t size = 0;
  std::size_t width = 0;
  std::size_t height = 0;
  GenSpec spec;
  std::string anneal_mode = "greedy";
  std::string start;
  int threshold = 128;
  std::string out;
  std::string format;
  std::string measure;
  std::string label;
  std::string mode = "global";
  std::string trace;
  unsigned workers = 1;
};

RasterFormat parse_format(const std::string& format, const fs::path& out) {
  if (format.empty()) return format_for_path(out);
  if (format == "pgm" || format == "p5") return RasterFormat::kPgmBinary;
  if (format == "p2") return RasterFormat::kPgmAscii;
  if (format == "txt" || format == "text") return RasterFormat::kText;
  throw Error(ErrorCode::kInvalidArgument, "format must be pgm, p2 or txt");
}

int cmd_generate(GenerateArgs args, std::ostream& out, std::ostream& err) {
  GenSpec spec = args.spec;
  try {
    spec.kind = parse_gen_kind(args.kind);
    spec.mode = parse_anneal_mode(args.anneal_mode);
    if (args.size) spec.width = spec.height = args.size;
    if (args.width) spec.width = args.width;
    if (args.height) spec.height = args.height;

    std::optional<Grid> start;
    if (!args.start.empty()) {
      if (spec.kind != GenKind::kAnneal) throw Error(ErrorCode::kInvalidArgument, "--start applies to anneal only");
      start = load_raster(args.start, LoadOptions{args.threshold, false});
      spec.width = start->width();
      spec.height = start->height();
    }
    spec.validate();
    const RasterFormat format = parse_format(args.format, args.out);

    Grid grid(1, 1);
    switch (spec.kind) {
      case GenKind::kDla: {
        auto r = gen_dla(spec);
        if (r.reached_boundary) {
          err << "note: dla stopped at the grid boundary after " << r.stuck << " particles\n";
        }
        grid = std::move(r.grid);
        break;
      }
      case GenKind::kRrp: {
        auto r = gen_rrp(spec);
        if (r.exhausted) err << "note: rrp ran out of legal candidates after " << r.placed << " cells\n";
        grid = std::move(r.grid);
        break;
      }
      case GenKind::kAnneal: {
        auto r = anneal_entropy(start ? *start : gen_random(spec), spec);
        if (!args.trace.empty()) {
          std::ofstream t(args.trace, std::ios::binary | std::ios::trunc);
          const std::string csv = trace_csv(r.trace);
          t.write(csv.data(), static_cast<std::streamsize>(csv.size()));
          if (!t) throw Error(ErrorCode::kUnwritable, "cannot write " + args.trace);
        }
        grid = std::move(r.grid);
        break;
      }
      default:
        grid = generate(spec);
    }
    save_raster(grid, args.out, format);

    if (!args.measure.empty()) {
      MeasureOptions options;
      options.density_mode = parse_mode(args.mode);
      options.scan.workers = args.workers;
      const std::string label =
          args.label.empty() ? std::string(to_string(spec.kind)) + "-" + spec.digest().substr(0, 8) : args.label;
      MorphoPoint p = measure(grid, label, std::nullopt, options);
      p.category = "theoretical";
      MorphoDataset ds = open_dataset(args.measure);
      ds.add(std::move(p), "gen:" + spec.digest() + ":" + spec.describe());
      emit_csv(ds, args.measure);
    }
    out << args.out << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kInvalidArgument ? kExitUsage : kExitFailure;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- plot --

int cmd_plot(const std::string& dataset, const std::string& out_dir, std::ostream& out, std::ostream& err) {
  try {
    const MorphoDataset ds = load_csv(dataset);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    const std::pair<Axis, Axis> pairs[] = {
        {Axis::kDensity, Axis::kPermeability},
        {Axis::kDensity, Axis::kInformation},
        {Axis::kPermeability, Axis::kInformation},
    };
    for (const auto& [x, y] : pairs) {
      const fs::path path = fs::path(out_dir) / (std::string(axis_name(x)) + "_" + std::string(axis_name(y)) + ".svg");
      emit_svg_scatter(ds, x, y, path);
      out << path.string() << "\n";
    }
  } catch (const Error& e) {
    err << "error: " << dataset << ": " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

// ------------------------------------------------------------ classify --

int cmd_classify(const std::string& dataset, const std::string& bands_path, std::ostream& out,
                 std::ostream& err) {
  std::vector<BandSpec> bands;
  try {
    bands = bands_path.empty() ? default_bands() : load_bands(bands_path);
  } catch (const Error& e) {
    err << "error: " << bands_path << ": " << e.what() << "\n";
    return kExitFailure;
  }
  for (const auto& [i, j] : overlapping_bands(bands)) {
    err << "warning: bands '" << bands[i].name << "' and '" << bands[j].name
        << "' overlap; the earlier band wins\n";
  }
  try {
    const MorphoDataset ds = load_csv(dataset);
    std::ostringstream rows;
    rows << "label,band\n";
    for (const auto& p : ds.points()) {
      MorphoPoint only_label;
      only_label.label = p.label;
      const std::string row = csv_row(only_label, "");
      rows << row.substr(0, row.find(',')) << "," << classify(p, bands) << "\n";
    }
    out << rows.str();
  } catch (const Error& e) {
    err << "error: " << dataset << ": " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

// ------------------------------------------------------------- cluster --

int cmd_cluster(const std::string& dataset, std::size_t k, std::uint64_t seed, std::ostream& out,
                std::ostream& err) {
  try {
    const MorphoDataset ds = load_csv(dataset);
    const ClusterResult r = cluster(ds, k, seed);
    std::ostringstream rows;
    rows << "label,cluster\n";
    for (std::size_t i = 0; i < ds.size(); ++i) {
      MorphoPoint only_label;
      only_label.label = ds.points()[i].label;
      const std::string row = csv_row(only_label, "");
      rows << row.substr(0, row.find(',')) << "," << r.assignment[i] << "\n";
    }
    out << rows.str();
  } catch (const Error& e) {
    err << "error: " << dataset << ": " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Morphospace coordinates (density, permeability, information) for settlement rasters"};
  app.name("morpho");
  app.require_subcommand(1);

  MeasureArgs m;
  auto* measure = app.add_subcommand("measure", "Measure rasters and emit one CSV row per input");
  measure->add_option("inputs", m.inputs, "PGM (P2/P5) or text grid files")->required();
  measure->add_option("--mode", m.mode, "Density mode: global or hull")->check(CLI::IsMember({"global", "hull"}));
  measure->add_option("--threshold", m.threshold, "Gray levels below this are built")->check(CLI::Range(0, 256));
  measure->add_flag("--invert", m.invert, "Treat light pixels as built");
  auto* resample_opt = measure->add_option("--resample", m.resample, "Resample to WxH (bare flag: 3000x3000)")
                           ->expected(0, 1);
  measure->add_option("--out", m.out, "Append points to this dataset CSV instead of printing");
  measure->add_option("--category", m.category, "Category recorded for every point");
  measure->add_option("--population", m.population, "Population per input, in input order");
  measure->add_option("--workers", m.workers, "Worker threads")->check(CLI::PositiveNumber);

  GenerateArgs g;
  auto* generate = app.add_subcommand("generate", "Generate a theoretical configuration");
  generate->add_option("--kind", g.kind, "ordered, random, dispersed, dla, rrp or anneal")
      ->check(CLI::IsMember({"ordered", "random", "dispersed", "dla", "rrp", "anneal"}));
  generate->add_option("--size", g.size, "Square side in cells");
  generate->add_option("--width", g.width, "Width in cells (overrides --size)");
  generate->add_option("--height", g.height, "Height in cells (overrides --size)");
  generate->add_option("--seed", g.spec.seed, "Seed for the pseudorandom stream");
  generate->add_option("--p", g.spec.p, "Occupancy probability (random; anneal start)");
  generate->add_option("--block", g.spec.block_size, "Block side (ordered)");
  generate->add_option("--street", g.spec.street_width, "Street width (ordered)");
  generate->add_option("--spacing", g.spec.spacing, "Lattice spacing (dispersed)");
  generate->add_option("--particles", g.spec.particles, "Particle budget (dla)");
  generate->add_option("--cells", g.spec.cells_to_place, "Cells to place (rrp)");
  generate->add_option("--steps", g.spec.steps, "Proposed swaps (anneal)");
  generate->add_option("--anneal-mode", g.anneal_mode, "greedy or metropolis")
      ->check(CLI::IsMember({"greedy", "metropolis"}));
  generate->add_option("--t0", g.spec.initial_temperature, "Initial temperature (metropolis)");
  generate->add_option("--cooling", g.spec.cooling, "Geometric cooling factor (metropolis)");
  generate->add_option("--start", g.start, "Start grid for anneal (default: random grid with --p)");
  generate->add_option("--threshold", g.threshold, "Threshold for loading --start")->check(CLI::Range(0, 256));
  generate->add_option("--out", g.out, "Output raster (.pgm -> P5, otherwise text)")->required();
  generate->add_option("--format", g.format, "Override output format: pgm, p2 or txt");
  generate->add_option("--measure", g.measure, "Append the grid's point to this dataset CSV");
  generate->add_option("--label", g.label, "Label for --measure (default: kind-digest)");
  generate->add_option("--mode", g.mode, "Density mode for --measure")->check(CLI::IsMember({"global", "hull"}));
  generate->add_option("--trace", g.trace, "Write the anneal trace CSV here");
  generate->add_option("--workers", g.workers, "Worker threads for --measure")->check(CLI::PositiveNumber);

  std::string plot_dataset;
  std::string plot_out = ".";
  auto* plot = app.add_subcommand("plot", "Write the three pairwise SVG scatter plots");
  plot->add_option("dataset", plot_dataset, "Dataset CSV")->required();
  plot->add_option("--out", plot_out, "Output directory");

  std::string classify_dataset;
  std::string bands_path;
  auto* classify_cmd = app.add_subcommand("classify", "Print label,band for each point");
  classify_cmd->add_option("dataset", classify_dataset, "Dataset CSV")->required();
  classify_cmd->add_option("--bands", bands_path, "Band table JSON (default: built-in bands)");

  std::string cluster_dataset;
  std::size_t cluster_k = 2;
  std::uint64_t cluster_seed = kDefaultSeed;
  auto* cluster_cmd = app.add_subcommand("cluster", "k-means over (De, iPe, I); print label,cluster");
  cluster_cmd->add_option("dataset", cluster_dataset, "Dataset CSV")->required();
  cluster_cmd->add_option("--k", cluster_k, "Number of clusters");
  cluster_cmd->add_option("--seed", cluster_seed, "Seed for k-means++ initialisation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (measure->parsed()) {
    m.resample_given = resample_opt->count() > 0;
    return cmd_measure(m, out, err);
  }
  if (generate->parsed()) return cmd_generate(g, out, err);
  if (plot->parsed()) return cmd_plot(plot_dataset, plot_out, out, err);
  if (classify_cmd->parsed()) return cmd_classify(classify_dataset, bands_path, out, err);
  if (cluster_cmd->parsed()) return cmd_cluster(cluster_dataset, cluster_k, cluster_seed, out, err);
  return kExitUsage;
}

}  // namespace morpho::cli

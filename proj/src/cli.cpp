#include "symdet/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "symdet/detect.hpp"
#include "symdet/directional.hpp"
#include "symdet/error.hpp"
#include "symdet/fixtures.hpp"
#include "symdet/invariants.hpp"
#include "symdet/io.hpp"
#include "symdet/parallel.hpp"
#include "symdet/report.hpp"

namespace symdet::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CommonOptions {
  std::string format;
  std::optional<ShapeFormat> parsed_format() const {
    if (format.empty()) return std::nullopt;
    return parse_format(format);
  }
};

struct AnalyzeOptions {
  std::vector<std::string> inputs;
  CommonOptions common;
  int max_order = kDefaultMomentOrder;
  std::optional<double> tol;
  std::optional<double> angular_tol;
  int max_fold = 12;
  bool relaxed = false;
  bool no_split = false;
  std::string report;
  std::string emit_axes;
  bool quiet = false;
};

struct ShapeOptions {
  std::string input;
  CommonOptions common;
  int order = kDefaultMomentOrder;
  bool raw = false;
  std::optional<int> single_order;
  std::string out;
};

struct FixtureOptions {
  std::vector<std::string> names;
  std::string out = ".";
  bool list = false;
  std::uint64_t seed = 1;
  double sigma = 0.01;
  int per_side = 100;
};

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
  if (!f) throw InputError("failed writing '" + path + "'");
}

std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> out;
  for (const auto& in : inputs) {
    const fs::path p(in);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(p)) {
        const std::string ext = e.path().extension().string();
        if (e.is_regular_file() && (ext == ".csv" || ext == ".json" || ext == ".obj" || ext == ".pgm"))
          found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(p);
    }
  }
  if (out.empty()) throw InputError("no input files");
  return out;
}

DetectConfig make_config(const AnalyzeOptions& o) {
  DetectConfig cfg = o.relaxed ? DetectConfig::relaxed() : DetectConfig{};
  cfg.max_moment_order = o.max_order;
  if (o.tol) cfg.zero_tol = *o.tol;
  if (o.angular_tol) cfg.angular_tol = *o.angular_tol;
  cfg.max_fold = o.max_fold;
  cfg.split_check = !o.no_split;
  cfg.validate();
  return cfg;
}

std::string summary(const fs::path& path, const SymmetryReport& r) {
  std::ostringstream s;
  s << path.string() << ": " << r.reflections.size() << (r.dimension == 2 ? " axes" : " planes");
  if (r.quick_reject) s << " (quick reject)";
  if (r.dimension == 2) {
    if (!r.rotations.empty()) s << ", fold " << r.rotations.front().fold;
  } else {
    s << ", " << r.rotations.size() << " rotation axes";
  }
  return s.str();
}

int run_analyze(const AnalyzeOptions& o, std::ostream& out, std::ostream& err) {
  const DetectConfig cfg = make_config(o);
  const auto format = o.common.parsed_format();
  const std::vector<fs::path> files = expand_inputs(o.inputs);
  const bool batch = files.size() > 1;
  if (batch) {
    if (!o.report.empty()) fs::create_directories(o.report);
    if (!o.emit_axes.empty()) fs::create_directories(o.emit_axes);
  }

  struct Outcome {
    int code = kExitOk;
    std::string message;
    std::string stdout_text;
  };
  std::vector<Outcome> outcomes(files.size());
  parallel_for(
      files.size(),
      [&](std::size_t i) {
        Outcome& oc = outcomes[i];
        const fs::path& file = files[i];
        try {
          const auto t0 = std::chrono::steady_clock::now();
          const Shape shape = load_shape(file, format);
          const auto t1 = std::chrono::steady_clock::now();
          SymmetryReport report = analyze(shape, cfg);
          report.timings_ms["load"] = std::chrono::duration<double, std::milli>(t1 - t0).count();
          report.timings_ms["total"] =
              std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
          const json doc = report_document(report, cfg, file.string());
          if (!o.report.empty()) {
            const fs::path target = batch ? fs::path(o.report) / (file.stem().string() + ".json") : fs::path(o.report);
            write_text(target.string(), doc.dump(2) + "\n", out);
          } else if (!o.quiet && !batch) {
            oc.stdout_text = doc.dump(2) + "\n";
          }
          if (!o.emit_axes.empty()) {
            const fs::path target = batch ? fs::path(o.emit_axes) / (file.stem().string() + ".csv") : fs::path(o.emit_axes);
            emit_axes(report, target);
          }
          if (!o.quiet && (batch || !o.report.empty())) oc.stdout_text += summary(file, report) + "\n";
        } catch (const InputError& e) {
          oc.code = kExitInput;
          oc.message = e.what();
        } catch (const std::exception& e) {
          oc.code = kExitInternal;
          oc.message = std::string("internal error: ") + e.what();
        }
      },
      1);

  int code = kExitOk;
  for (const auto& oc : outcomes) {
    out << oc.stdout_text;
    if (!oc.message.empty()) err << "symdet: " << oc.message << '\n';
    if (oc.code == kExitInternal) code = kExitInternal;
    else if (oc.code == kExitInput && code == kExitOk) code = kExitInput;
  }
  return code;
}

int run_moments(const ShapeOptions& o, std::ostream& out) {
  const Shape shape = load_shape(o.input, o.common.parsed_format());
  if (o.order < 0 || o.order > kMaxMomentOrder) throw InputError("order must be in [0, 12]");
  json doc = moments_to_json(o.raw ? raw_moments(shape, o.order) : central_moments(shape, o.order));
  doc["centroid"] = [&] {
    const Eigen::VectorXd c = centroid(shape);
    return std::vector<double>(c.data(), c.data() + c.size());
  }();
  write_text(o.out, doc.dump(2) + "\n", out);
  return kExitOk;
}

int run_invariants(const ShapeOptions& o, std::ostream& out) {
  const Shape shape = load_shape(o.input, o.common.parsed_format());
  if (o.order < 4 || o.order > kMaxMomentOrder) throw InputError("order must be in [4, 12]");
  const MomentTensor mu = central_moments(shape, o.order);
  json doc;
  doc["dimension"] = mu.dimension();
  if (mu.dimension() == 2) {
    const auto hu = hu_invariants(mu);
    doc["hu"] = std::vector<double>(hu.begin(), hu.end());
  } else {
    const auto iso = isometric_invariants_3d(mu);
    doc["isometric"] = std::vector<double>(iso.begin(), iso.end());
  }
  json refl = json::array();
  for (const auto& v : reflection_invariant_set(mu))
    refl.push_back({{"name", v.name}, {"value", v.value}, {"scale", v.scale}, {"normalized", v.normalized()}});
  doc["reflection_invariants"] = refl;
  write_text(o.out, doc.dump(2) + "\n", out);
  return kExitOk;
}

int run_dm(const ShapeOptions& o, std::ostream& out) {
  const Shape shape = load_shape(o.input, o.common.parsed_format());
  const int max_order = o.single_order ? *o.single_order : o.order;
  if (max_order < 1 || max_order > kMaxMomentOrder) throw InputError("order must be in [1, 12]");
  const MomentTensor mu = central_moments(shape, max_order);
  json forms = json::array();
  const int first = o.single_order ? *o.single_order : 1;
  for (int k = first; k <= max_order; ++k) {
    json item{{"order", k}};
    if (mu.dimension() == 2) {
      const auto dm = build_dm_2d(mu, k);
      item["constant"] = is_constant_dm(dm, DetectConfig{}.zero_tol);
      item["coefficients"] = dm.coefficients;
      item["form"] = dm.to_string();
    } else {
      const auto dm = build_dm_3d(mu, k);
      item["constant"] = is_constant_dm(dm, DetectConfig{}.zero_tol);
      item["form"] = dm.to_string();
    }
    forms.push_back(item);
  }
  write_text(o.out, json{{"dimension", mu.dimension()}, {"directional_moments", forms}}.dump(2) + "\n", out);
  return kExitOk;
}

int run_fixtures(const FixtureOptions& o, std::ostream& out) {
  std::vector<std::string> all = fixtures::names();
  all.push_back("noisy-square");
  if (o.list) {
    for (const auto& n : all) out << n << '\n';
    return kExitOk;
  }
  const std::vector<std::string> names = o.names.empty() ? all : o.names;
  fs::create_directories(o.out);
  for (const auto& name : names) {
    const Shape shape =
        name == "noisy-square" ? Shape{fixtures::noisy_square_cloud(o.per_side, o.sigma, o.seed)} : fixtures::by_name(name);
    const bool mesh = std::holds_alternative<TriMesh>(shape);
    const fs::path target = fs::path(o.out) / (name + (mesh ? ".obj" : ".json"));
    save_shape(shape, target);
    out << target.string() << '\n';
  }
  return kExitOk;
}

void add_format(CLI::App* app, CommonOptions& c) {
  app->add_option("--format", c.format, "csv-points2d, csv-points3d, json-shape, obj-mesh or pgm-raster");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reflection and rotation symmetry detection from geometric moments", "symdet"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  AnalyzeOptions ao;
  auto* analyze_cmd = app.add_subcommand("analyze", "Detect mirror axes/planes and rotation folds");
  analyze_cmd->add_option("inputs", ao.inputs, "Shape files or directories")->required();
  add_format(analyze_cmd, ao.common);
  analyze_cmd->add_option("--max-order", ao.max_order, "Highest moment order")->check(CLI::Range(2, kMaxMomentOrder));
  analyze_cmd->add_option("--tol", ao.tol, "Relative zero tolerance");
  analyze_cmd->add_option("--angular-tol", ao.angular_tol, "Direction merge tolerance (rad)");
  analyze_cmd->add_option("--max-fold", ao.max_fold, "Largest rotation fold to test")->check(CLI::Range(2, 64));
  analyze_cmd->add_flag("--relaxed", ao.relaxed, "Tolerance profile for sampled, noisy input");
  analyze_cmd->add_flag("--no-split-check", ao.no_split, "Verify with the moment comparison only");
  analyze_cmd->add_option("--report", ao.report, "Report JSON path (directory in batch mode)");
  analyze_cmd->add_option("--emit-axes", ao.emit_axes, "Axes CSV path (directory in batch mode)");
  analyze_cmd->add_flag("--quiet", ao.quiet, "No console output");

  ShapeOptions mo;
  auto* moments_cmd = app.add_subcommand("moments", "Dump central (or raw) moments as JSON");
  moments_cmd->add_option("input", mo.input)->required();
  add_format(moments_cmd, mo.common);
  moments_cmd->add_option("--order,--max-order", mo.order, "Highest order");
  moments_cmd->add_flag("--raw", mo.raw, "Moments about the origin");
  moments_cmd->add_option("--out", mo.out, "Output path (default stdout)");

  ShapeOptions io;
  auto* inv_cmd = app.add_subcommand("invariants", "Isometric and reflection invariants");
  inv_cmd->add_option("input", io.input)->required();
  add_format(inv_cmd, io.common);
  inv_cmd->add_option("--max-order", io.order, "Moment order used (>= 4)");
  inv_cmd->add_option("--out", io.out, "Output path (default stdout)");

  ShapeOptions dmo;
  auto* dm_cmd = app.add_subcommand("dm", "Directional-moment trigonometric forms");
  dm_cmd->add_option("input", dmo.input)->required();
  add_format(dm_cmd, dmo.common);
  dm_cmd->add_option("--max-order", dmo.order, "Dump orders 1..N");
  dm_cmd->add_option("--order", dmo.single_order, "Dump a single order");
  dm_cmd->add_option("--out", dmo.out, "Output path (default stdout)");

  FixtureOptions fo;
  auto* fix_cmd = app.add_subcommand("fixtures", "Write the built-in test shapes");
  fix_cmd->add_option("names", fo.names, "Fixture names (default: all)");
  fix_cmd->add_option("--out", fo.out, "Output directory");
  fix_cmd->add_flag("--list", fo.list, "List fixture names");
  fix_cmd->add_option("--seed", fo.seed, "Seed for noisy-square");
  fix_cmd->add_option("--sigma", fo.sigma, "Noise for noisy-square");
  fix_cmd->add_option("--per-side", fo.per_side, "Grid size for noisy-square");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << tool_version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "symdet: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (*analyze_cmd) return run_analyze(ao, out, err);
    if (*moments_cmd) return run_moments(mo, out);
    if (*inv_cmd) return run_invariants(io, out);
    if (*dm_cmd) return run_dm(dmo, out);
    if (*fix_cmd) return run_fixtures(fo, out);
  } catch (const InputError& e) {
    err << "symdet: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "symdet: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace symdet::cli

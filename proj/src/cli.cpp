#include "bundlekit/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "bundlekit/io.hpp"
#include "bundlekit/metrics.hpp"
#include "bundlekit/parallel.hpp"
#include "bundlekit/pipeline.hpp"
#include "bundlekit/raster.hpp"
#include "bundlekit/svg.hpp"

namespace bundlekit::cli {

namespace {

// Failures carry the pipeline stage they happened in; the top level prints
// "error [stage]: message" and exits 1.
struct StageError : std::runtime_error {
  std::string stage;
  StageError(std::string stage_name, const std::string& msg)
      : std::runtime_error(msg), stage(std::move(stage_name)) {}
};

template <typename F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

// Resolved settings echoed into every output file.
class ConfigEcho {
 public:
  void add(const std::string& key, std::string value) { kv_.emplace_back(key, std::move(value)); }
  void add(const std::string& key, const char* value) { add(key, std::string(value)); }
  void add(const std::string& key, double value) { add(key, format_double(value)); }
  void add(const std::string& key, std::uint64_t value) { add(key, std::to_string(value)); }
  void add(const std::string& key, std::uint32_t value) { add(key, std::to_string(value)); }
  void add(const std::string& key, bool value) { add(key, std::string(value ? "true" : "false")); }

  std::string json() const {
    nlohmann::ordered_json j;
    for (const auto& [k, v] : kv_) j[k] = v;
    return j.dump();
  }
  std::string line() const {
    std::string out;
    for (const auto& [k, v] : kv_) {
      if (!out.empty()) out += " ";
      out += k + "=" + v;
    }
    // Keep the line legal inside an XML comment.
    std::size_t pos;
    while ((pos = out.find("--")) != std::string::npos) out.replace(pos, 2, "- -");
    return out;
  }
  std::vector<std::string> lines() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : kv_) out.push_back(k + "=" + v);
    return out;
  }

 private:
  std::vector<std::pair<std::string, std::string>> kv_;
};

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error(tmp + ": cannot open for writing");
    out << content;
    if (!out) throw std::runtime_error(tmp + ": write failed");
  }
  std::filesystem::rename(tmp, path);
}

struct GraphArgs {
  std::string path;
  std::string format = "edgelist";
};

void add_graph_options(CLI::App* cmd, GraphArgs& args, const char* flag = "--graph") {
  cmd->add_option(flag, args.path, "Input graph file")->required();
  cmd->add_option("--format", args.format, "Graph file format")
      ->check(CLI::IsMember({"edgelist", "mm"}))
      ->capture_default_str();
}

Graph load_graph_checked(const GraphArgs& args) {
  return stage("load", [&] {
    return load_graph(args.path,
                      args.format == "mm" ? GraphFormat::matrix_market : GraphFormat::edgelist);
  });
}

struct ErArgs {
  std::string method = "auto";
  double tol = 0.1;
};

void add_er_options(CLI::App* cmd, ErArgs& args) {
  cmd->add_option("--er-method", args.method, "Effective resistance method")
      ->check(CLI::IsMember({"auto", "exact", "approximate"}))
      ->capture_default_str();
  cmd->add_option("--tol", args.tol, "Relative error target for approximate resistances")
      ->capture_default_str();
}

ERMap compute_er(const Graph& g, const ErArgs& args) {
  return stage("resistance", [&] {
    const ERMethod m = args.method == "exact"       ? ERMethod::exact
                       : args.method == "approximate" ? ERMethod::approximate
                                                      : recommended_method(g.vertex_count());
    return effective_resistances(g, m, args.tol);
  });
}

struct LayoutArgs {
  std::string coords;  // layout file; empty means computed force layout
  std::uint32_t iterations = 100;
  std::uint64_t seed = 1;
  double width = 1000.0;
  double height = 1000.0;
};

void add_layout_options(CLI::App* cmd, LayoutArgs& args) {
  cmd->add_option("--layout", args.coords, "Layout file 'v x y' (fixed positions)");
  cmd->add_option("--layout-iterations", args.iterations, "Force layout iterations")
      ->capture_default_str();
  cmd->add_option("--seed", args.seed, "Seed for all randomized stages")->capture_default_str();
  cmd->add_option("--area-width", args.width, "Layout area width")->capture_default_str();
  cmd->add_option("--area-height", args.height, "Layout area height")->capture_default_str();
}

LayoutParams layout_params(const LayoutArgs& args) {
  LayoutParams lp;
  lp.algorithm = LayoutAlgorithm::force;
  lp.iterations = args.iterations;
  lp.seed = args.seed;
  lp.width = args.width;
  lp.height = args.height;
  return lp;
}

Drawing base_drawing(const Graph& g, const LayoutArgs& args) {
  return stage("layout", [&] {
    if (!args.coords.empty()) return load_layout(args.coords, g);
    return compute_layout(g, layout_params(args));
  });
}

void echo_layout(ConfigEcho& echo, const LayoutArgs& args) {
  echo.add("layout", args.coords.empty() ? "force" : "import:" + args.coords);
  echo.add("layout_iterations", args.iterations);
  echo.add("seed", static_cast<std::uint64_t>(args.seed));
  echo.add("area_width", args.width);
  echo.add("area_height", args.height);
}

struct BundlerArgs {
  std::uint32_t cycles = 6;
  std::uint32_t iterations = 50;
  double step = 0.04;
  double spring = 0.1;
  double threshold = 0.05;
  double distortion_limit = 2.0;
  std::uint32_t smoothing = 2;
  double stretch = 2.0;
};

void add_bundler_options(CLI::App* cmd, BundlerArgs& args) {
  cmd->add_option("--cycles", args.cycles, "Force bundling subdivision cycles")
      ->capture_default_str();
  cmd->add_option("--iterations", args.iterations, "Force iterations in the first cycle")
      ->capture_default_str();
  cmd->add_option("--step", args.step, "Initial step as a fraction of the drawing diagonal")
      ->capture_default_str();
  cmd->add_option("--spring", args.spring, "Spring constant")->capture_default_str();
  cmd->add_option("--threshold", args.threshold, "Compatibility threshold")
      ->capture_default_str();
  cmd->add_option("--distortion-limit", args.distortion_limit,
                  "Path bundling: max path length over edge length")
      ->capture_default_str();
  cmd->add_option("--smoothing", args.smoothing, "Path bundling: corner-cutting rounds")
      ->capture_default_str();
  cmd->add_option("--stretch", args.stretch, "Spanner stretch factor")->capture_default_str();
}

BundlerParams bundler_params(const BundlerArgs& args) {
  BundlerParams bp;
  bp.force.cycles = args.cycles;
  bp.force.iterations_per_cycle = args.iterations;
  bp.force.initial_step = args.step;
  bp.force.spring_constant = args.spring;
  bp.force.compatibility_threshold = args.threshold;
  bp.path.distortion_limit = args.distortion_limit;
  bp.path.smoothing = args.smoothing;
  bp.path.spanner_stretch = args.stretch;
  return bp;
}

void echo_bundler(ConfigEcho& echo, Bundler b, const BundlerArgs& args) {
  echo.add("bundler", bundler_name(b));
  if (b == Bundler::fdeb || b == Bundler::seb1 || b == Bundler::seb2) {
    echo.add("cycles", args.cycles);
    echo.add("iterations", args.iterations);
    echo.add("step", args.step);
    echo.add("spring", args.spring);
    echo.add("threshold", args.threshold);
  } else {
    echo.add("distortion_limit", args.distortion_limit);
    echo.add("smoothing", args.smoothing);
    if (b == Bundler::sepb) echo.add("stretch", args.stretch);
  }
}

struct DetectArgs {
  double eps_frac = 0.005;  // of the drawing diagonal
  double tau = 0.7;
  std::uint32_t samples = 64;
};

void add_detect_options(CLI::App* cmd, DetectArgs& args) {
  cmd->add_option("--bundle-eps", args.eps_frac,
                  "Bundle detection distance as a fraction of the drawing diagonal")
      ->capture_default_str();
  cmd->add_option("--bundle-tau", args.tau, "Bundle detection overlap fraction")
      ->capture_default_str();
  cmd->add_option("--bundle-samples", args.samples, "Sample points per overlap test")
      ->capture_default_str();
}

struct RasterArgs {
  std::uint32_t width = 2048;
  double line_width = 2.0;
  double binarize = 0.5;
};

void add_raster_options(CLI::App* cmd, RasterArgs& args) {
  cmd->add_option("--raster-width", args.width, "Raster width in pixels")->capture_default_str();
  cmd->add_option("--raster-line-width", args.line_width, "Raster stroke width in pixels")
      ->capture_default_str();
  cmd->add_option("--binarize", args.binarize, "Binarization threshold for ink")
      ->capture_default_str();
}

void check_drawing_matches(const Graph& g, const Drawing& d, const char* what) {
  if (d.positions.size() != g.vertex_count() || d.edges.size() != g.edge_count())
    throw std::runtime_error(std::string(what) + ": drawing does not match the graph");
  for (std::uint32_t i = 0; i < g.edge_count(); ++i)
    if (d.edges[i].first != g.edge(i).u || d.edges[i].second != g.edge(i).v)
      throw std::runtime_error(std::string(what) + ": edge list differs from the graph");
}

struct QualityResult {
  MetricsReport report;
  GeometricGraph geo;
};

QualityResult quality_report(const Graph& g, const RasterImage& original_raster,
                             const Drawing& bundled, const DetectArgs& da, const RasterArgs& ra) {
  QualityResult out;
  const RasterImage bundled_raster =
      rasterize(bundled, ra.width, ra.line_width, ra.binarize);
  out.report.ink = ink_reduction(original_raster, bundled_raster);
  const DistortionResult dist = distortion(bundled);
  out.report.distortion_raw = dist.raw;
  out.report.distortion = dist.reported;
  const double eps = da.eps_frac * drawing_diagonal(bundled);
  const BundleAssignment bundles = detect_bundles(bundled, eps, da.tau, da.samples);
  out.geo = geometric_graph(g, bundles);
  out.report.amb1 = ambiguity(g, out.geo, 1);
  out.report.amb2 = ambiguity(g, out.geo, 2);
  return out;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string svg_with_config(const Drawing& d, const RenderStyle& style, const ConfigEcho& echo) {
  std::string svg = to_svg(d, style);
  const std::size_t pos = svg.find('\n');
  svg.insert(pos + 1, "<!-- config: " + echo.line() + " -->\n");
  return svg;
}

// ---------------------------------------------------------------------------
// Subcommand option blocks and handlers.

struct SparsifyCmd {
  GraphArgs graph;
  ErArgs er;
  double factor = 4.0;
  std::uint64_t seed = 1;
  bool ensure_connected = true;
  std::string out;
  std::string er_csv;
};

int run_sparsify(const SparsifyCmd& c) {
  const Graph g = load_graph_checked(c.graph);
  const ERMap er = compute_er(g, c.er);
  SparsifyParams sp;
  sp.factor = c.factor;
  sp.seed = c.seed;
  sp.ensure_connected = c.ensure_connected;
  const Graph gs = stage("sparsify", [&] { return spectral_sparsify(g, er, sp); });

  ConfigEcho echo;
  echo.add("command", "sparsify");
  echo.add("graph", c.graph.path);
  echo.add("factor", c.factor);
  echo.add("seed", static_cast<std::uint64_t>(c.seed));
  echo.add("ensure_connected", c.ensure_connected);
  echo.add("er_method", er.method == ERMethod::exact ? "exact" : "approximate");
  if (er.method == ERMethod::approximate) echo.add("tol", er.tolerance);

  stage("write", [&] {
    save_graph(gs, c.out, echo.lines());
    if (!c.er_csv.empty()) save_er_csv(g, er, c.er_csv, echo.lines());
    return 0;
  });
  std::cout << "sparsify: " << g.edge_count() << " -> " << gs.edge_count() << " edges (budget "
            << sparsify_budget(g.vertex_count(), c.factor) << ")\n";
  return 0;
}

struct LayoutCmd {
  GraphArgs graph;
  std::string algorithm = "force";
  LayoutArgs layout;
  std::string out;
  std::string out_drawing;
};

int run_layout(const LayoutCmd& c) {
  const Graph g = load_graph_checked(c.graph);
  const Drawing d = stage("layout", [&] {
    if (c.algorithm == "import") {
      if (c.layout.coords.empty())
        throw std::runtime_error("import layout requires --layout coordinates");
      return load_layout(c.layout.coords, g);
    }
    return compute_layout(g, layout_params(c.layout));
  });

  ConfigEcho echo;
  echo.add("command", "layout");
  echo.add("graph", c.graph.path);
  echo.add("algorithm", c.algorithm);
  echo_layout(echo, c.layout);

  stage("write", [&] {
    save_layout(d.positions, c.out, echo.lines());
    if (!c.out_drawing.empty()) save_drawing(d, c.out_drawing, echo.json());
    return 0;
  });
  std::cout << "layout: " << g.vertex_count() << " vertices placed\n";
  return 0;
}

struct BundleCmd {
  GraphArgs graph;
  std::string alg;
  LayoutArgs layout;
  BundlerArgs bundler;
  ErArgs er;
  std::string out;
  std::string svg;
};

int run_bundle(const BundleCmd& c) {
  const Graph g = load_graph_checked(c.graph);
  const Bundler b = *bundler_from_name(c.alg);
  const Drawing d = base_drawing(g, c.layout);
  ERMap er;
  if (b == Bundler::seb1 || b == Bundler::seb2) er = compute_er(g, c.er);

  double seconds = 0.0;
  const Drawing bundled =
      stage("bundle", [&] { return run_bundler(g, d, b, er, bundler_params(c.bundler), &seconds); });

  ConfigEcho echo;
  echo.add("command", "bundle");
  echo.add("graph", c.graph.path);
  echo_bundler(echo, b, c.bundler);
  echo_layout(echo, c.layout);

  stage("write", [&] {
    save_drawing(bundled, c.out, echo.json());
    if (!c.svg.empty()) write_text_atomic(c.svg, svg_with_config(bundled, {}, echo));
    return 0;
  });
  std::cout << "bundling_seconds=" << format_double(seconds) << "\n";
  return 0;
}

struct MetricsCmd {
  GraphArgs graph;
  std::string original;
  std::string bundled;
  std::vector<std::uint32_t> gammas{1, 2};
  DetectArgs detect;
  RasterArgs raster;
  std::string out_json;
  std::string out_csv;
};

int run_metrics(const MetricsCmd& c) {
  const Graph g = load_graph_checked(c.graph);
  const Drawing original = stage("load", [&] { return load_drawing(c.original); });
  const Drawing bundled = stage("load", [&] { return load_drawing(c.bundled); });
  stage("metrics", [&] {
    check_drawing_matches(g, original, "original");
    check_drawing_matches(g, bundled, "bundled");
    return 0;
  });

  const QualityResult q = stage("metrics", [&] {
    const RasterImage orig = rasterize(original, c.raster.width, c.raster.line_width,
                                       c.raster.binarize);
    return quality_report(g, orig, bundled, c.detect, c.raster);
  });
  MetricsReport report = q.report;
  const bool want1 = std::count(c.gammas.begin(), c.gammas.end(), 1u) > 0;
  const bool want2 = std::count(c.gammas.begin(), c.gammas.end(), 2u) > 0;
  if (!want1) report.amb1 = 0.0;
  if (!want2) report.amb2 = 0.0;

  ConfigEcho echo;
  echo.add("command", "metrics");
  echo.add("graph", c.graph.path);
  echo.add("original", c.original);
  echo.add("bundled", c.bundled);
  echo.add("gamma", [&] {
    std::string s;
    for (std::uint32_t x : c.gammas) s += (s.empty() ? "" : ",") + std::to_string(x);
    return s;
  }());
  echo.add("bundle_eps", c.detect.eps_frac);
  echo.add("bundle_tau", c.detect.tau);
  echo.add("raster_width", c.raster.width);
  echo.add("raster_line_width", c.raster.line_width);
  echo.add("binarize", c.raster.binarize);

  stage("write", [&] {
    if (!c.out_json.empty()) write_text_atomic(c.out_json, metrics_report_json(report, echo.json()));
    if (!c.out_csv.empty()) write_text_atomic(c.out_csv, metrics_report_csv(report, echo.lines()));
    return 0;
  });
  std::cout << "ink=" << format_double(report.ink) << " dist=" << format_double(report.distortion);
  if (want1) std::cout << " amb1=" << format_double(report.amb1);
  if (want2) std::cout << " amb2=" << format_double(report.amb2);
  std::cout << "\n";
  return 0;
}

struct FbqCmd {
  GraphArgs graph;
  std::string sparsified;
  std::string bundled;
  std::string bundled_prime;
  DetectArgs detect;
  std::string out_json;
  std::string out_csv;
};

int run_fbq(const FbqCmd& c) {
  const Graph g = load_graph_checked(c.graph);
  const Graph gp = stage("load", [&] {
    return load_graph(c.sparsified, c.graph.format == "mm" ? GraphFormat::matrix_market
                                                           : GraphFormat::edgelist);
  });
  const Drawing db = stage("load", [&] { return load_drawing(c.bundled); });
  const Drawing dbp = stage("load", [&] { return load_drawing(c.bundled_prime); });

  const auto [js, sq_dg, sq_cc] = stage("metrics", [&] {
    check_drawing_matches(g, db, "bundled");
    check_drawing_matches(gp, dbp, "bundled-prime");
    const BundleAssignment ab =
        detect_bundles(db, c.detect.eps_frac * drawing_diagonal(db), c.detect.tau,
                       c.detect.samples);
    const BundleAssignment abp =
        detect_bundles(dbp, c.detect.eps_frac * drawing_diagonal(dbp), c.detect.tau,
                       c.detect.samples);
    const GeometricGraph geo = geometric_graph(g, ab);
    const GeometricGraph geop = geometric_graph(gp, abp);
    return std::tuple{fbq_js(geo, geop),
                      fbq_sq(geo, geop, VertexProperty::avg_neighbor_degree),
                      fbq_sq(geo, geop, VertexProperty::local_clustering)};
  });

  ConfigEcho echo;
  echo.add("command", "fbq");
  echo.add("graph", c.graph.path);
  echo.add("sparsified", c.sparsified);
  echo.add("bundled", c.bundled);
  echo.add("bundled_prime", c.bundled_prime);
  echo.add("bundle_eps", c.detect.eps_frac);
  echo.add("bundle_tau", c.detect.tau);

  stage("write", [&] {
    if (!c.out_json.empty()) {
      nlohmann::ordered_json j;
      j["config"] = nlohmann::ordered_json::parse(echo.json());
      j["fbq_js"] = js;
      j["fbq_sq_dg"] = sq_dg;
      j["fbq_sq_cc"] = sq_cc;
      write_text_atomic(c.out_json, j.dump(2) + "\n");
    }
    if (!c.out_csv.empty()) {
      std::ostringstream csv;
      for (const std::string& l : echo.lines()) csv << "# " << l << "\n";
      csv << "fbq_js,fbq_sq_dg,fbq_sq_cc\n";
      csv << format_double(js) << "," << format_double(sq_dg) << "," << format_double(sq_cc)
          << "\n";
      write_text_atomic(c.out_csv, csv.str());
    }
    return 0;
  });
  std::cout << "fbq_js=" << format_double(js) << " fbq_sq_dg=" << format_double(sq_dg)
            << " fbq_sq_cc=" << format_double(sq_cc) << "\n";
  return 0;
}

struct CompareCmd {
  std::vector<std::string> datasets;  // name=graph[,layout]
  std::vector<std::string> bundlers;
  std::string format = "edgelist";
  std::uint32_t repeats = 3;
  double factor = 4.0;
  bool ensure_connected = true;
  LayoutArgs layout;
  BundlerArgs bundler;
  ErArgs er;
  DetectArgs detect;
  RasterArgs raster;
  std::string out;
};

struct DatasetSpec {
  std::string name;
  std::string graph_path;
  std::string layout_path;
};

DatasetSpec parse_dataset(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 >= s.size())
    throw std::runtime_error("dataset spec must look like name=graph[,layout]: " + s);
  DatasetSpec d;
  d.name = s.substr(0, eq);
  const std::string rest = s.substr(eq + 1);
  const auto comma = rest.find(',');
  d.graph_path = rest.substr(0, comma);
  if (comma != std::string::npos) d.layout_path = rest.substr(comma + 1);
  return d;
}

int run_compare(const CompareCmd& c) {
  std::vector<DatasetSpec> specs;
  stage("config", [&] {
    for (const std::string& s : c.datasets) specs.push_back(parse_dataset(s));
    return 0;
  });

  ConfigEcho echo;
  echo.add("command", "compare");
  echo.add("repeats", c.repeats);
  echo.add("factor", c.factor);
  echo.add("ensure_connected", c.ensure_connected);
  echo_layout(echo, c.layout);
  echo.add("er_method", c.er.method);
  echo.add("bundle_eps", c.detect.eps_frac);
  echo.add("bundle_tau", c.detect.tau);
  echo.add("raster_width", c.raster.width);

  std::ostringstream csv;
  for (const std::string& l : echo.lines()) csv << "# " << l << "\n";
  csv << "# direct rows carry the bundler's own quality metrics; f-prefixed rows carry the\n";
  csv << "# sparsify-first variant's metrics plus its faithfulness against the direct run\n";
  csv << "dataset,bundler,t_orig_s,t_feb_s,improvement,ink,dist,amb1,amb2,fbq_js,fbq_sq_dg,"
         "fbq_sq_cc\n";

  bool any_failed = false;
  const BundlerParams bp = bundler_params(c.bundler);
  for (const DatasetSpec& ds : specs) {
    try {
      const Graph g =
          load_graph(ds.graph_path,
                     c.format == "mm" ? GraphFormat::matrix_market : GraphFormat::edgelist);
      LayoutArgs la = c.layout;
      la.coords = ds.layout_path;
      const Drawing d0 = [&] {
        if (!la.coords.empty()) return load_layout(la.coords, g);
        return compute_layout(g, layout_params(la));
      }();
      const RasterImage raster0 =
          rasterize(d0, c.raster.width, c.raster.line_width, c.raster.binarize);

      std::optional<ERMap> er;  // computed once, only if a resistance variant runs
      for (const std::string& bname : c.bundlers) {
        const Bundler b = *bundler_from_name(bname);
        if ((b == Bundler::seb1 || b == Bundler::seb2) && !er) {
          const ERMethod m = c.er.method == "exact" ? ERMethod::exact
                             : c.er.method == "approximate"
                                 ? ERMethod::approximate
                                 : recommended_method(g.vertex_count());
          er = effective_resistances(g, m, c.er.tol);
        }

        std::vector<double> t_direct, t_feb;
        Drawing direct;
        for (std::uint32_t r = 0; r < c.repeats; ++r) {
          double sec = 0.0;
          direct = run_bundler(g, d0, b, er ? *er : ERMap{}, bp, &sec);
          t_direct.push_back(sec);
        }
        SparsifyParams sp;
        sp.factor = c.factor;
        sp.seed = c.layout.seed;
        sp.ensure_connected = c.ensure_connected;
        LayoutParams lp = layout_params(c.layout);
        FebResult feb;
        for (std::uint32_t r = 0; r < c.repeats; ++r) {
          feb = feb_pipeline(g, b, sp, lp, bp, &d0);
          t_feb.push_back(feb.bundling_seconds);
        }

        const double t_orig_s = median(t_direct);
        const double t_feb_s = median(t_feb);
        const double improvement = t_orig_s > 0.0 ? (t_orig_s - t_feb_s) / t_orig_s : 0.0;

        const QualityResult direct_q = quality_report(g, raster0, direct, c.detect, c.raster);
        const QualityResult feb_q =
            quality_report(feb.sparsified, raster0, feb.bundled, c.detect, c.raster);
        const double js = fbq_js(direct_q.geo, feb_q.geo);
        const double sq_dg =
            fbq_sq(direct_q.geo, feb_q.geo, VertexProperty::avg_neighbor_degree);
        const double sq_cc = fbq_sq(direct_q.geo, feb_q.geo, VertexProperty::local_clustering);

        auto row = [&](const std::string& name, const MetricsReport& rep, bool with_fbq) {
          csv << ds.name << "," << name << "," << format_double(t_orig_s) << ","
              << format_double(t_feb_s) << "," << format_double(improvement) << ","
              << format_double(rep.ink) << "," << format_double(rep.distortion) << ","
              << format_double(rep.amb1) << "," << format_double(rep.amb2) << ",";
          if (with_fbq)
            csv << format_double(js) << "," << format_double(sq_dg) << ","
                << format_double(sq_cc);
          else
            csv << ",,";
          csv << "\n";
        };
        row(bname, direct_q.report, false);
        row("f" + bname, feb_q.report, true);
      }
    } catch (const std::exception& e) {
      any_failed = true;
      csv << "# dataset " << ds.name << " FAILED: " << e.what() << "\n";
      std::cerr << "compare: dataset " << ds.name << " failed: " << e.what() << "\n";
    }
  }

  stage("write", [&] {
    write_text_atomic(c.out, csv.str());
    return 0;
  });
  std::cout << "compare: wrote " << c.out << (any_failed ? " (with failures)" : "") << "\n";
  return any_failed ? 1 : 0;
}

struct RenderCmd {
  std::string drawing;
  std::string out;
  std::string png;
  RasterArgs raster;
  double canvas = 1024.0;
  double alpha = 0.35;
  double line_width = 1.0;
  double vertex_radius = 2.0;
  std::string stroke = "#1f3a93";
  std::vector<std::uint32_t> highlight;
};

int run_render(const RenderCmd& c) {
  const Drawing d = stage("load", [&] { return load_drawing(c.drawing); });
  RenderStyle style;
  style.canvas_width = c.canvas;
  style.alpha = c.alpha;
  style.line_width = c.line_width;
  style.vertex_radius = c.vertex_radius;
  style.stroke = c.stroke;
  style.highlight = c.highlight;

  ConfigEcho echo;
  echo.add("command", "render");
  echo.add("drawing", c.drawing);
  echo.add("canvas", c.canvas);
  echo.add("alpha", c.alpha);
  echo.add("line_width", c.line_width);
  echo.add("vertex_radius", c.vertex_radius);

  stage("render", [&] {
    write_text_atomic(c.out, svg_with_config(d, style, echo));
    if (!c.png.empty()) {
      const RasterImage img = rasterize(d, c.raster.width, c.raster.line_width, c.raster.binarize);
      save_png(img, c.png, echo.line());
    }
    return 0;
  });
  std::cout << "render: wrote " << c.out << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  apply_thread_env();

  CLI::App app{"bundlekit: spectral sparsification, edge bundling, and bundling quality metrics"};
  app.set_config("--config", "", "Read options from a key=value file");
  bool dump_config = false;
  app.add_flag("--dump-config", dump_config, "Print the resolved configuration and exit");
  app.require_subcommand(0, 1);

  SparsifyCmd sparsify_cmd;
  {
    auto* cmd = app.add_subcommand("sparsify", "Spectrally sparsify a graph");
    add_graph_options(cmd, sparsify_cmd.graph);
    add_er_options(cmd, sparsify_cmd.er);
    cmd->add_option("--factor", sparsify_cmd.factor, "Edge budget factor c in ceil(c n ln n)")
        ->capture_default_str();
    cmd->add_option("--seed", sparsify_cmd.seed, "Sampling seed")->capture_default_str();
    cmd->add_flag("--ensure-connected,!--no-ensure-connected", sparsify_cmd.ensure_connected,
                  "Force-include a spanning forest")
        ->capture_default_str();
    cmd->add_option("--out", sparsify_cmd.out, "Output edge list")->required();
    cmd->add_option("--er-csv", sparsify_cmd.er_csv, "Also export resistances as CSV");
  }

  LayoutCmd layout_cmd;
  {
    auto* cmd = app.add_subcommand("layout", "Compute or import a straight-line layout");
    add_graph_options(cmd, layout_cmd.graph);
    cmd->add_option("--algorithm", layout_cmd.algorithm, "Layout algorithm")
        ->check(CLI::IsMember({"force", "import"}))
        ->capture_default_str();
    add_layout_options(cmd, layout_cmd.layout);
    cmd->add_option("--out", layout_cmd.out, "Output layout file 'v x y'")->required();
    cmd->add_option("--out-drawing", layout_cmd.out_drawing, "Also write the drawing as JSON");
  }

  BundleCmd bundle_cmd;
  {
    auto* cmd = app.add_subcommand("bundle", "Bundle a drawing with one algorithm");
    add_graph_options(cmd, bundle_cmd.graph);
    cmd->add_option("--alg", bundle_cmd.alg, "Bundling algorithm")
        ->required()
        ->check(CLI::IsMember({"fdeb", "seb1", "seb2", "epb", "sepb"}));
    add_layout_options(cmd, bundle_cmd.layout);
    add_bundler_options(cmd, bundle_cmd.bundler);
    add_er_options(cmd, bundle_cmd.er);
    cmd->add_option("--out", bundle_cmd.out, "Output drawing JSON")->required();
    cmd->add_option("--svg", bundle_cmd.svg, "Also render to SVG");
  }

  MetricsCmd metrics_cmd;
  {
    auto* cmd = app.add_subcommand("metrics", "Quality metrics for a bundled drawing");
    add_graph_options(cmd, metrics_cmd.graph);
    cmd->add_option("--original", metrics_cmd.original, "Straight-line drawing JSON")->required();
    cmd->add_option("--bundled", metrics_cmd.bundled, "Bundled drawing JSON")->required();
    cmd->add_option("--gamma", metrics_cmd.gammas, "Hop thresholds for ambiguity")
        ->delimiter(',')
        ->check(CLI::IsMember({1u, 2u}))
        ->capture_default_str();
    add_detect_options(cmd, metrics_cmd.detect);
    add_raster_options(cmd, metrics_cmd.raster);
    cmd->add_option("--out-json", metrics_cmd.out_json, "Write the report as JSON");
    cmd->add_option("--out-csv", metrics_cmd.out_csv, "Write the report as CSV");
  }

  FbqCmd fbq_cmd;
  {
    auto* cmd = app.add_subcommand("fbq", "Faithfulness of a sparsified bundling");
    add_graph_options(cmd, fbq_cmd.graph);
    cmd->add_option("--sparsified", fbq_cmd.sparsified, "Sparsified graph file")->required();
    cmd->add_option("--bundled", fbq_cmd.bundled, "Bundled drawing of the full graph")
        ->required();
    cmd->add_option("--bundled-prime", fbq_cmd.bundled_prime,
                    "Bundled drawing of the sparsified graph")
        ->required();
    add_detect_options(cmd, fbq_cmd.detect);
    cmd->add_option("--out-json", fbq_cmd.out_json, "Write the scores as JSON");
    cmd->add_option("--out-csv", fbq_cmd.out_csv, "Write the scores as CSV");
  }

  CompareCmd compare_cmd;
  {
    auto* cmd = app.add_subcommand("compare", "Direct vs sparsify-first benchmark per dataset");
    cmd->add_option("--dataset", compare_cmd.datasets, "Dataset spec name=graph[,layout]")
        ->required();
    cmd->add_option("--bundler", compare_cmd.bundlers, "Bundlers to compare")
        ->required()
        ->check(CLI::IsMember({"fdeb", "seb1", "seb2", "epb", "sepb"}));
    cmd->add_option("--format", compare_cmd.format, "Graph file format")
        ->check(CLI::IsMember({"edgelist", "mm"}))
        ->capture_default_str();
    cmd->add_option("--repeats", compare_cmd.repeats, "Timing repetitions (median reported)")
        ->capture_default_str();
    cmd->add_option("--factor", compare_cmd.factor, "Sparsification budget factor")
        ->capture_default_str();
    cmd->add_flag("--ensure-connected,!--no-ensure-connected", compare_cmd.ensure_connected,
                  "Force-include a spanning forest when sparsifying")
        ->capture_default_str();
    add_layout_options(cmd, compare_cmd.layout);
    add_bundler_options(cmd, compare_cmd.bundler);
    add_er_options(cmd, compare_cmd.er);
    add_detect_options(cmd, compare_cmd.detect);
    add_raster_options(cmd, compare_cmd.raster);
    cmd->add_option("--out", compare_cmd.out, "Output CSV")->required();
  }

  RenderCmd render_cmd;
  {
    auto* cmd = app.add_subcommand("render", "Render a drawing JSON to SVG/PNG");
    cmd->add_option("--drawing", render_cmd.drawing, "Drawing JSON")->required();
    cmd->add_option("--out", render_cmd.out, "Output SVG")->required();
    cmd->add_option("--png", render_cmd.png, "Also rasterize to PNG");
    add_raster_options(cmd, render_cmd.raster);
    cmd->add_option("--canvas", render_cmd.canvas, "SVG canvas width")->capture_default_str();
    cmd->add_option("--alpha", render_cmd.alpha, "Stroke opacity")->capture_default_str();
    cmd->add_option("--line-width", render_cmd.line_width, "Stroke width")->capture_default_str();
    cmd->add_option("--vertex-radius", render_cmd.vertex_radius, "Vertex circle radius (0 hides)")
        ->capture_default_str();
    cmd->add_option("--stroke", render_cmd.stroke, "Stroke color")->capture_default_str();
    cmd->add_option("--highlight", render_cmd.highlight, "Edge indices to emphasize")
        ->delimiter(',');
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (dump_config) {
    std::cout << app.config_to_str(true, true);
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 2;
  }

  try {
    if (app.got_subcommand("sparsify")) return run_sparsify(sparsify_cmd);
    if (app.got_subcommand("layout")) return run_layout(layout_cmd);
    if (app.got_subcommand("bundle")) return run_bundle(bundle_cmd);
    if (app.got_subcommand("metrics")) return run_metrics(metrics_cmd);
    if (app.got_subcommand("fbq")) return run_fbq(fbq_cmd);
    if (app.got_subcommand("compare")) return run_compare(compare_cmd);
    if (app.got_subcommand("render")) return run_render(render_cmd);
  } catch (const StageError& e) {
    std::cerr << "error [" << e.stage << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

namespace {
int run_with(const char* name, const std::vector<std::string>& args) {
  std::vector<std::string> full{name};
  full.insert(full.end(), args.begin(), args.end());
  return run(full);
}
}  // namespace

int cmd_sparsify(const std::vector<std::string>& args) { return run_with("sparsify", args); }
int cmd_layout(const std::vector<std::string>& args) { return run_with("layout", args); }
int cmd_bundle(const std::vector<std::string>& args) { return run_with("bundle", args); }
int cmd_metrics(const std::vector<std::string>& args) { return run_with("metrics", args); }
int cmd_fbq(const std::vector<std::string>& args) { return run_with("fbq", args); }
int cmd_compare(const std::vector<std::string>& args) { return run_with("compare", args); }
int cmd_render(const std::vector<std::string>& args) { return run_with("render", args); }

}  // namespace bundlekit::cli

#include "bundlekit/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace bundlekit {

namespace {

[[noreturn]] void fail_at(const std::string& name, std::size_t line, const std::string& msg) {
  throw std::runtime_error(name + ":" + std::to_string(line) + ": " + msg);
}

void strip_comment(std::string& line) {
  const auto pos = line.find('#');
  if (pos != std::string::npos) line.erase(pos);
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream iss(line);
  std::vector<std::string> toks;
  std::string t;
  while (iss >> t) toks.push_back(t);
  return toks;
}

std::uint32_t parse_vertex(const std::string& tok, const std::string& name, std::size_t line) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(tok, &used);
    if (used != tok.size() || tok[0] == '-') throw std::invalid_argument(tok);
    if (v > UINT32_MAX) throw std::out_of_range(tok);
    return static_cast<std::uint32_t>(v);
  } catch (const std::exception&) {
    fail_at(name, line, "expected vertex id, got '" + tok + "'");
  }
}

double parse_real(const std::string& tok, const std::string& name, std::size_t line) {
  try {
    std::size_t used = 0;
    const double x = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    if (!std::isfinite(x)) fail_at(name, line, "non-finite value '" + tok + "'");
    return x;
  } catch (const std::runtime_error&) {
    throw;
  } catch (const std::exception&) {
    fail_at(name, line, "expected number, got '" + tok + "'");
  }
}

Graph build_cleaned(std::uint32_t n, std::vector<Edge>& raw, const std::string& name,
                    GraphLoadReport* report) {
  GraphLoadReport local;
  std::vector<Edge> clean;
  clean.reserve(raw.size());
  std::map<std::pair<std::uint32_t, std::uint32_t>, bool> seen;
  for (Edge e : raw) {
    if (e.u == e.v) {
      ++local.dropped_self_loops;
      continue;
    }
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!seen.emplace(std::make_pair(e.u, e.v), true).second) {
      ++local.dropped_duplicate_edges;
      continue;
    }
    clean.push_back(e);
  }
  if (report) *report = local;
  if (clean.empty()) throw std::runtime_error(name + ": no edges after cleaning");
  return Graph(n, std::move(clean));
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Graph parse_edgelist(std::istream& in, const std::string& name, GraphLoadReport* report) {
  std::vector<Edge> raw;
  std::uint32_t declared_n = 0;
  bool have_header = false;
  bool saw_content = false;
  std::string line;
  std::size_t line_no = 0;
  std::uint32_t max_id = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_comment(line);
    auto toks = tokens_of(line);
    if (toks.empty()) continue;
    if (!saw_content && toks[0] == "%n") {
      if (toks.size() != 2) fail_at(name, line_no, "header needs exactly one count");
      declared_n = parse_vertex(toks[1], name, line_no);
      have_header = true;
      saw_content = true;
      continue;
    }
    saw_content = true;
    if (toks.size() < 2 || toks.size() > 3)
      fail_at(name, line_no, "expected 'u v [w]', got " + std::to_string(toks.size()) + " fields");
    Edge e;
    e.u = parse_vertex(toks[0], name, line_no);
    e.v = parse_vertex(toks[1], name, line_no);
    e.w = toks.size() == 3 ? parse_real(toks[2], name, line_no) : 1.0;
    if (!(e.w > 0.0)) fail_at(name, line_no, "edge weight must be positive");
    max_id = std::max({max_id, e.u, e.v});
    raw.push_back(e);
  }
  if (raw.empty()) throw std::runtime_error(name + ": no edges");
  std::uint32_t n = max_id + 1;
  if (have_header) {
    if (declared_n < n)
      throw std::runtime_error(name + ": header declares " + std::to_string(declared_n) +
                               " vertices but ids reach " + std::to_string(max_id));
    n = declared_n;
  }
  return build_cleaned(n, raw, name, report);
}

Graph parse_matrix_market(std::istream& in, const std::string& name, GraphLoadReport* report) {
  std::string line;
  std::size_t line_no = 0;
  bool pattern = false;
  if (!std::getline(in, line)) throw std::runtime_error(name + ": empty file");
  ++line_no;
  {
    auto toks = tokens_of(line);
    if (toks.size() < 4 || toks[0] != "%%MatrixMarket" || toks[1] != "matrix" ||
        toks[2] != "coordinate")
      fail_at(name, line_no, "expected '%%MatrixMarket matrix coordinate ...' banner");
    pattern = toks[3] == "pattern";
  }
  std::uint64_t rows = 0, cols = 0, nnz = 0;
  bool have_size = false;
  std::vector<Edge> raw;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '%') continue;
    auto toks = tokens_of(line);
    if (toks.empty()) continue;
    if (!have_size) {
      if (toks.size() != 3) fail_at(name, line_no, "expected 'rows cols nnz' size line");
      rows = parse_vertex(toks[0], name, line_no);
      cols = parse_vertex(toks[1], name, line_no);
      nnz = parse_vertex(toks[2], name, line_no);
      have_size = true;
      continue;
    }
    const std::size_t want = pattern ? 2 : 3;
    if (toks.size() != want)
      fail_at(name, line_no, "expected " + std::to_string(want) + " fields");
    Edge e;
    const std::uint32_t i = parse_vertex(toks[0], name, line_no);
    const std::uint32_t j = parse_vertex(toks[1], name, line_no);
    if (i == 0 || j == 0) fail_at(name, line_no, "Matrix Market indices are 1-based");
    e.u = i - 1;
    e.v = j - 1;
    e.w = pattern ? 1.0 : parse_real(toks[2], name, line_no);
    if (!(e.w > 0.0)) {
      if (e.w < 0.0) fail_at(name, line_no, "edge weight must be positive");
      continue;  // explicit zero entry carries no edge
    }
    raw.push_back(e);
  }
  if (!have_size) throw std::runtime_error(name + ": missing size line");
  (void)nnz;
  if (raw.empty()) throw std::runtime_error(name + ": no edges");
  const std::uint32_t n = static_cast<std::uint32_t>(std::max(rows, cols));
  for (const Edge& e : raw)
    if (e.u >= n || e.v >= n)
      throw std::runtime_error(name + ": entry outside declared dimensions");
  return build_cleaned(n, raw, name, report);
}

Graph load_graph(const std::string& path, GraphFormat format, GraphLoadReport* report) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  return format == GraphFormat::edgelist ? parse_edgelist(in, path, report)
                                         : parse_matrix_market(in, path, report);
}

void save_graph(const Graph& g, const std::string& path,
                const std::vector<std::string>& header) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  for (const std::string& h : header) out << "# " << h << "\n";
  out << "%n " << g.vertex_count() << "\n";
  for (const Edge& e : g.edges())
    out << e.u << " " << e.v << " " << format_double(e.w) << "\n";
  if (!out) throw std::runtime_error(path + ": write failed");
}

Drawing load_layout(const std::string& path, const Graph& g, std::uint32_t* duplicate_rows) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  std::vector<Vec2> pos(g.vertex_count());
  std::vector<bool> have(g.vertex_count(), false);
  std::uint32_t dups = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_comment(line);
    auto toks = tokens_of(line);
    if (toks.empty()) continue;
    if (toks.size() != 3) fail_at(path, line_no, "expected 'v x y'");
    const std::uint32_t v = parse_vertex(toks[0], path, line_no);
    if (v >= g.vertex_count())
      fail_at(path, line_no, "vertex " + std::to_string(v) + " not in graph");
    const double x = parse_real(toks[1], path, line_no);
    const double y = parse_real(toks[2], path, line_no);
    if (have[v]) ++dups;
    have[v] = true;
    pos[v] = {x, y};
  }
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
    if (!have[v]) throw std::runtime_error(path + ": missing position for vertex " + std::to_string(v));
  if (duplicate_rows) *duplicate_rows = dups;
  return straight_drawing(g, std::move(pos));
}

void save_layout(const std::vector<Vec2>& positions, const std::string& path,
                 const std::vector<std::string>& header) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  for (const std::string& h : header) out << "# " << h << "\n";
  for (std::size_t v = 0; v < positions.size(); ++v)
    out << v << " " << format_double(positions[v].x) << " " << format_double(positions[v].y)
        << "\n";
  if (!out) throw std::runtime_error(path + ": write failed");
}

void save_drawing(const Drawing& d, const std::string& path, const std::string& config_json) {
  validate_drawing(d);
  nlohmann::ordered_json j;
  if (!config_json.empty()) j["config"] = nlohmann::ordered_json::parse(config_json);
  auto& positions = j["positions"] = nlohmann::ordered_json::array();
  for (const Vec2& p : d.positions) positions.push_back({p.x, p.y});
  auto& polylines = j["polylines"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    nlohmann::ordered_json rec;
    rec["edge"] = {d.edges[i].first, d.edges[i].second};
    auto& pts = rec["points"] = nlohmann::ordered_json::array();
    for (const Vec2& p : d.polylines[i]) pts.push_back({p.x, p.y});
    polylines.push_back(std::move(rec));
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error(path + ": write failed");
}

Drawing load_drawing(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  Drawing d;
  try {
    for (const auto& p : j.at("positions"))
      d.positions.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    for (const auto& rec : j.at("polylines")) {
      const auto& e = rec.at("edge");
      d.edges.emplace_back(e.at(0).get<std::uint32_t>(), e.at(1).get<std::uint32_t>());
      Polyline pl;
      for (const auto& p : rec.at("points"))
        pl.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
      d.polylines.push_back(std::move(pl));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  validate_drawing(d);
  return d;
}

}  // namespace bundlekit

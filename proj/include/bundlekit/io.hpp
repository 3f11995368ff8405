#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bundlekit/drawing.hpp"
#include "bundlekit/graph.hpp"

namespace bundlekit {

enum class GraphFormat { edgelist, matrix_market };

// Counts of records cleaned away while loading; not errors.
struct GraphLoadReport {
  std::uint32_t dropped_self_loops = 0;
  std::uint32_t dropped_duplicate_edges = 0;
};

// Edge list: whitespace-separated "u v [w]" lines, '#' starts a comment,
// optional leading "%n <count>" header declares the vertex count (needed to
// keep isolated vertices). Matrix Market: coordinate format, pattern or
// real, 1-based indices. Self-loops and repeated (u,v) pairs are dropped and
// counted in `report`. Parse failures throw with "path:line:" prefixes.
Graph load_graph(const std::string& path, GraphFormat format = GraphFormat::edgelist,
                 GraphLoadReport* report = nullptr);
Graph parse_edgelist(std::istream& in, const std::string& name, GraphLoadReport* report = nullptr);
Graph parse_matrix_market(std::istream& in, const std::string& name,
                          GraphLoadReport* report = nullptr);

// Writes "%n <count>" followed by canonical "u v w" lines at full precision,
// so loading the file back reproduces the edge list exactly. Entries of
// `header` become leading '#' comment lines.
void save_graph(const Graph& g, const std::string& path,
                const std::vector<std::string>& header = {});

// Layout file of "v x y" lines. Every vertex of `g` needs a row; a repeated
// vertex keeps the last row (counted in duplicate_rows). Returns a
// straight-line drawing.
Drawing load_layout(const std::string& path, const Graph& g,
                    std::uint32_t* duplicate_rows = nullptr);
void save_layout(const std::vector<Vec2>& positions, const std::string& path,
                 const std::vector<std::string>& header = {});

// Drawing JSON: {"positions": [[x,y],...], "polylines": [{"edge": [u,v],
// "points": [[x,y],...]}, ...]}. An optional "config" object carries the
// settings that produced the file; loaders ignore it. Coordinates round-trip
// bitwise.
void save_drawing(const Drawing& d, const std::string& path, const std::string& config_json = "");
Drawing load_drawing(const std::string& path);

// Full-precision decimal text for a double; parses back to the same bits.
std::string format_double(double x);

}  // namespace bundlekit

#include <sstream>
#include <stdexcept>

#include "doctest.h"

#include "bundlekit/force_bundle.hpp"
#include "bundlekit/io.hpp"
#include "bundlekit/layout.hpp"
#include "support/fixtures.hpp"

using namespace bundlekit;
namespace bt = bundlekit::testing;

namespace {
const bt::TempDir& tmp() {
  static bt::TempDir dir("io");
  return dir;
}
}  // namespace

TEST_CASE("edge list: three lines make a triangle") {
  std::istringstream in("0 1\n1 2\n2 0\n");
  const Graph g = parse_edgelist(in, "mem");
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 3);
  for (const Edge& e : g.edges()) CHECK(e.w == 1.0);
}

TEST_CASE("edge list: comments, weights, vertex-count header") {
  std::istringstream in("# comment\n%n 5\n0 1 2.5\n1 2\n");
  const Graph g = parse_edgelist(in, "mem");
  CHECK(g.vertex_count() == 5);  // header keeps isolated vertices 3, 4
  CHECK(g.edge(0).w == 2.5);
}

TEST_CASE("edge list: cleaning drops self-loops and duplicates with counts") {
  std::istringstream in("0 0\n0 1\n1 0 3.0\n1 2\n");
  GraphLoadReport rep;
  const Graph g = parse_edgelist(in, "mem", &rep);
  CHECK(g.edge_count() == 2);
  CHECK(rep.dropped_self_loops == 1);
  CHECK(rep.dropped_duplicate_edges == 1);  // first (0,1) row wins
  CHECK(g.edge(0).w == 1.0);
}

TEST_CASE("edge list: only self-loops leaves nothing") {
  std::istringstream in("0 0\n");
  CHECK_THROWS_WITH_AS(parse_edgelist(in, "mem"), doctest::Contains("no edges"),
                       std::runtime_error);
}

TEST_CASE("edge list: malformed rows name the line") {
  std::istringstream bad("0 1\nxyz 2\n");
  CHECK_THROWS_WITH_AS(parse_edgelist(bad, "f.txt"), doctest::Contains("f.txt:2"),
                       std::runtime_error);
  std::istringstream low("%n 2\n0 5\n");
  CHECK_THROWS_AS(parse_edgelist(low, "mem"), std::runtime_error);
}

TEST_CASE("graph save/load round-trips exactly") {
  const Graph g(4, {{0, 1, 0.1}, {1, 2, 1e-17}, {2, 3, 12345.678901234567}});
  const std::string path = tmp().path("roundtrip.txt");
  save_graph(g, path, {"k=v"});
  CHECK(bt::read_file(path).rfind("# k=v\n", 0) == 0);
  const Graph back = load_graph(path);
  CHECK(bt::same_edge_sets(g, back));
}

TEST_CASE("matrix market: pattern and real, 1-based") {
  std::istringstream in(
      "%%MatrixMarket matrix coordinate pattern symmetric\n"
      "% comment\n"
      "3 3 2\n1 2\n2 3\n");
  const Graph g = parse_matrix_market(in, "mem");
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.edge(0).u == 0);

  std::istringstream real(
      "%%MatrixMarket matrix coordinate real general\n3 3 2\n1 2 0.5\n1 3 0\n");
  const Graph gr = parse_matrix_market(real, "mem");
  CHECK(gr.edge_count() == 1);  // explicit zero entry skipped
  CHECK(gr.edge(0).w == 0.5);

  std::istringstream bad("not a banner\n1 1 0\n");
  CHECK_THROWS_AS(parse_matrix_market(bad, "mem"), std::runtime_error);
}

TEST_CASE("layout file: passthrough, missing vertex, duplicate rows") {
  const Graph g = bt::k3();
  const std::string path = tmp().path("layout.xy");

  bt::write_file(path, "0 0 0\n1 1 0\n2 0 1\n");
  const Drawing d = load_layout(path, g);
  REQUIRE(d.positions.size() == 3);
  CHECK(d.positions[1] == Vec2{1, 0});
  REQUIRE(d.polylines.size() == 3);
  for (const Polyline& p : d.polylines) CHECK(p.size() == 2);

  bt::write_file(path, "0 0 0\n1 1 0\n");
  CHECK_THROWS_WITH_AS(load_layout(path, g), doctest::Contains("2"), std::runtime_error);

  bt::write_file(path, "0 9 9\n0 0 0\n1 1 0\n2 0 1\n");
  std::uint32_t dups = 0;
  const Drawing d2 = load_layout(path, g, &dups);
  CHECK(dups == 1);
  CHECK(d2.positions[0] == Vec2{0, 0});  // last row wins
}

TEST_CASE("layout save/load round-trips bitwise") {
  const std::vector<Vec2> pos{{0.1, 0.2}, {1e-300, -5.5}, {3.14159265358979, 2.0}};
  const std::string path = tmp().path("rt.xy");
  save_layout(pos, path);
  const Drawing back = load_layout(path, bt::k3());
  for (std::size_t i = 0; i < pos.size(); ++i) CHECK(back.positions[i] == pos[i]);
}

TEST_CASE("drawing JSON round-trips bitwise") {
  bt::SquareDiagonal fx;
  const std::string path = tmp().path("drawing.json");
  save_drawing(fx.drawing, path, "{\"k\":1}");
  const Drawing back = load_drawing(path);
  CHECK(bt::same_polylines(fx.drawing, back));
  CHECK(back.positions == fx.drawing.positions);
  CHECK(back.edges == fx.drawing.edges);

  SUBCASE("empty polyline record is rejected") {
    bt::write_file(path,
                   R"({"positions": [[0,0],[1,1]], "polylines": [{"edge": [0,1], "points": []}]})");
    CHECK_THROWS_AS(load_drawing(path), std::exception);
  }
}

TEST_CASE("10k curved polylines round-trip field by field") {
  const Graph g = bt::random_connected_graph(150, 10000, 7);
  LayoutParams lp;
  lp.iterations = 10;
  FdebParams fp;
  fp.cycles = 2;
  fp.iterations_per_cycle = 3;
  fp.compatibility_threshold = 0.3;
  const Drawing bundled = fdeb_bundle(compute_layout(g, lp), fp);
  REQUIRE(bundled.polylines.size() == 10000);
  const std::string path = tmp().path("big.json");
  save_drawing(bundled, path);
  CHECK(bt::same_polylines(bundled, load_drawing(path)));
}

TEST_CASE("full-precision doubles survive the text round-trip") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -0.0, 2.0}) {
    const double back = std::stod(format_double(x));
    CHECK(back == x);
  }
}

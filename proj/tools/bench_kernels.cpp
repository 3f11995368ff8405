#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <vector>

#include "CLI11.hpp"

#include "bundlekit/force_bundle.hpp"
#include "bundlekit/graph.hpp"
#include "bundlekit/layout.hpp"
#include "bundlekit/parallel.hpp"
#include "bundlekit/rng.hpp"

namespace bk = bundlekit;

namespace {

bk::Graph random_connected_graph(std::uint32_t n, std::uint32_t m, std::uint64_t seed) {
  bk::SeededRng rng(bk::SeededRng::mix(seed));
  std::vector<bk::Edge> edges;
  for (std::uint32_t v = 1; v < n; ++v)
    edges.push_back({static_cast<std::uint32_t>(rng.next_index(v)), v, 1.0});
  std::vector<std::vector<bool>> seen(n);
  for (auto& row : seen) row.assign(n, false);
  for (const auto& e : edges) seen[e.u][e.v] = true;
  while (edges.size() < m) {
    const auto a = static_cast<std::uint32_t>(rng.next_index(n));
    const auto b = static_cast<std::uint32_t>(rng.next_index(n));
    if (a == b) continue;
    const auto u = std::min(a, b), v = std::max(a, b);
    if (seen[u][v]) continue;
    seen[u][v] = true;
    edges.push_back({u, v, 1.0});
  }
  return bk::Graph(n, edges);
}

template <typename F>
double median_seconds(std::uint32_t repeats, F&& f) {
  std::vector<double> times;
  for (std::uint32_t r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double>(t1 - t0).count());
  }
  std::sort(times.begin(), times.end());
  const std::size_t k = times.size();
  return k % 2 ? times[k / 2] : 0.5 * (times[k / 2 - 1] + times[k / 2]);
}

bool same_bytes(const bk::Drawing& a, const bk::Drawing& b) {
  if (a.polylines.size() != b.polylines.size()) return false;
  for (std::size_t i = 0; i < a.polylines.size(); ++i) {
    if (a.polylines[i].size() != b.polylines[i].size()) return false;
    for (std::size_t j = 0; j < a.polylines[i].size(); ++j)
      if (!(a.polylines[i][j] == b.polylines[i][j])) return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark the parallel kernels against the serial reference"};
  std::uint32_t n = 200, m = 1200, repeats = 3, threads = 0;
  std::uint64_t seed = 1;
  app.add_option("--vertices", n, "Graph size")->capture_default_str();
  app.add_option("--edges", m, "Edge count")->capture_default_str();
  app.add_option("--repeats", repeats, "Repetitions per kernel (median reported)")
      ->capture_default_str();
  app.add_option("--threads", threads, "Worker count for the parallel runs (0 = all)")
      ->capture_default_str();
  app.add_option("--seed", seed, "Graph and layout seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  bk::apply_thread_env();
  if (threads > 0) bk::set_max_threads(static_cast<int>(threads));

  const bk::Graph g = random_connected_graph(n, m, seed);
  bk::LayoutParams lp;
  lp.seed = seed;
  lp.iterations = 50;
  const bk::Drawing base = bk::compute_layout(g, lp, nullptr, bk::Exec::serial);

  bk::FdebParams fp;
  fp.cycles = 4;
  fp.iterations_per_cycle = 30;

  std::cout << "kernel,exec,threads,median_s,speedup,identical\n";

  bk::Drawing fdeb_serial, fdeb_parallel;
  const double t_fdeb_s = median_seconds(
      repeats, [&] { fdeb_serial = bk::fdeb_bundle(base, fp, bk::Exec::serial); });
  const double t_fdeb_p = median_seconds(
      repeats, [&] { fdeb_parallel = bk::fdeb_bundle(base, fp, bk::Exec::openmp); });
  std::cout << "fdeb,serial,1," << t_fdeb_s << ",1,\n";
  std::cout << "fdeb,openmp," << bk::max_threads() << "," << t_fdeb_p << ","
            << (t_fdeb_p > 0 ? t_fdeb_s / t_fdeb_p : 0.0) << ","
            << (same_bytes(fdeb_serial, fdeb_parallel) ? "yes" : "NO") << "\n";

  bk::Drawing lay_serial, lay_parallel;
  const double t_lay_s = median_seconds(
      repeats, [&] { lay_serial = bk::compute_layout(g, lp, nullptr, bk::Exec::serial); });
  const double t_lay_p = median_seconds(
      repeats, [&] { lay_parallel = bk::compute_layout(g, lp, nullptr, bk::Exec::openmp); });
  const bool lay_same = lay_serial.positions.size() == lay_parallel.positions.size() &&
                        std::equal(lay_serial.positions.begin(), lay_serial.positions.end(),
                                   lay_parallel.positions.begin());
  std::cout << "layout,serial,1," << t_lay_s << ",1,\n";
  std::cout << "layout,openmp," << bk::max_threads() << "," << t_lay_p << ","
            << (t_lay_p > 0 ? t_lay_s / t_lay_p : 0.0) << "," << (lay_same ? "yes" : "NO")
            << "\n";
  return 0;
}

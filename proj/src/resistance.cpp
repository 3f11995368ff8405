#include "bundlekit/resistance.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "bundlekit/io.hpp"
#include "bundlekit/rng.hpp"

namespace bundlekit {

namespace {

// Fixed stream for the projection signs: the approximate method has no seed
// parameter, so its randomness is an internal constant and repeated calls
// agree byte for byte.
constexpr std::uint64_t kSketchStream = 0x5eedba110c8edULL;

double sketch_sign(std::uint32_t edge, std::uint32_t row) {
  const std::uint64_t h =
      SeededRng::mix(kSketchStream ^ (static_cast<std::uint64_t>(edge) << 20) ^ row);
  return (h >> 63) ? 1.0 : -1.0;
}

struct ComponentIndex {
  std::vector<std::uint32_t> local;  // graph vertex -> local index, n entries
  // Per component: vertices in ascending order (from Graph::components()).
};

ComponentIndex local_indices(const Graph& g) {
  ComponentIndex idx;
  idx.local.assign(g.vertex_count(), 0);
  for (const auto& verts : g.components())
    for (std::uint32_t i = 0; i < verts.size(); ++i) idx.local[verts[i]] = i;
  return idx;
}

void exact_component(const Graph& g, const std::vector<std::uint32_t>& verts,
                     const std::vector<std::uint32_t>& local, std::vector<double>& raw) {
  const std::uint32_t nc = static_cast<std::uint32_t>(verts.size());
  if (nc < 2) return;
  // Ground the last vertex: drop its row/column and invert the rest.
  const std::uint32_t dim = nc - 1;
  const std::uint32_t ground = verts.back();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(dim, dim);
  std::vector<std::uint32_t> comp_edges;
  for (std::uint32_t v : verts) {
    for (const AdjEntry& a : g.neighbors(v)) {
      const Edge& e = g.edge(a.edge);
      if (e.u != v) continue;  // visit each edge once, from its lower endpoint
      comp_edges.push_back(a.edge);
      const std::uint32_t iu = local[e.u], iv = local[e.v];
      if (e.u != ground) lap(iu, iu) += e.w;
      if (e.v != ground) lap(iv, iv) += e.w;
      if (e.u != ground && e.v != ground) {
        lap(iu, iv) -= e.w;
        lap(iv, iu) -= e.w;
      }
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(lap);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("effective resistance: reduced Laplacian factorization failed");
  const Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(dim, dim));

  const std::int64_t ec = static_cast<std::int64_t>(comp_edges.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < ec; ++i) {
    const Edge& e = g.edge(comp_edges[i]);
    const std::uint32_t iu = local[e.u], iv = local[e.v];
    double r;
    if (e.v == ground)
      r = inv(iu, iu);
    else if (e.u == ground)
      r = inv(iv, iv);
    else
      r = inv(iu, iu) + inv(iv, iv) - 2.0 * inv(iu, iv);
    raw[comp_edges[i]] = r;
  }
}

void approx_component(const Graph& g, const std::vector<std::uint32_t>& verts,
                      const std::vector<std::uint32_t>& local, std::uint32_t k,
                      std::vector<double>& raw) {
  const std::uint32_t nc = static_cast<std::uint32_t>(verts.size());
  if (nc < 2) return;
  const std::uint32_t dim = nc - 1;
  const std::uint32_t ground = verts.back();

  std::vector<std::uint32_t> comp_edges;
  std::vector<Eigen::Triplet<double>> trips;
  for (std::uint32_t v : verts) {
    for (const AdjEntry& a : g.neighbors(v)) {
      const Edge& e = g.edge(a.edge);
      if (e.u != v) continue;
      comp_edges.push_back(a.edge);
      const std::uint32_t iu = local[e.u], iv = local[e.v];
      if (e.u != ground) trips.emplace_back(iu, iu, e.w);
      if (e.v != ground) trips.emplace_back(iv, iv, e.w);
      if (e.u != ground && e.v != ground) {
        trips.emplace_back(iu, iv, -e.w);
        trips.emplace_back(iv, iu, -e.w);
      }
    }
  }
  Eigen::SparseMatrix<double> lap(dim, dim);
  lap.setFromTriplets(trips.begin(), trips.end());
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> solver;
  solver.compute(lap);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("effective resistance: sparse factorization failed");

  // Row i of the sketch solves L_g z = y_i with y_i = sum_e s_ie sqrt(w_e)/sqrt(k) (chi_u - chi_v).
  std::vector<std::vector<double>> z(k);
  const double inv_sqrt_k = 1.0 / std::sqrt(static_cast<double>(k));
  const std::int64_t kk = k;
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < kk; ++i) {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(dim);
    for (std::uint32_t ce : comp_edges) {
      const Edge& e = g.edge(ce);
      const double s = sketch_sign(ce, static_cast<std::uint32_t>(i)) * std::sqrt(e.w) * inv_sqrt_k;
      if (e.u != ground) y[local[e.u]] += s;
      if (e.v != ground) y[local[e.v]] -= s;
    }
    Eigen::VectorXd sol = solver.solve(y);
    z[i].assign(sol.data(), sol.data() + dim);
  }

  const std::int64_t ec = static_cast<std::int64_t>(comp_edges.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < ec; ++j) {
    const Edge& e = g.edge(comp_edges[j]);
    double acc = 0.0;
    for (std::uint32_t i = 0; i < k; ++i) {
      const double zu = e.u == ground ? 0.0 : z[i][local[e.u]];
      const double zv = e.v == ground ? 0.0 : z[i][local[e.v]];
      const double d = zu - zv;
      acc += d * d;
    }
    raw[comp_edges[j]] = acc;
  }
}

}  // namespace

ERMethod recommended_method(std::uint32_t vertex_count) {
  return vertex_count <= 2000 ? ERMethod::exact : ERMethod::approximate;
}

void normalize_er(ERMap& er) {
  er.normalized.assign(er.raw.size(), 1.0);
  if (er.raw.empty()) return;
  const auto [lo, hi] = std::minmax_element(er.raw.begin(), er.raw.end());
  const double min = *lo, max = *hi;
  if (max > min)
    for (std::size_t i = 0; i < er.raw.size(); ++i)
      er.normalized[i] = (er.raw[i] - min) / (max - min);
}

ERMap effective_resistances(const Graph& g, ERMethod method, double tol, std::uint32_t exact_cap) {
  if (g.vertex_count() == 0) throw std::invalid_argument("effective resistance: empty graph");
  ERMap er;
  er.method = method;
  er.tolerance = method == ERMethod::approximate ? tol : 0.0;
  er.raw.assign(g.edge_count(), 0.0);
  const auto idx = local_indices(g);
  if (method == ERMethod::exact) {
    for (const auto& verts : g.components()) {
      if (verts.size() > exact_cap)
        throw std::runtime_error("effective resistance: component of " +
                                 std::to_string(verts.size()) +
                                 " vertices exceeds the exact-method cap of " +
                                 std::to_string(exact_cap) + "; use the approximate method");
      exact_component(g, verts, idx.local, er.raw);
    }
  } else {
    if (!(tol > 0.0)) throw std::invalid_argument("effective resistance: tol must be positive");
    const double n = std::max<double>(2.0, g.vertex_count());
    const std::uint32_t k =
        static_cast<std::uint32_t>(std::ceil(24.0 * std::log(n) / (tol * tol)));
    for (const auto& verts : g.components()) approx_component(g, verts, idx.local, k, er.raw);
  }
  for (double r : er.raw)
    if (!(std::isfinite(r)))
      throw std::runtime_error("effective resistance: non-finite value computed");
  normalize_er(er);
  return er;
}

ERMap restrict_er(const ERMap& parent_er, const Graph& parent, const Graph& subgraph) {
  ERMap er;
  er.method = parent_er.method;
  er.tolerance = parent_er.tolerance;
  er.raw.reserve(subgraph.edge_count());
  for (const Edge& e : subgraph.edges()) {
    const auto i = parent.edge_index(e.u, e.v);
    if (!i) throw std::invalid_argument("restrict_er: subgraph edge missing from parent");
    er.raw.push_back(parent_er.raw[*i]);
  }
  normalize_er(er);
  return er;
}

std::vector<double> foster_residuals(const Graph& g, const ERMap& er) {
  std::vector<double> sums(g.component_count(), 0.0);
  for (std::uint32_t i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edge(i);
    sums[g.component_of(e.u)] += e.w * er.raw[i];
  }
  std::vector<double> res(g.component_count(), 0.0);
  for (std::uint32_t c = 0; c < g.component_count(); ++c) {
    const double expect = static_cast<double>(g.components()[c].size()) - 1.0;
    res[c] = std::abs(sums[c] - expect);
  }
  return res;
}

void save_er_csv(const Graph& g, const ERMap& er, const std::string& path,
                 const std::vector<std::string>& header) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  for (const std::string& h : header) out << "# " << h << "\n";
  out << "u,v,raw,normalized\n";
  for (std::uint32_t i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edge(i);
    out << e.u << "," << e.v << "," << format_double(er.raw[i]) << ","
        << format_double(er.normalized[i]) << "\n";
  }
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace bundlekit

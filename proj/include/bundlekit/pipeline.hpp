#pragma once

#include <optional>
#include <string>

#include "bundlekit/drawing.hpp"
#include "bundlekit/epb.hpp"
#include "bundlekit/force_bundle.hpp"
#include "bundlekit/graph.hpp"
#include "bundlekit/layout.hpp"
#include "bundlekit/sparsify.hpp"

namespace bundlekit {

enum class Bundler { fdeb, seb1, seb2, epb, sepb };

const char* bundler_name(Bundler b);
std::optional<Bundler> bundler_from_name(const std::string& name);

struct BundlerParams {
  FdebParams force;  // fdeb, seb1, seb2
  EpbParams path;    // epb, sepb
};

struct FebResult {
  Drawing bundled;
  Graph sparsified;
  double bundling_seconds = 0.0;  // bundling stage only, excludes ER/layout/IO
};

// Applies one bundler to an existing straight-line drawing. Resistance
// variants take their normalized values from `er` (computed on the drawing's
// graph). Wall time of the bundler call lands in `seconds` when given.
Drawing run_bundler(const Graph& g, const Drawing& d, Bundler bundler, const ERMap& er,
                    const BundlerParams& bp, double* seconds = nullptr);

// Sparsify-first pipeline: G' = spectral_sparsify(G) using resistances of G,
// D' = layout of G' (positions copied from `base` when lp.reuse_positions and
// a base drawing is supplied), bundled = bundler on D'. The resistance
// variants bundle G' with G's resistances restricted to the surviving edges
// and re-normalized. Only the bundling stage is timed.
FebResult feb_pipeline(const Graph& g, Bundler bundler, const SparsifyParams& sp,
                       const LayoutParams& lp, const BundlerParams& bp,
                       const Drawing* base = nullptr);

}  // namespace bundlekit

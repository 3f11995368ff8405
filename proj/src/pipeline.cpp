#include "bundlekit/pipeline.hpp"

#include <chrono>
#include <stdexcept>

namespace bundlekit {

namespace {

double now_seconds() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

const char* bundler_name(Bundler b) {
  switch (b) {
    case Bundler::fdeb: return "fdeb";
    case Bundler::seb1: return "seb1";
    case Bundler::seb2: return "seb2";
    case Bundler::epb: return "epb";
    case Bundler::sepb: return "sepb";
  }
  return "?";
}

std::optional<Bundler> bundler_from_name(const std::string& name) {
  if (name == "fdeb") return Bundler::fdeb;
  if (name == "seb1") return Bundler::seb1;
  if (name == "seb2") return Bundler::seb2;
  if (name == "epb") return Bundler::epb;
  if (name == "sepb") return Bundler::sepb;
  return std::nullopt;
}

Drawing run_bundler(const Graph& g, const Drawing& d, Bundler bundler, const ERMap& er,
                    const BundlerParams& bp, double* seconds) {
  const double t0 = now_seconds();
  Drawing out;
  switch (bundler) {
    case Bundler::fdeb:
      out = fdeb_bundle(d, bp.force);
      break;
    case Bundler::seb1:
      out = seb_bundle(d, er, SebVariant::er1, bp.force);
      break;
    case Bundler::seb2:
      out = seb_bundle(d, er, SebVariant::er2, bp.force);
      break;
    case Bundler::epb:
      out = epb_bundle(g, d, bp.path);
      break;
    case Bundler::sepb:
      out = sepb_bundle(g, d, bp.path);
      break;
  }
  if (seconds) *seconds = now_seconds() - t0;
  return out;
}

FebResult feb_pipeline(const Graph& g, Bundler bundler, const SparsifyParams& sp,
                       const LayoutParams& lp, const BundlerParams& bp, const Drawing* base) {
  const ERMap er = effective_resistances(g, recommended_method(g.vertex_count()));
  FebResult result;
  result.sparsified = spectral_sparsify(g, er, sp);
  const Graph& gs = result.sparsified;

  Drawing ds;
  if (lp.reuse_positions && base) {
    if (base->positions.size() != gs.vertex_count())
      throw std::invalid_argument("feb_pipeline: base drawing does not cover the vertex set");
    ds = straight_drawing(gs, base->positions);
  } else {
    ds = compute_layout(gs, lp);
  }

  const ERMap er_sub = restrict_er(er, g, gs);
  result.bundled = run_bundler(gs, ds, bundler, er_sub, bp, &result.bundling_seconds);
  return result;
}

}  // namespace bundlekit

#pragma once

#include <cstdint>

#include "bundlekit/drawing.hpp"
#include "bundlekit/parallel.hpp"
#include "bundlekit/resistance.hpp"

namespace bundlekit {

struct FdebParams {
  std::uint32_t cycles = 6;
  std::uint32_t iterations_per_cycle = 50;  // halves each cycle, floor 1
  // Step size for the first cycle as a fraction of the drawing diagonal;
  // halves each cycle.
  double initial_step = 0.04;
  double spring_constant = 0.1;
  // Pairs whose compatibility (combined score for the resistance variants)
  // falls below this are skipped entirely.
  double compatibility_threshold = 0.05;
};

enum class SebVariant { er1, er2 };

// Force-directed bundling: each cycle doubles the interior division points
// (1, 2, 4, ...), halves the step size, and halves the iteration count.
// Within an iteration every division point feels a spring pull toward its
// polyline neighbors and, for every compatible partner edge, an attraction
// of magnitude compatibility/distance toward the partner's same-index
// division point (index reversed for opposed edges). Updates are Jacobi:
// forces are computed from a snapshot, then applied, in a fixed order, so
// output bytes are independent of the worker count. Endpoints never move.
Drawing fdeb_bundle(const Drawing& drawing, const FdebParams& params,
                    Exec exec = Exec::openmp);

// Same engine with the pairwise numerator C_G * C_ER, the resistance term
// chosen by `variant` on normalized ER values. With all normalized values
// equal this degenerates to fdeb_bundle bitwise.
Drawing seb_bundle(const Drawing& drawing, const ERMap& er, SebVariant variant,
                   const FdebParams& params, Exec exec = Exec::openmp);

}  // namespace bundlekit

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bundlekit/drawing.hpp"

namespace bundlekit {

struct RasterImage {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<float> grey;  // row-major, background 0, full ink 1
  double threshold = 0.5;   // binarization cut for pixel counting

  float at(std::uint32_t x, std::uint32_t y) const { return grey[y * width + x]; }
  std::uint64_t lit_pixels() const;
};

// Anti-aliased rendering of the polylines. The world-to-pixel transform is
// fixed by the vertex positions plus a 2% margin, so the original and a
// bundled drawing of the same graph rasterize into the same frame. Height
// follows the aspect ratio (min 16 px). Pixel coverage is the max over
// segments of clamp(line_width/2 + 0.5 - distance, 0, 1), which is
// order-independent and hence deterministic.
RasterImage rasterize(const Drawing& drawing, std::uint32_t width = 2048,
                      double line_width = 2.0, double threshold = 0.5);

// Ratio of lit pixels, bundled over original, after binarization.
double ink_reduction(const RasterImage& original, const RasterImage& bundled);

// Minimal 8-bit grayscale PNG writer. A nonempty comment is embedded as a
// tEXt chunk (used for the reproducibility header).
void save_png(const RasterImage& image, const std::string& path,
              const std::string& comment = "");

}  // namespace bundlekit

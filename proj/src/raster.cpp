#include "bundlekit/raster.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace bundlekit {

std::uint64_t RasterImage::lit_pixels() const {
  std::uint64_t count = 0;
  for (float g : grey)
    if (g > threshold) ++count;
  return count;
}

RasterImage rasterize(const Drawing& drawing, std::uint32_t width, double line_width,
                      double threshold) {
  if (width < 16) throw std::invalid_argument("rasterize: width must be at least 16");
  if (drawing.positions.empty()) throw std::invalid_argument("rasterize: drawing has no vertices");

  double min_x = drawing.positions[0].x, max_x = min_x;
  double min_y = drawing.positions[0].y, max_y = min_y;
  for (const Vec2& p : drawing.positions) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double extent = std::max(max_x - min_x, max_y - min_y);
  if (!(extent > 0.0)) throw std::invalid_argument("rasterize: drawing has zero extent");
  const double margin = 0.02 * extent;

  const double world_w = (max_x - min_x) + 2.0 * margin;
  const double world_h = (max_y - min_y) + 2.0 * margin;
  const double scale = width / world_w;

  RasterImage img;
  img.width = width;
  img.height = std::max<std::uint32_t>(
      16, static_cast<std::uint32_t>(std::lround(world_h * scale)));
  img.threshold = threshold;
  img.grey.assign(static_cast<std::size_t>(img.width) * img.height, 0.0f);

  const auto to_px = [&](const Vec2& p) -> Vec2 {
    return {(p.x - (min_x - margin)) * scale, ((max_y + margin) - p.y) * scale};
  };

  const double radius = line_width / 2.0 + 0.5;
  for (const Polyline& pl : drawing.polylines) {
    for (std::size_t s = 1; s < pl.size(); ++s) {
      const Vec2 a = to_px(pl[s - 1]);
      const Vec2 b = to_px(pl[s]);
      const std::int64_t x0 = std::max<std::int64_t>(
          0, static_cast<std::int64_t>(std::floor(std::min(a.x, b.x) - radius)));
      const std::int64_t x1 = std::min<std::int64_t>(
          img.width - 1, static_cast<std::int64_t>(std::ceil(std::max(a.x, b.x) + radius)));
      const std::int64_t y0 = std::max<std::int64_t>(
          0, static_cast<std::int64_t>(std::floor(std::min(a.y, b.y) - radius)));
      const std::int64_t y1 = std::min<std::int64_t>(
          img.height - 1, static_cast<std::int64_t>(std::ceil(std::max(a.y, b.y) + radius)));
      for (std::int64_t y = y0; y <= y1; ++y) {
        for (std::int64_t x = x0; x <= x1; ++x) {
          const Vec2 center{static_cast<double>(x) + 0.5, static_cast<double>(y) + 0.5};
          const double d = point_segment_distance(center, a, b);
          const double v = std::clamp(line_width / 2.0 + 0.5 - d, 0.0, 1.0);
          float& cell = img.grey[y * img.width + x];
          cell = std::max(cell, static_cast<float>(v));
        }
      }
    }
  }
  return img;
}

double ink_reduction(const RasterImage& original, const RasterImage& bundled) {
  if (original.width != bundled.width || original.height != bundled.height)
    throw std::invalid_argument("ink_reduction: image dimensions differ");
  if (original.threshold != bundled.threshold)
    throw std::invalid_argument("ink_reduction: binarization thresholds differ");
  const std::uint64_t lit_orig = original.lit_pixels();
  if (lit_orig == 0) throw std::invalid_argument("ink_reduction: original image is blank");
  return static_cast<double>(bundled.lit_pixels()) / static_cast<double>(lit_orig);
}

namespace {

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  out.push_back(static_cast<unsigned char>(v >> 24));
  out.push_back(static_cast<unsigned char>(v >> 16));
  out.push_back(static_cast<unsigned char>(v >> 8));
  out.push_back(static_cast<unsigned char>(v));
}

void put_chunk(std::vector<unsigned char>& out, const char type[4],
               const std::vector<unsigned char>& data) {
  put_u32(out, static_cast<std::uint32_t>(data.size()));
  const std::size_t crc_start = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), data.begin(), data.end());
  const uLong crc = crc32(0L, out.data() + crc_start, static_cast<uInt>(out.size() - crc_start));
  put_u32(out, static_cast<std::uint32_t>(crc));
}

}  // namespace

void save_png(const RasterImage& image, const std::string& path, const std::string& comment) {
  std::vector<unsigned char> raw;
  raw.reserve(static_cast<std::size_t>(image.height) * (image.width + 1));
  for (std::uint32_t y = 0; y < image.height; ++y) {
    raw.push_back(0);  // filter: none
    for (std::uint32_t x = 0; x < image.width; ++x) {
      const float g = std::clamp(image.at(x, y), 0.0f, 1.0f);
      // Dark ink on a light page.
      raw.push_back(static_cast<unsigned char>(std::lround((1.0f - g) * 255.0f)));
    }
  }
  uLongf bound = compressBound(static_cast<uLong>(raw.size()));
  std::vector<unsigned char> compressed(bound);
  if (compress2(compressed.data(), &bound, raw.data(), static_cast<uLong>(raw.size()), 6) != Z_OK)
    throw std::runtime_error(path + ": deflate failed");
  compressed.resize(bound);

  std::vector<unsigned char> png;
  static const unsigned char sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  png.insert(png.end(), sig, sig + 8);
  std::vector<unsigned char> ihdr;
  put_u32(ihdr, image.width);
  put_u32(ihdr, image.height);
  ihdr.push_back(8);  // bit depth
  ihdr.push_back(0);  // grayscale
  ihdr.push_back(0);
  ihdr.push_back(0);
  ihdr.push_back(0);
  put_chunk(png, "IHDR", ihdr);
  if (!comment.empty()) {
    std::vector<unsigned char> text;
    static const char keyword[] = "Comment";
    text.insert(text.end(), keyword, keyword + sizeof(keyword));  // includes the NUL
    text.insert(text.end(), comment.begin(), comment.end());
    put_chunk(png, "tEXt", text);
  }
  put_chunk(png, "IDAT", compressed);
  put_chunk(png, "IEND", {});

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out.write(reinterpret_cast<const char*>(png.data()), static_cast<std::streamsize>(png.size()));
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace bundlekit

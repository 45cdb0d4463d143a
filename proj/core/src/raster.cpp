#include "pansphere/raster.hpp"

#include <string>

namespace pansphere {

std::string_view units_name(DepthUnits units) noexcept {
  switch (units) {
    case DepthUnits::Metric: return "metric";
    case DepthUnits::Normalized: return "normalized";
    case DepthUnits::Disparity: return "disparity";
  }
  return "metric";
}

DepthUnits parse_units(std::string_view name) {
  if (name == "metric" || name == "meters") return DepthUnits::Metric;
  if (name == "normalized") return DepthUnits::Normalized;
  if (name == "disparity") return DepthUnits::Disparity;
  throw Error(ErrorCode::InvalidArgument, "unknown depth units '" + std::string(name) + "'");
}

std::size_t DepthMap::valid_count() const noexcept {
  std::size_t n = 0;
  for (auto v : valid.data()) n += v != 0;
  return n;
}

ErpImage as_image(const DepthMap& d) {
  ErpImage img;
  img.pixels = d.values;
  img.valid = d.valid;
  return img;
}

DepthMap as_depth(const ErpImage& img, DepthUnits units) {
  DepthMap d;
  d.units = units;
  d.valid = img.valid;
  if (img.channels() == 1) {
    d.values = img.pixels;
  } else {
    d.values = Plane(img.rows(), img.cols());
    for (int r = 0; r < img.rows(); ++r)
      for (int c = 0; c < img.cols(); ++c) d.values.at(r, c) = img.pixels.at(r, c, 0);
  }
  return d;
}

void require_same_plane(const DepthMap& a, const DepthMap& b, std::string_view what) {
  if (!a.values.same_plane(b.values) || !a.valid.same_plane(a.values) ||
      !b.valid.same_plane(b.values)) {
    throw Error(ErrorCode::ShapeMismatch,
                std::string(what) + ": " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                    std::to_string(b.cols()));
  }
}

}  // namespace pansphere

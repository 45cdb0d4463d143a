#include "pansphere/depth_norm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pansphere/format.hpp"
#include "pansphere/sampling.hpp"
#include "pansphere/sphere_geom.hpp"

namespace pansphere {

double percentile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw Error(ErrorCode::EmptyOverlap, "percentile of an empty sample");
  const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return std::lerp(sorted[lo], sorted[hi], pos - static_cast<double>(lo));
}

std::vector<double> sorted_valid_values(const DepthMap& d) {
  std::vector<double> v;
  v.reserve(d.valid_count());
  const auto values = d.values.data();
  const auto valid = d.valid.data();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (valid[i] != 0) v.push_back(values[i]);
  }
  std::sort(v.begin(), v.end());
  return v;
}

PercentileRange depth_percentiles(const DepthMap& d, double low_q, double high_q) {
  const std::vector<double> v = sorted_valid_values(d);
  if (v.empty()) throw Error(ErrorCode::DegenerateDepthRange, "no valid depth values");
  return {percentile_sorted(v, low_q), percentile_sorted(v, high_q)};
}

DepthMap normalize_depth(const DepthMap& d) {
  const PercentileRange range = depth_percentiles(d);
  const double span = range.high - range.low;
  if (!(span >= 1e-9)) {
    throw Error(ErrorCode::DegenerateDepthRange,
                "d98 - d2 = " + format_number(span) + " is below 1e-9");
  }
  DepthMap out = d;
  out.units = DepthUnits::Normalized;
  out.max_depth.reset();
  auto values = out.values.data();
  const auto valid = out.valid.data();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (valid[i] == 0) {
      values[i] = 0.0;
      continue;
    }
    values[i] = std::clamp((values[i] - range.low) / span, kNormalizedFloor, kNormalizedCeil);
  }
  return out;
}

std::string_view space_name(AlignmentSpace space) noexcept {
  return space == AlignmentSpace::Depth ? "depth" : "disparity";
}

AlignmentSpace parse_space(std::string_view name) {
  if (name == "depth") return AlignmentSpace::Depth;
  if (name == "disparity") return AlignmentSpace::Disparity;
  throw Error(ErrorCode::InvalidArgument, "unknown alignment space '" + std::string(name) + "'");
}

namespace {

double to_space(double depth, AlignmentSpace space) noexcept {
  return space == AlignmentSpace::Depth ? depth : 1.0 / std::max(depth, kDisparityFloor);
}

}  // namespace

AlignmentParams fit_alignment(const DepthMap& pred, const DepthMap& gt, AlignmentSpace space) {
  return fit_alignment(pred, gt, space, full_mask(pred.rows(), pred.cols()));
}

AlignmentParams fit_alignment(const DepthMap& pred, const DepthMap& gt, AlignmentSpace space,
                              const Mask& use) {
  require_same_plane(pred, gt, "fit_alignment");
  if (!use.same_plane(pred.values)) throw Error(ErrorCode::ShapeMismatch, "alignment mask");

  // Centered accumulation keeps the 2x2 normal equations well conditioned.
  const auto p = pred.values.data();
  const auto g = gt.values.data();
  const auto pv = pred.valid.data();
  const auto gv = gt.valid.data();
  const auto m = use.data();
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (pv[i] == 0 || gv[i] == 0 || m[i] == 0 || !(g[i] > 0.0)) continue;
    xs.push_back(to_space(p[i], space));
    ys.push_back(to_space(g[i], space));
  }
  if (xs.size() < 2) {
    throw Error(ErrorCode::EmptyOverlap, "alignment needs at least two overlapping pixels");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double scale_ref = std::max(1.0, mx * mx);
  if (!(sxx > 1e-12 * n * scale_ref)) {
    throw Error(ErrorCode::DegenerateAlignment, "prediction has no spread over the overlap");
  }
  const double s = sxy / sxx;
  return {s, my - s * mx, space};
}

DepthMap apply_alignment(const DepthMap& pred, const AlignmentParams& a) {
  DepthMap out = pred;
  auto values = out.values.data();
  const auto valid = out.valid.data();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (valid[i] == 0) continue;
    if (a.space == AlignmentSpace::Depth) {
      values[i] = std::max(a.scale * values[i] + a.shift, kDisparityFloor);
    } else {
      const double disparity = a.scale * to_space(values[i], a.space) + a.shift;
      values[i] = 1.0 / std::max(disparity, kDisparityFloor);
    }
  }
  return out;
}

DepthMap sky_fill(const DepthMap& d, const Mask& sky) {
  if (!sky.same_plane(d.values)) {
    throw Error(ErrorCode::ShapeMismatch, "sky mask resolution differs from the depth map");
  }
  DepthMap out = d;
  for (int r = 0; r < d.rows(); ++r) {
    for (int c = 0; c < d.cols(); ++c) {
      if (sky.at(r, c) == 0) continue;
      out.values.at(r, c) = kNormalizedCeil;
      out.valid.at(r, c) = 1;
    }
  }
  return out;
}

ErpImage upscale_for_pseudo(const ErpImage& img, double factor) {
  if (!(factor >= 1.0) || !std::isfinite(factor)) {
    throw Error(ErrorCode::InvalidArgument, "upscale factor must be >= 1");
  }
  const ErpGrid src = ErpGrid::of(img.pixels);
  const auto height = static_cast<int>(std::lround(src.height * factor));
  const ErpGrid dst = ErpGrid::with_height(height);
  const int channels = img.channels();
  ErpImage out(dst.height, dst.width, channels);
  // Pixel-center aligned: output center (u + 0.5) / f - 0.5 in source pixels.
  const double fy = static_cast<double>(src.height) / dst.height;
  const double fx = static_cast<double>(src.width) / dst.width;
  for (int r = 0; r < dst.height; ++r) {
    const double v = (r + 0.5) * fy - 0.5;
    for (int c = 0; c < dst.width; ++c) {
      const double u = (c + 0.5) * fx - 0.5;
      auto px = out.pixels.row(r).subspan(static_cast<std::size_t>(c) * channels, channels);
      out.valid.at(r, c) =
          sample(img.pixels, img.valid, u, v, Interpolation::Bilinear, HorizontalEdge::Wrap, px)
              ? 1
              : 0;
    }
  }
  return out;
}

}  // namespace pansphere

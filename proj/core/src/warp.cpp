#include "pansphere/warp.hpp"

#include "pansphere/parallel.hpp"

namespace pansphere {

SourceMap compute_source_map(const ErpGrid& grid, const WarpSpec& spec, std::size_t jobs) {
  SourceMap map{grid, {}, {}};
  const auto n = static_cast<std::size_t>(grid.height) * grid.width;
  map.coords.resize(n);
  map.valid.assign(n, 0);
  const MobiusParams inverse = spec.mobius.inverse();

  parallel_for(
      static_cast<std::size_t>(grid.height),
      [&](std::size_t row) {
        const int v = static_cast<int>(row);
        for (int u = 0; u < grid.width; ++u) {
          const std::size_t i = row * grid.width + u;
          SphericalAngles src = pixel_to_angles(u, v, grid);
          const ComplexPoint z = apply_mobius(inverse, stp(sp(src)));
          if (z.at_infinity) continue;
          src = sp_inv(stp_inv(z));
          src.theta = wrap_angle(src.theta - spec.roll);
          const PixelCoord p = angles_to_pixel(src, grid);
          // Vertical clamp band: one pixel beyond the raster is the limit.
          if (p.v < -1.5 || p.v > grid.height + 0.5) continue;
          map.coords[i] = p;
          map.valid[i] = 1;
        }
      },
      jobs);
  return map;
}

ErpImage remap(const ErpImage& img, const SourceMap& map, Interpolation mode, std::size_t jobs) {
  if (img.rows() != map.grid.height || img.cols() != map.grid.width) {
    throw Error(ErrorCode::ShapeMismatch, "raster does not match the warp grid");
  }
  ErpImage out(img.rows(), img.cols(), img.channels());
  const int channels = img.channels();
  parallel_for(
      static_cast<std::size_t>(img.rows()),
      [&](std::size_t row) {
        const int r = static_cast<int>(row);
        for (int c = 0; c < img.cols(); ++c) {
          const std::size_t i = row * img.cols() + c;
          auto px = out.pixels.row(r).subspan(static_cast<std::size_t>(c) * channels, channels);
          bool ok = false;
          if (map.valid[i] != 0) {
            ok = sample(img.pixels, img.valid, map.coords[i].u, map.coords[i].v, mode,
                        HorizontalEdge::Wrap, px);
          }
          out.valid.at(r, c) = ok ? 1 : 0;
        }
      },
      jobs);
  return out;
}

ErpImage warp_erp(const ErpImage& img, const WarpSpec& spec, std::size_t jobs) {
  const ErpGrid grid = ErpGrid::of(img.pixels);
  return remap(img, compute_source_map(grid, spec, jobs), spec.interpolation, jobs);
}

DepthMap warp_erp(const DepthMap& depth, const WarpSpec& spec, std::size_t jobs) {
  DepthMap out = as_depth(warp_erp(as_image(depth), spec, jobs), depth.units);
  out.max_depth = depth.max_depth;
  return out;
}

DepthMap warp_depth_target(const DepthMap& depth, const WarpSpec& spec, std::size_t jobs) {
  return warp_erp(depth, spec, jobs);
}

}  // namespace pansphere

#pragma once

#include <vector>

#include "pansphere/mobius.hpp"
#include "pansphere/sampling.hpp"

namespace pansphere {

/// A sphere-conformal warp: Möbius map on the stereographic plane followed by
/// a horizontal roll (longitude offset).
struct WarpSpec {
  MobiusParams mobius;
  double roll = 0.0;  ///< radians, kept wrapped into [-pi, pi)
  Interpolation interpolation = Interpolation::Bilinear;

  static WarpSpec identity() { return {}; }
  static WarpSpec rotation_deg(double deg) { return {mobius_rotation(deg_to_rad(deg))}; }
  static WarpSpec zoom(double s) { return {mobius_zoom(s)}; }
  WarpSpec with_roll(double roll_rad) const {
    WarpSpec w = *this;
    w.roll = wrap_angle(roll_rad);
    return w;
  }
  WarpSpec with_interpolation(Interpolation mode) const {
    WarpSpec w = *this;
    w.interpolation = mode;
    return w;
  }
};

/// Backward map: for every output pixel, where to read in the input.
struct SourceMap {
  ErpGrid grid;
  std::vector<PixelCoord> coords;
  std::vector<std::uint8_t> valid;
};

/// Output pixel -> angles -> sphere -> plane -> inverse Möbius -> plane ->
/// sphere -> angles, then subtract the roll from theta.
SourceMap compute_source_map(const ErpGrid& grid, const WarpSpec& spec, std::size_t jobs = 0);

/// Warps a panorama. Bilinear wraps horizontally and clamps vertically; the
/// output mask is the nearest-sampled input mask. Throws InvalidErpShape.
ErpImage warp_erp(const ErpImage& img, const WarpSpec& spec, std::size_t jobs = 0);
/// Depth values are resampled as scalars; units and max_depth carry through.
DepthMap warp_erp(const DepthMap& depth, const WarpSpec& spec, std::size_t jobs = 0);

/// The consistency target M(d) for the MTSA loss; same resampling as warp_erp.
DepthMap warp_depth_target(const DepthMap& depth, const WarpSpec& spec, std::size_t jobs = 0);

/// Applies a precomputed map. Rasters must match map.grid.
ErpImage remap(const ErpImage& img, const SourceMap& map, Interpolation mode, std::size_t jobs = 0);

}  // namespace pansphere

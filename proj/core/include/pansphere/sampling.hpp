#pragma once

#include <span>

#include "pansphere/raster.hpp"

namespace pansphere {

enum class Interpolation { Bilinear, Nearest };

/// Horizontal boundary rule. ERP rasters are longitude-periodic; patches are not.
enum class HorizontalEdge { Wrap, Clamp };

/// Samples `src` at fractional pixel position (u, v) into `out`
/// (src.channels() values). Vertical coordinates clamp to the raster.
///
/// Validity follows the nearest source pixel. Bilinear weights are
/// renormalized over valid neighbours, so the result is always a convex
/// combination of valid inputs. Returns false (and zero-fills `out`) when the
/// nearest pixel is invalid.
bool sample(const Plane& src, const Mask& valid, double u, double v, Interpolation mode,
            HorizontalEdge edge, std::span<double> out) noexcept;

}  // namespace pansphere

#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "pansphere/raster.hpp"

namespace pansphere {

inline constexpr double kNormalizedFloor = 0.01;
inline constexpr double kNormalizedCeil = 1.0;
inline constexpr double kDisparityFloor = 1e-6;

/// Linear interpolation between closest ranks: position q * (n - 1) in the
/// ascending sample. `sorted` must be non-empty and sorted.
double percentile_sorted(std::span<const double> sorted, double q);

/// Sorted copy of the valid values.
std::vector<double> sorted_valid_values(const DepthMap& d);

struct PercentileRange {
  double low = 0.0;   ///< 2nd percentile
  double high = 0.0;  ///< 98th percentile
};

PercentileRange depth_percentiles(const DepthMap& d, double low_q = 0.02, double high_q = 0.98);

/// (d - d2) / (d98 - d2) on valid pixels, clipped to [0.01, 1]. Invalid
/// pixels stay invalid (value 0). Throws DegenerateDepthRange when
/// d98 - d2 < 1e-9.
DepthMap normalize_depth(const DepthMap& d);

enum class AlignmentSpace { Depth, Disparity };

std::string_view space_name(AlignmentSpace space) noexcept;
AlignmentSpace parse_space(std::string_view name);

struct AlignmentParams {
  double scale = 1.0;
  double shift = 0.0;
  AlignmentSpace space = AlignmentSpace::Depth;
};

/// Least-squares (s, t) minimizing sum (s p + t - g)^2 over pixels valid in
/// both maps (and gt > 0). In disparity space p and g are reciprocals, with
/// depth clamped below at 1e-6. Throws DegenerateAlignment on a singular
/// system, EmptyOverlap when fewer than two pixels overlap.
AlignmentParams fit_alignment(const DepthMap& pred, const DepthMap& gt, AlignmentSpace space);

/// Like fit_alignment but restricted to pixels where `use` is nonzero.
AlignmentParams fit_alignment(const DepthMap& pred, const DepthMap& gt, AlignmentSpace space,
                              const Mask& use);

/// s p + t per valid pixel (through 1/d in disparity space); results are
/// clamped below at 1e-6.
DepthMap apply_alignment(const DepthMap& pred, const AlignmentParams& a);

/// Sets nonzero mask pixels to 1.0 (farthest normalized depth) and marks them
/// valid. Throws ShapeMismatch.
DepthMap sky_fill(const DepthMap& d, const Mask& sky);

/// Bilinear upsampling on the sphere: output H' = round(H f), W' = 2 H'.
/// factor 1 is the identity. Throws InvalidArgument for factor < 1.
ErpImage upscale_for_pseudo(const ErpImage& img, double factor = 2.0);

}  // namespace pansphere

#pragma once

#include <cstddef>
#include <optional>

#include "pansphere/depth_norm.hpp"

namespace pansphere {

struct MetricReport {
  double abs_rel = 0.0;
  double rmse = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double delta3 = 0.0;
  std::size_t valid_pixels = 0;
};

struct MetricOptions {
  /// Ground truth above this depth is excluded (10 m for Matterport3D and
  /// Stanford2D3D).
  std::optional<double> max_depth;
  /// Least-squares scale/shift fit applied to the prediction first.
  std::optional<AlignmentSpace> align;
};

/// Pixels count when pred and gt are valid, gt is finite and positive, and
/// gt <= max_depth (when set). Predictions are clamped at 1e-6 before ratios.
///
///   AbsRel = mean |D - D*| / D*
///   RMSE   = sqrt(mean (D - D*)^2)
///   delta_i = fraction with max(D / D*, D* / D) < 1.25^i
///
/// Throws EmptyOverlap when no pixel qualifies.
MetricReport compute_metrics(const DepthMap& pred, const DepthMap& gt,
                             const MetricOptions& options = {});

/// The evaluation mask compute_metrics uses.
Mask evaluation_mask(const DepthMap& pred, const DepthMap& gt,
                     const std::optional<double>& max_depth);

}  // namespace pansphere

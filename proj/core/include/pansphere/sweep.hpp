#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pansphere/metrics.hpp"
#include "pansphere/warp.hpp"

namespace pansphere {

enum class SweepTransform { Rotation, Zoom };

struct SweepCell {
  SweepTransform transform = SweepTransform::Rotation;
  double level = 0.0;  ///< degrees for rotation, zoom factor for zoom
  std::optional<MetricReport> report;
  std::string error;  ///< set when the cell is missing

  std::string transform_name() const;
  WarpSpec spec() const;
};

/// 11 angles evenly spaced over [-90, 90] degrees (step 18).
std::vector<double> default_sweep_angles();
/// 10 zoom levels 0.4, 0.8, ..., 4.0.
std::vector<double> default_sweep_zooms();

/// Given the warped panorama of one cell, return a depth prediction on the
/// same grid. Throwing marks the cell as missing. Must be callable from
/// several threads when the sweep runs with jobs > 1.
using Predictor = std::function<DepthMap(const ErpImage& warped_image, const SweepCell& cell)>;

/// One MetricReport per (transform, level). Ground truth is warped with the
/// same spec as the image. Rotation cells come first, then zoom cells.
std::vector<SweepCell> sweep_transformations(const Predictor& predict, const ErpImage& image,
                                             const DepthMap& gt, const std::vector<double>& angles,
                                             const std::vector<double>& zooms,
                                             const MetricOptions& options = {},
                                             std::size_t jobs = 1);

inline constexpr const char* kSweepCsvHeader =
    "transform,level,abs_rel,rmse,delta1,delta2,delta3,valid_pixels";

/// Header plus one row per cell; missing cells keep transform and level and
/// leave the metric columns empty.
void write_sweep_csv(std::ostream& out, const std::vector<SweepCell>& cells);

}  // namespace pansphere

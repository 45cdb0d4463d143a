#pragma once

// Training objectives as pure forward reductions over depth maps. All losses
// consider only pixels valid in both arguments.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pansphere/raster.hpp"
#include "pansphere/sphere_geom.hpp"

namespace pansphere {

struct LossWeights {
  double lambda_E = 5.0;  ///< EPNL weight inside the supervised loss
  double lambda_C = 2.0;  ///< color-consistency weight
  double lambda_M = 1.0;  ///< MTSA weight
};

inline constexpr double kSilogVarianceWeight = 0.5;
inline constexpr double kLossDepthFloor = 1e-6;

/// sqrt(mean(g^2) - lambda_var * mean(g)^2) with g = ln(pred) - ln(gt), both
/// clamped below at 1e-6. Throws EmptyOverlap.
double silog_loss(const DepthMap& pred, const DepthMap& gt,
                  double variance_weight = kSilogVarianceWeight);

/// Analytic derivative of silog_loss with respect to pred(row, col). Zero for
/// pixels outside the overlap or when the loss is zero.
double silog_gradient(const DepthMap& pred, const DepthMap& gt, int row, int col,
                      double variance_weight = kSilogVarianceWeight);

/// Sum over `scales` levels (2x average pooling between levels) of
/// mean|dx(pred - gt)| + mean|dy(pred - gt)|, forward differences, skipping
/// differences that touch an invalid pixel. Throws TooSmall below 8x8.
double gradient_loss(const DepthMap& pred, const DepthMap& gt, int scales = 4);

/// A crop used by the patch-normalized loss. Rows never wrap; columns are
/// taken modulo the raster width.
struct PatchSample {
  int top = 0;
  int left = 0;  ///< may be anything; reduced modulo W when reading
  int rows = 0;
  int cols = 0;
  bool wraps_horizontally = false;

  int center_row() const noexcept { return top + rows / 2; }
  int center_col() const noexcept { return left + cols / 2; }
  /// Column indices in [0, width) covered by the patch.
  std::vector<int> columns(int width) const;
  friend bool operator==(const PatchSample&, const PatchSample&) = default;
};

struct SamplerConfig {
  int patch_count = 32;
  std::optional<double> mean_row;     ///< default H / 2
  std::optional<double> spread_rows;  ///< standard deviation, default H / 6
  double min_size_fraction = 1.0 / 8.0;
  double max_size_fraction = 1.0 / 4.0;
  std::uint64_t seed = 0;
};

/// Draws equator-biased square patches: center row ~ Normal(H/2, (H/6)^2),
/// center column ~ Uniform[0, W), side ~ Uniform[H/8, H/4] (at least 8).
/// The row is clamped so the patch fits vertically; columns wrap.
class EquatorPatchSampler {
 public:
  EquatorPatchSampler(const SamplerConfig& cfg, const ErpGrid& grid);

  /// Center row before clamping, from the same stream `next` uses.
  double draw_center_row();
  PatchSample next();
  std::vector<PatchSample> sample(int count);

 private:
  SamplerConfig cfg_;
  ErpGrid grid_;
  double mean_;
  double spread_;
  std::uint64_t counter_ = 0;

  double uniform();
  double normal();
};

/// K = cfg.patch_count patches, deterministic in cfg.seed.
std::vector<PatchSample> sample_equator_patches(const SamplerConfig& cfg, const ErpGrid& grid);

struct NormalizedPatch {
  std::vector<double> values;  ///< same length as the input; invalid entries are 0
  double median = 0.0;
  double scale = 0.0;  ///< mean absolute deviation from the median
  bool degenerate = false;
};

/// (v - median) / mean|v - median| over entries where `valid` is nonzero.
/// Degenerate when fewer than two entries are valid or the scale is < 1e-6.
NormalizedPatch patch_normalize(std::span<const double> values,
                                std::span<const std::uint8_t> valid);

/// Mean over non-degenerate patches of mean |N(pred) - N(gt)|. Throws
/// AllPatchesDegenerate when no patch contributes.
double epnl_loss(const DepthMap& pred, const DepthMap& gt, std::span<const PatchSample> patches);

/// silog + gradient + lambda_E * epnl.
double supervised_combination(double silog, double gradient, double epnl,
                              const LossWeights& w = {}) noexcept;

/// supervised_combination of the three losses evaluated on (pred, gt).
double supervised_loss(const DepthMap& pred, const DepthMap& gt,
                       std::span<const PatchSample> patches, const LossWeights& w = {});

/// Supervised loss against the teacher prediction.
double pseudo_label_loss(const DepthMap& student, const DepthMap& teacher,
                         std::span<const PatchSample> patches, const LossWeights& w = {});

/// SILog between predictions of the color-augmented and clean inputs.
double consistency_loss(const DepthMap& pred_color_aug, const DepthMap& pred_clean);

/// SILog between the prediction on the warped input and the warped clean
/// prediction; invalid warped pixels are excluded through the masks.
double mtsa_loss(const DepthMap& pred_of_warped, const DepthMap& warped_pred);

struct SslComponents {
  double supervised = 0.0;
  double pseudo = 0.0;
  double consistency = 0.0;
  double mtsa = 0.0;
};

/// sup + pseudo + lambda_C cons + lambda_M mtsa.
double ssl_total_loss(const SslComponents& c, const LossWeights& w = {});

}  // namespace pansphere

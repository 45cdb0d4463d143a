#include "pansphere/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace pansphere {

Mask evaluation_mask(const DepthMap& pred, const DepthMap& gt,
                     const std::optional<double>& max_depth) {
  require_same_plane(pred, gt, "compute_metrics");
  Mask mask(pred.rows(), pred.cols());
  const auto g = gt.values.data();
  const auto p = pred.values.data();
  const auto pv = pred.valid.data();
  const auto gv = gt.valid.data();
  auto m = mask.data();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const bool ok = pv[i] != 0 && gv[i] != 0 && std::isfinite(g[i]) && g[i] > 0.0 &&
                    std::isfinite(p[i]) && (!max_depth || g[i] <= *max_depth);
    m[i] = ok ? 1 : 0;
  }
  return mask;
}

MetricReport compute_metrics(const DepthMap& pred, const DepthMap& gt,
                             const MetricOptions& options) {
  const Mask mask = evaluation_mask(pred, gt, options.max_depth);
  const DepthMap* evaluated = &pred;
  DepthMap aligned;
  if (options.align) {
    aligned = apply_alignment(pred, fit_alignment(pred, gt, *options.align, mask));
    evaluated = &aligned;
  }

  const auto p = evaluated->values.data();
  const auto g = gt.values.data();
  const auto m = mask.data();
  const double t1 = 1.25;
  const double t2 = t1 * t1;
  const double t3 = t2 * t1;
  double abs_rel = 0.0;
  double sq = 0.0;
  std::size_t d1 = 0;
  std::size_t d2 = 0;
  std::size_t d3 = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (m[i] == 0) continue;
    const double d = std::max(p[i], kDisparityFloor);
    const double diff = d - g[i];
    abs_rel += std::abs(diff) / g[i];
    sq += diff * diff;
    const double ratio = std::max(d / g[i], g[i] / d);
    d1 += ratio < t1;
    d2 += ratio < t2;
    d3 += ratio < t3;
    ++n;
  }
  if (n == 0) throw Error(ErrorCode::EmptyOverlap, "no valid ground-truth pixels to evaluate");
  const double k = static_cast<double>(n);
  return {abs_rel / k,
          std::sqrt(sq / k),
          static_cast<double>(d1) / k,
          static_cast<double>(d2) / k,
          static_cast<double>(d3) / k,
          n};
}

}  // namespace pansphere

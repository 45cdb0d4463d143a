#include "pansphere/losses.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pansphere/random.hpp"

namespace pansphere {
namespace {

constexpr std::uint64_t kSamplerStream = 0x45504E4CULL;  // "EPNL"

struct LogResiduals {
  std::vector<double> g;
  double mean = 0.0;
  double mean_sq = 0.0;
};

LogResiduals log_residuals(const DepthMap& pred, const DepthMap& gt) {
  require_same_plane(pred, gt, "silog");
  LogResiduals out;
  const auto p = pred.values.data();
  const auto t = gt.values.data();
  const auto pv = pred.valid.data();
  const auto tv = gt.valid.data();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (pv[i] == 0 || tv[i] == 0) continue;
    const double g = std::log(std::max(p[i], kLossDepthFloor)) -
                     std::log(std::max(t[i], kLossDepthFloor));
    out.g.push_back(g);
    out.mean += g;
    out.mean_sq += g * g;
  }
  if (out.g.empty()) throw Error(ErrorCode::EmptyOverlap, "no pixel is valid in both maps");
  const double n = static_cast<double>(out.g.size());
  out.mean /= n;
  out.mean_sq /= n;
  return out;
}

double silog_from(const LogResiduals& r, double variance_weight) {
  return std::sqrt(std::max(0.0, r.mean_sq - variance_weight * r.mean * r.mean));
}

/// Residual plane on the overlap plus its mask.
struct Residual {
  Plane value;
  Mask valid;
};

Residual downsample(const Residual& in) {
  const int rows = in.value.rows() / 2;
  const int cols = in.value.cols() / 2;
  Residual out{Plane(rows, cols), Mask(rows, cols)};
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double sum = 0.0;
      int n = 0;
      for (int dr = 0; dr < 2; ++dr) {
        for (int dc = 0; dc < 2; ++dc) {
          if (in.valid.at(2 * r + dr, 2 * c + dc) == 0) continue;
          sum += in.value.at(2 * r + dr, 2 * c + dc);
          ++n;
        }
      }
      if (n > 0) {
        out.value.at(r, c) = sum / n;
        out.valid.at(r, c) = 1;
      }
    }
  }
  return out;
}

double gradient_term(const Residual& res) {
  double sx = 0.0;
  double sy = 0.0;
  std::size_t nx = 0;
  std::size_t ny = 0;
  const int rows = res.value.rows();
  const int cols = res.value.cols();
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (res.valid.at(r, c) == 0) continue;
      if (c + 1 < cols && res.valid.at(r, c + 1) != 0) {
        sx += std::abs(res.value.at(r, c + 1) - res.value.at(r, c));
        ++nx;
      }
      if (r + 1 < rows && res.valid.at(r + 1, c) != 0) {
        sy += std::abs(res.value.at(r + 1, c) - res.value.at(r, c));
        ++ny;
      }
    }
  }
  return (nx > 0 ? sx / static_cast<double>(nx) : 0.0) +
         (ny > 0 ? sy / static_cast<double>(ny) : 0.0);
}

double median_of(std::vector<double> v) {
  const std::size_t n = v.size();
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (n % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(v.begin(), mid);
  return 0.5 * (lower + upper);
}

}  // namespace

double silog_loss(const DepthMap& pred, const DepthMap& gt, double variance_weight) {
  return silog_from(log_residuals(pred, gt), variance_weight);
}

double silog_gradient(const DepthMap& pred, const DepthMap& gt, int row, int col,
                      double variance_weight) {
  const LogResiduals r = log_residuals(pred, gt);
  const double loss = silog_from(r, variance_weight);
  if (loss == 0.0 || !pred.is_valid(row, col) || !gt.is_valid(row, col)) return 0.0;
  const double p = pred.at(row, col);
  if (p <= kLossDepthFloor) return 0.0;
  const double g = std::log(p) - std::log(std::max(gt.at(row, col), kLossDepthFloor));
  const double n = static_cast<double>(r.g.size());
  return (g - variance_weight * r.mean) / (n * loss * p);
}

double gradient_loss(const DepthMap& pred, const DepthMap& gt, int scales) {
  require_same_plane(pred, gt, "gradient_loss");
  if (pred.rows() < 8 || pred.cols() < 8) {
    throw Error(ErrorCode::TooSmall, "gradient loss needs at least 8x8 pixels");
  }
  if (scales < 1) throw Error(ErrorCode::InvalidArgument, "scales must be >= 1");
  Residual res{Plane(pred.rows(), pred.cols()), Mask(pred.rows(), pred.cols())};
  for (int r = 0; r < pred.rows(); ++r) {
    for (int c = 0; c < pred.cols(); ++c) {
      if (!pred.is_valid(r, c) || !gt.is_valid(r, c)) continue;
      res.value.at(r, c) = pred.at(r, c) - gt.at(r, c);
      res.valid.at(r, c) = 1;
    }
  }
  double total = 0.0;
  for (int s = 0; s < scales; ++s) {
    if (s > 0) res = downsample(res);
    total += gradient_term(res);
  }
  return total;
}

std::vector<int> PatchSample::columns(int width) const {
  std::vector<int> out(static_cast<std::size_t>(cols));
  for (int k = 0; k < cols; ++k) {
    int c = (left + k) % width;
    if (c < 0) c += width;
    out[static_cast<std::size_t>(k)] = c;
  }
  return out;
}

EquatorPatchSampler::EquatorPatchSampler(const SamplerConfig& cfg, const ErpGrid& grid)
    : cfg_(cfg),
      grid_(grid),
      mean_(cfg.mean_row.value_or(grid.height / 2.0)),
      spread_(cfg.spread_rows.value_or(grid.height / 6.0)) {
  if (cfg.patch_count < 1) throw Error(ErrorCode::InvalidArgument, "patch_count must be >= 1");
  if (!(spread_ > 0.0)) throw Error(ErrorCode::InvalidArgument, "spread must be positive");
  if (!(cfg.min_size_fraction > 0.0) || cfg.max_size_fraction < cfg.min_size_fraction ||
      cfg.max_size_fraction > 1.0) {
    throw Error(ErrorCode::InvalidArgument, "patch size fractions must satisfy 0 < min <= max <= 1");
  }
  if (grid.height < 8) throw Error(ErrorCode::TooSmall, "patches need H >= 8");
}

double EquatorPatchSampler::uniform() { return counter_uniform(cfg_.seed, kSamplerStream, counter_++); }

double EquatorPatchSampler::normal() {
  // Box-Muller, one variate per call; 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

double EquatorPatchSampler::draw_center_row() { return mean_ + spread_ * normal(); }

PatchSample EquatorPatchSampler::next() {
  const double center_row = draw_center_row();
  const double center_col = uniform() * grid_.width;
  const double lo = cfg_.min_size_fraction * grid_.height;
  const double hi = cfg_.max_size_fraction * grid_.height;
  const int side = std::clamp(static_cast<int>(std::lround(lo + (hi - lo) * uniform())), 8,
                              grid_.height);

  PatchSample p;
  p.rows = side;
  p.cols = std::min(side, grid_.width);
  p.top = std::clamp(static_cast<int>(std::lround(center_row)) - side / 2, 0, grid_.height - side);
  p.left = static_cast<int>(std::floor(center_col)) - p.cols / 2;
  if (p.left < 0) p.left += grid_.width;
  p.wraps_horizontally = p.left + p.cols > grid_.width;
  return p;
}

std::vector<PatchSample> EquatorPatchSampler::sample(int count) {
  std::vector<PatchSample> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(next());
  return out;
}

std::vector<PatchSample> sample_equator_patches(const SamplerConfig& cfg, const ErpGrid& grid) {
  EquatorPatchSampler sampler(cfg, grid);
  return sampler.sample(cfg.patch_count);
}

NormalizedPatch patch_normalize(std::span<const double> values,
                                std::span<const std::uint8_t> valid) {
  NormalizedPatch out;
  out.values.assign(values.size(), 0.0);
  std::vector<double> v;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (valid[i] != 0) v.push_back(values[i]);
  }
  if (v.size() < 2) {
    out.degenerate = true;
    return out;
  }
  out.median = median_of(v);
  double mad = 0.0;
  for (double x : v) mad += std::abs(x - out.median);
  out.scale = mad / static_cast<double>(v.size());
  if (out.scale < 1e-6) {
    out.degenerate = true;
    return out;
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (valid[i] != 0) out.values[i] = (values[i] - out.median) / out.scale;
  }
  return out;
}

double epnl_loss(const DepthMap& pred, const DepthMap& gt, std::span<const PatchSample> patches) {
  require_same_plane(pred, gt, "epnl_loss");
  const int width = pred.cols();
  double sum = 0.0;
  std::size_t used = 0;
  std::vector<double> pv;
  std::vector<double> gv;
  std::vector<std::uint8_t> mask;
  for (const PatchSample& patch : patches) {
    if (patch.top < 0 || patch.rows < 1 || patch.cols < 1 || patch.top + patch.rows > pred.rows()) {
      throw Error(ErrorCode::InvalidArgument, "patch rows fall outside the depth map");
    }
    const std::vector<int> cols = patch.columns(width);
    pv.clear();
    gv.clear();
    mask.clear();
    for (int r = patch.top; r < patch.top + patch.rows; ++r) {
      for (int c : cols) {
        pv.push_back(pred.at(r, c));
        gv.push_back(gt.at(r, c));
        mask.push_back(pred.is_valid(r, c) && gt.is_valid(r, c) ? 1 : 0);
      }
    }
    const NormalizedPatch np = patch_normalize(pv, mask);
    const NormalizedPatch ng = patch_normalize(gv, mask);
    if (np.degenerate || ng.degenerate) continue;
    double acc = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (mask[i] == 0) continue;
      acc += std::abs(np.values[i] - ng.values[i]);
      ++n;
    }
    sum += acc / static_cast<double>(n);
    ++used;
  }
  if (used == 0) throw Error(ErrorCode::AllPatchesDegenerate, "every patch is flat or empty");
  return sum / static_cast<double>(used);
}

double supervised_combination(double silog, double gradient, double epnl,
                              const LossWeights& w) noexcept {
  return silog + gradient + w.lambda_E * epnl;
}

double supervised_loss(const DepthMap& pred, const DepthMap& gt,
                       std::span<const PatchSample> patches, const LossWeights& w) {
  return supervised_combination(silog_loss(pred, gt), gradient_loss(pred, gt),
                                epnl_loss(pred, gt, patches), w);
}

double pseudo_label_loss(const DepthMap& student, const DepthMap& teacher,
                         std::span<const PatchSample> patches, const LossWeights& w) {
  return supervised_loss(student, teacher, patches, w);
}

double consistency_loss(const DepthMap& pred_color_aug, const DepthMap& pred_clean) {
  return silog_loss(pred_color_aug, pred_clean);
}

double mtsa_loss(const DepthMap& pred_of_warped, const DepthMap& warped_pred) {
  return silog_loss(pred_of_warped, warped_pred);
}

double ssl_total_loss(const SslComponents& c, const LossWeights& w) {
  return c.supervised + c.pseudo + w.lambda_C * c.consistency + w.lambda_M * c.mtsa;
}

}  // namespace pansphere

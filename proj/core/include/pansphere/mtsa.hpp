#pragma once

#include <cstdint>
#include <string>

#include "pansphere/warp.hpp"

namespace pansphere {

/// Sampling law for the Möbius spatial augmentation. Intervals are half-open.
struct MtsaConfig {
  double theta_lo_deg = -10.0;
  double theta_hi_deg = 10.0;
  double zoom_lo = 1.0;
  double zoom_hi = 1.5;
  std::uint64_t seed = 0;
  std::size_t count = 1;

  /// Throws InvalidArgument unless theta range lies in [-90, 90], the zoom
  /// range is positive, lo <= hi, and count >= 1.
  void validate() const;
};

inline constexpr const char* kComposeOrder = "zoom*rotation";

struct MtsaDraw {
  std::size_t index = 0;
  double theta_deg = 0.0;
  double zoom = 1.0;
  WarpSpec spec;  ///< compose(zoom(s), rotation(theta)), roll 0
};

/// Uniform draw in [lo, hi) from a stream keyed by (seed, index, slot);
/// lo == hi returns lo.
double mtsa_uniform(std::uint64_t seed, std::size_t index, std::uint64_t slot, double lo,
                    double hi) noexcept;

/// theta ~ U[theta_lo, theta_hi), s ~ U[zoom_lo, zoom_hi). Depends only on
/// (cfg, index).
MtsaDraw draw_spec(const MtsaConfig& cfg, std::size_t index);

struct AugmentedPair {
  ErpImage image;
  DepthMap depth;
};

/// (warp_erp(u, spec), warp_depth_target(d, spec)). Throws ShapeMismatch.
AugmentedPair generate_pair(const ErpImage& image, const DepthMap& pseudo_depth,
                            const WarpSpec& spec, std::size_t jobs = 0);

/// The params.json document for one sample. Angles and zoom are rounded to
/// 6 significant digits; (seed, index) reproduces the exact draw.
std::string sample_params_json(const MtsaConfig& cfg, const MtsaDraw& draw);

}  // namespace pansphere

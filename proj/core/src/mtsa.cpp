#include "pansphere/mtsa.hpp"

#include <cmath>
#include <json.hpp>

#include "pansphere/format.hpp"
#include "pansphere/random.hpp"

namespace pansphere {
namespace {

constexpr std::uint64_t kThetaSlot = 1;
constexpr std::uint64_t kZoomSlot = 2;

}  // namespace

void MtsaConfig::validate() const {
  if (!(theta_lo_deg >= -90.0 && theta_hi_deg <= 90.0 && theta_lo_deg <= theta_hi_deg)) {
    throw Error(ErrorCode::InvalidArgument, "theta range must satisfy -90 <= lo <= hi <= 90");
  }
  if (!(zoom_lo > 0.0 && zoom_lo <= zoom_hi && std::isfinite(zoom_hi))) {
    throw Error(ErrorCode::InvalidArgument, "zoom range must satisfy 0 < lo <= hi");
  }
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "count must be >= 1");
}

double mtsa_uniform(std::uint64_t seed, std::size_t index, std::uint64_t slot, double lo,
                    double hi) noexcept {
  if (!(hi > lo)) return lo;
  const double u = counter_uniform(seed, slot, static_cast<std::uint64_t>(index));
  const double x = lo + (hi - lo) * u;
  // lo + (hi - lo) * u can round up to hi.
  return x < hi ? x : std::nextafter(hi, lo);
}

MtsaDraw draw_spec(const MtsaConfig& cfg, std::size_t index) {
  MtsaDraw d;
  d.index = index;
  d.theta_deg = mtsa_uniform(cfg.seed, index, kThetaSlot, cfg.theta_lo_deg, cfg.theta_hi_deg);
  d.zoom = mtsa_uniform(cfg.seed, index, kZoomSlot, cfg.zoom_lo, cfg.zoom_hi);
  d.spec.mobius = compose(mobius_zoom(d.zoom), mobius_rotation(deg_to_rad(d.theta_deg)));
  d.spec.roll = 0.0;
  return d;
}

AugmentedPair generate_pair(const ErpImage& image, const DepthMap& pseudo_depth,
                            const WarpSpec& spec, std::size_t jobs) {
  if (image.rows() != pseudo_depth.rows() || image.cols() != pseudo_depth.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "image and pseudo label differ in size");
  }
  return {warp_erp(image, spec, jobs), warp_depth_target(pseudo_depth, spec, jobs)};
}

std::string sample_params_json(const MtsaConfig& cfg, const MtsaDraw& draw) {
  nlohmann::ordered_json j;
  j["theta_deg"] = round_significant(draw.theta_deg);
  j["zoom"] = round_significant(draw.zoom);
  j["seed"] = cfg.seed;
  j["index"] = draw.index;
  j["compose_order"] = kComposeOrder;
  return j.dump(2) + "\n";
}

}  // namespace pansphere

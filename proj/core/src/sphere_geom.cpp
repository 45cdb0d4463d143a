#include "pansphere/sphere_geom.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pansphere/format.hpp"

namespace pansphere {

double wrap_angle(double theta) noexcept {
  if (theta >= -kPi && theta < kPi) return theta;
  double w = std::fmod(theta + kPi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  w -= kPi;
  // fmod can land exactly on +pi after the shift back.
  return w >= kPi ? w - kTwoPi : w;
}

ErpGrid ErpGrid::make(int height, int width) {
  if (height < 2 || width != 2 * height) {
    throw Error(ErrorCode::InvalidErpShape, "expected a 2:1 grid with H >= 2, got " +
                                                std::to_string(height) + "x" +
                                                std::to_string(width));
  }
  return ErpGrid{height, width};
}

double UnitVec3::norm() const noexcept { return std::sqrt(x * x + y * y + z * z); }

SphericalAngles pixel_to_angles(double u, double v, const ErpGrid& grid) noexcept {
  return {kTwoPi * (u + 0.5) / grid.width - kPi, kPi / 2.0 - kPi * (v + 0.5) / grid.height};
}

PixelCoord angles_to_pixel(const SphericalAngles& a, const ErpGrid& grid) noexcept {
  double u = (a.theta + kPi) * grid.width / kTwoPi - 0.5;
  const double v = (kPi / 2.0 - a.phi) * grid.height / kPi - 0.5;
  const double w = grid.width;
  if (u < -0.5 || u >= w - 0.5) {
    u = std::fmod(u + 0.5, w);
    if (u < 0.0) u += w;
    u -= 0.5;
    if (u >= w - 0.5) u -= w;
  }
  return {u, v};
}

UnitVec3 sp(const SphericalAngles& a) noexcept {
  const double cp = std::cos(a.phi);
  return {cp * std::cos(a.theta), cp * std::sin(a.theta), std::sin(a.phi)};
}

SphericalAngles sp_inv(const UnitVec3& p) {
  const double n = p.norm();
  if (!(std::abs(n - 1.0) <= 1e-6)) {
    throw Error(ErrorCode::InvalidUnitVector, "norm " + format_number(n));
  }
  const double theta = (p.x == 0.0 && p.y == 0.0) ? 0.0 : wrap_angle(std::atan2(p.y, p.x));
  return {theta, std::asin(std::clamp(p.z, -1.0, 1.0))};
}

ComplexPoint stp(const UnitVec3& p) noexcept {
  const double denom = 1.0 - p.x;
  if (std::abs(denom) <= 1e-12) return ComplexPoint::infinity();
  return {{p.y / denom, p.z / denom}, false};
}

UnitVec3 stp_inv(const ComplexPoint& z) noexcept {
  if (z.at_infinity) return {1.0, 0.0, 0.0};
  const double r2 = std::norm(z.value);
  const double k = 1.0 + r2;
  return {(r2 - 1.0) / k, 2.0 * z.re() / k, 2.0 * z.im() / k};
}

std::vector<Point3f> depth_to_pointcloud(const DepthMap& depth) {
  if (depth.units != DepthUnits::Metric) {
    throw Error(ErrorCode::WrongDepthUnits,
                "point clouds need metric depth, got " + std::string(units_name(depth.units)));
  }
  // Any grid works here; the angular map only needs H and W.
  const ErpGrid grid{depth.rows(), depth.cols()};
  std::vector<Point3f> points;
  points.reserve(depth.valid_count());
  for (int v = 0; v < depth.rows(); ++v) {
    for (int u = 0; u < depth.cols(); ++u) {
      if (!depth.is_valid(v, u)) continue;
      const double d = depth.at(v, u);
      const UnitVec3 dir = sp(pixel_to_angles(u, v, grid));
      points.push_back({static_cast<float>(d * dir.x), static_cast<float>(d * dir.y),
                        static_cast<float>(d * dir.z)});
    }
  }
  return points;
}

}  // namespace pansphere

#pragma once

// Coordinate conventions shared by every module.
//
//   ERP pixel (u, v)  <->  (theta, phi)  <->  unit vector  <->  complex plane
//
// theta is longitude in [-pi, pi), phi latitude in [-pi/2, pi/2]. Pixel
// centers sit at (u + 0.5, v + 0.5), so the image center is theta = 0,
// phi = 0 and the top-left corner is (-pi, pi/2). theta = 0 faces +x.
// The stereographic projection uses the equator point (1, 0, 0) as its pole;
// the antipode (-1, 0, 0) lands on the complex origin.

#include <complex>
#include <numbers>
#include <vector>

#include "pansphere/raster.hpp"

namespace pansphere {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double deg_to_rad(double deg) noexcept { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) noexcept { return rad * 180.0 / kPi; }

/// Wraps an angle into [-pi, pi).
double wrap_angle(double theta) noexcept;

struct ErpGrid {
  int height = 0;
  int width = 0;

  /// Validates W = 2H and H >= 2.
  static ErpGrid make(int height, int width);
  static ErpGrid with_height(int height) { return make(height, 2 * height); }
  template <typename T>
  static ErpGrid of(const Raster<T>& r) {
    return make(r.rows(), r.cols());
  }

  friend bool operator==(const ErpGrid&, const ErpGrid&) = default;
};

struct SphericalAngles {
  double theta = 0.0;
  double phi = 0.0;
};

struct UnitVec3 {
  double x = 1.0;
  double y = 0.0;
  double z = 0.0;

  double dot(const UnitVec3& o) const noexcept { return x * o.x + y * o.y + z * o.z; }
  double norm() const noexcept;
};

/// Stereographic-plane point. The projection pole has no finite image and is
/// carried as an explicit flag instead of IEEE infinities.
struct ComplexPoint {
  std::complex<double> value{0.0, 0.0};
  bool at_infinity = false;

  static ComplexPoint infinity() noexcept { return {{0.0, 0.0}, true}; }
  double re() const noexcept { return value.real(); }
  double im() const noexcept { return value.imag(); }
};

struct PixelCoord {
  double u = 0.0;
  double v = 0.0;
};

struct Point3f {
  float x = 0.0F;
  float y = 0.0F;
  float z = 0.0F;
};

SphericalAngles pixel_to_angles(double u, double v, const ErpGrid& grid) noexcept;
/// Inverse of pixel_to_angles; u is wrapped into [-0.5, W - 0.5).
PixelCoord angles_to_pixel(const SphericalAngles& a, const ErpGrid& grid) noexcept;

UnitVec3 sp(const SphericalAngles& a) noexcept;
/// Throws InvalidUnitVector when | |p| - 1 | > 1e-6. At the poles theta = 0.
SphericalAngles sp_inv(const UnitVec3& p);

/// Returns the point at infinity when x is within 1e-12 of 1.
ComplexPoint stp(const UnitVec3& p) noexcept;
UnitVec3 stp_inv(const ComplexPoint& z) noexcept;

/// One point per valid pixel, d * sp(pixel_to_angles(u, v)), in row-major
/// order. Requires metric depth.
std::vector<Point3f> depth_to_pointcloud(const DepthMap& depth);

}  // namespace pansphere

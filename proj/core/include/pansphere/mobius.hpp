#pragma once

#include <complex>

#include "pansphere/sphere_geom.hpp"

namespace pansphere {

/// f(Z) = (aZ + b) / (cZ + d), stored as the 2x2 matrix [[a, b], [c, d]].
class MobiusParams {
 public:
  using Complex = std::complex<double>;

  /// Identity (1, 0, 0, 1).
  MobiusParams() = default;
  /// Throws InvalidMobius when |ad - bc| <= 1e-12.
  MobiusParams(Complex a, Complex b, Complex c, Complex d);

  static MobiusParams identity() { return {}; }

  const Complex& a() const noexcept { return a_; }
  const Complex& b() const noexcept { return b_; }
  const Complex& c() const noexcept { return c_; }
  const Complex& d() const noexcept { return d_; }
  Complex determinant() const noexcept { return a_ * d_ - b_ * c_; }

  /// Adjugate (d, -b, -c, a); induces the inverse map.
  MobiusParams inverse() const;

  friend bool operator==(const MobiusParams&, const MobiusParams&) = default;

 private:
  Complex a_{1.0, 0.0};
  Complex b_{0.0, 0.0};
  Complex c_{0.0, 0.0};
  Complex d_{1.0, 0.0};
};

/// Vertical rotation: a = cos(beta) + j sin(beta), b = c = 0, d = 1.
MobiusParams mobius_rotation(double beta_rad);
/// Spherical zoom: a = s, b = c = 0, d = 1. Throws InvalidZoom for s <= 0.
MobiusParams mobius_zoom(double s);
/// Matrix product m2 * m1: the result applies m1 first, then m2.
MobiusParams compose(const MobiusParams& m2, const MobiusParams& m1);

ComplexPoint apply_mobius(const MobiusParams& m, const ComplexPoint& z) noexcept;

}  // namespace pansphere

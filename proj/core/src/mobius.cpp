#include "pansphere/mobius.hpp"

#include <cmath>
#include <string>

#include "pansphere/format.hpp"

namespace pansphere {

MobiusParams::MobiusParams(Complex a, Complex b, Complex c, Complex d)
    : a_(a), b_(b), c_(c), d_(d) {
  if (!(std::abs(determinant()) > 1e-12)) {
    throw Error(ErrorCode::InvalidMobius, "ad - bc must be nonzero");
  }
}

MobiusParams MobiusParams::inverse() const { return {d_, -b_, -c_, a_}; }

MobiusParams mobius_rotation(double beta_rad) {
  return {{std::cos(beta_rad), std::sin(beta_rad)}, 0.0, 0.0, 1.0};
}

MobiusParams mobius_zoom(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw Error(ErrorCode::InvalidZoom, "zoom level must be positive, got " + format_number(s));
  }
  return {s, 0.0, 0.0, 1.0};
}

MobiusParams compose(const MobiusParams& m2, const MobiusParams& m1) {
  return {m2.a() * m1.a() + m2.b() * m1.c(), m2.a() * m1.b() + m2.b() * m1.d(),
          m2.c() * m1.a() + m2.d() * m1.c(), m2.c() * m1.b() + m2.d() * m1.d()};
}

ComplexPoint apply_mobius(const MobiusParams& m, const ComplexPoint& z) noexcept {
  if (z.at_infinity) {
    // f(inf) = a / c, or inf when c = 0.
    if (m.c() == 0.0) return ComplexPoint::infinity();
    return {m.a() / m.c(), false};
  }
  const auto den = m.c() * z.value + m.d();
  if (den == 0.0) return ComplexPoint::infinity();
  return {(m.a() * z.value + m.b()) / den, false};
}

}  // namespace pansphere

#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "pansphere/mobius.hpp"

using namespace pansphere;
using C = std::complex<double>;

namespace {

void expect_params(const MobiusParams& m, C a, C b, C c, C d, double tol = 0.0) {
  EXPECT_NEAR(std::abs(m.a() - a), 0.0, tol);
  EXPECT_NEAR(std::abs(m.b() - b), 0.0, tol);
  EXPECT_NEAR(std::abs(m.c() - c), 0.0, tol);
  EXPECT_NEAR(std::abs(m.d() - d), 0.0, tol);
}

}  // namespace

TEST(MobiusRotation, Constructor) {
  expect_params(mobius_rotation(0.0), 1.0, 0.0, 0.0, 1.0);
  expect_params(mobius_rotation(kPi / 2), C(0, 1), 0.0, 0.0, 1.0, 1e-16);
  const ComplexPoint z = apply_mobius(mobius_rotation(kPi / 2), {{1.0, 0.0}, false});
  EXPECT_NEAR(z.re(), 0.0, 1e-16);
  EXPECT_NEAR(z.im(), 1.0, 1e-16);
}

TEST(MobiusZoom, Constructor) {
  EXPECT_EQ(mobius_zoom(1.0), MobiusParams::identity());
  expect_params(mobius_zoom(0.4), 0.4, 0.0, 0.0, 1.0);
  const ComplexPoint z = apply_mobius(mobius_zoom(2.0), {{1.0, 0.0}, false});
  EXPECT_EQ(z.value, C(2.0, 0.0));
  for (double s : {0.0, -1.0, std::nan("")}) {
    try {
      mobius_zoom(s);
      FAIL() << s;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidZoom);
    }
  }
}

TEST(MobiusParams, RejectsSingular) {
  EXPECT_THROW(MobiusParams(1.0, 2.0, 2.0, 4.0), Error);
  EXPECT_NO_THROW(MobiusParams(1.0, 2.0, 3.0, 4.0));
}

TEST(Compose, MatrixProduct) {
  const MobiusParams m(C(1, 2), C(0.5, -1), C(0.25, 0), C(2, 1));
  EXPECT_EQ(compose(MobiusParams::identity(), m), m);
  EXPECT_EQ(compose(m, MobiusParams::identity()), m);
  expect_params(compose(mobius_zoom(2.0), mobius_rotation(kPi / 2)), C(0, 2), 0.0, 0.0, 1.0,
                1e-15);
}

TEST(Compose, RotationInverseIsIdentityMap) {
  const MobiusParams m = compose(mobius_rotation(0.7), mobius_rotation(-0.7));
  for (C z : {C(0.3, -2.0), C(5.0, 1.0), C(-0.1, 0.0)}) {
    const ComplexPoint w = apply_mobius(m, {z, false});
    EXPECT_NEAR(std::abs(w.value - z), 0.0, 1e-14);
  }
}

TEST(Compose, AppliesRightFactorFirst) {
  const MobiusParams m1(C(1, 1), C(0, 1), C(0.2, 0), C(1, 0));
  const MobiusParams m2(C(2, 0), C(-1, 0), C(0, 0.3), C(1, -1));
  for (C z : {C(0.3, -2.0), C(1.5, 1.0), C(-4, 0.5)}) {
    const ComplexPoint seq = apply_mobius(m2, apply_mobius(m1, {z, false}));
    const ComplexPoint once = apply_mobius(compose(m2, m1), {z, false});
    EXPECT_NEAR(std::abs(seq.value - once.value), 0.0, 1e-13);
  }
}

TEST(ApplyMobius, Examples) {
  const ComplexPoint z{{0.3, -0.7}, false};
  EXPECT_EQ(apply_mobius(MobiusParams::identity(), z).value, z.value);
  EXPECT_EQ(apply_mobius(mobius_zoom(3.0), {{1.0, 1.0}, false}).value, C(3.0, 3.0));
}

TEST(ApplyMobius, InfinityHandling) {
  // Zoom and rotation fix the point at infinity.
  EXPECT_TRUE(apply_mobius(mobius_zoom(2.0), ComplexPoint::infinity()).at_infinity);
  const MobiusParams m(1.0, 0.0, 1.0, -1.0);  // (z) / (z - 1)
  EXPECT_TRUE(apply_mobius(m, {{1.0, 0.0}, false}).at_infinity);
  EXPECT_EQ(apply_mobius(m, ComplexPoint::infinity()).value, C(1.0, 0.0));
}

TEST(MobiusParams, InverseUndoesMap) {
  const MobiusParams m(C(1, 2), C(0.5, -1), C(0.25, 0), C(2, 1));
  for (C z : {C(0.3, -2.0), C(1.5, 1.0)}) {
    const ComplexPoint back = apply_mobius(m.inverse(), apply_mobius(m, {z, false}));
    EXPECT_NEAR(std::abs(back.value - z), 0.0, 1e-13);
  }
}

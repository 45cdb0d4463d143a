#include <gtest/gtest.h>

#include <json.hpp>

#include "pansphere/format.hpp"
#include "pansphere/losses.hpp"
#include "pansphere/mtsa.hpp"
#include "synthetic.hpp"

using namespace pansphere;

TEST(MtsaDraw, DefaultRangesAndMeans) {
  const MtsaConfig cfg{.seed = 123};
  const int n = 100000;
  double theta_sum = 0.0;
  double zoom_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const MtsaDraw d = draw_spec(cfg, static_cast<std::size_t>(i));
    ASSERT_GE(d.theta_deg, -10.0);
    ASSERT_LT(d.theta_deg, 10.0);
    ASSERT_GE(d.zoom, 1.0);
    ASSERT_LT(d.zoom, 1.5);
    theta_sum += d.theta_deg;
    zoom_sum += d.zoom;
  }
  EXPECT_NEAR(theta_sum / n, 0.0, 0.1);
  EXPECT_NEAR(zoom_sum / n, 1.25, 0.005);
}

TEST(MtsaDraw, SpecIsZoomAfterRotation) {
  const MtsaDraw d = draw_spec(MtsaConfig{.seed = 9}, 4);
  const MobiusParams expected = compose(mobius_zoom(d.zoom), mobius_rotation(deg_to_rad(d.theta_deg)));
  EXPECT_EQ(d.spec.mobius, expected);
  EXPECT_EQ(d.spec.roll, 0.0);
  EXPECT_EQ(d.index, 4U);
}

TEST(MtsaDraw, DeterministicPerIndex) {
  const MtsaConfig cfg{.seed = 77};
  for (std::size_t i : {0U, 1U, 99999U}) {
    const MtsaDraw a = draw_spec(cfg, i);
    const MtsaDraw b = draw_spec(cfg, i);
    EXPECT_EQ(a.theta_deg, b.theta_deg);
    EXPECT_EQ(a.zoom, b.zoom);
    EXPECT_EQ(a.spec.mobius, b.spec.mobius);
  }
  EXPECT_NE(draw_spec(cfg, 0).theta_deg, draw_spec(cfg, 1).theta_deg);
  EXPECT_NE(draw_spec(cfg, 0).theta_deg, draw_spec(MtsaConfig{.seed = 78}, 0).theta_deg);
}

TEST(MtsaDraw, DegenerateRangesGiveIdentity) {
  const MtsaConfig cfg{.theta_lo_deg = 0, .theta_hi_deg = 0, .zoom_lo = 1, .zoom_hi = 1};
  const MtsaDraw d = draw_spec(cfg, 3);
  EXPECT_EQ(d.theta_deg, 0.0);
  EXPECT_EQ(d.zoom, 1.0);
  EXPECT_EQ(d.spec.mobius, MobiusParams::identity());
}

TEST(MtsaConfig, Validation) {
  EXPECT_NO_THROW(MtsaConfig{}.validate());
  EXPECT_THROW((MtsaConfig{.theta_lo_deg = -100}.validate()), Error);
  EXPECT_THROW((MtsaConfig{.zoom_lo = 0.0}.validate()), Error);
  EXPECT_THROW((MtsaConfig{.zoom_lo = 2.0, .zoom_hi = 1.0}.validate()), Error);
  EXPECT_THROW((MtsaConfig{.count = 0}.validate()), Error);
}

TEST(MtsaUniform, StaysBelowUpperBound) {
  for (std::size_t i = 0; i < 1000; ++i) {
    const double x = mtsa_uniform(1, i, 1, 1.0, std::nextafter(1.0, 2.0));
    EXPECT_GE(x, 1.0);
    EXPECT_LT(x, std::nextafter(1.0, 2.0));
  }
}

TEST(GeneratePair, IdentityReturnsInputs) {
  const ErpImage img = pansphere::testing::smooth_panorama(32);
  const DepthMap d = pansphere::testing::random_depth(32, 64, 1);
  const AugmentedPair pair =
      generate_pair(img, d, WarpSpec::identity().with_interpolation(Interpolation::Nearest));
  EXPECT_EQ(pair.image.pixels, img.pixels);
  EXPECT_EQ(pair.depth.values, d.values);
}

TEST(GeneratePair, ConstantInputsStayConstantWithSharedMask) {
  const ErpImage img(48, 96, 3, 0.6);
  const DepthMap d(48, 96, DepthUnits::Normalized, 0.4);
  WarpSpec spec{compose(mobius_zoom(1.2), mobius_rotation(deg_to_rad(10.0)))};
  const AugmentedPair pair = generate_pair(img, d, spec);
  EXPECT_EQ(pair.image.valid, pair.depth.valid);
  for (double v : pair.image.pixels.data()) ASSERT_EQ(v, 0.6);
  for (double v : pair.depth.values.data()) ASSERT_EQ(v, 0.4);
}

TEST(GeneratePair, SelfConsistentAndMaskShared) {
  const ErpImage img = pansphere::testing::smooth_panorama(48);
  const DepthMap d = pansphere::testing::random_depth(48, 96, 2);
  for (std::size_t i = 0; i < 5; ++i) {
    const MtsaDraw draw = draw_spec(MtsaConfig{.seed = 5}, i);
    const AugmentedPair pair = generate_pair(img, d, draw.spec);
    EXPECT_EQ(pair.image.valid, pair.depth.valid);
    EXPECT_EQ(mtsa_loss(pair.depth, pair.depth), 0.0);
  }
}

TEST(GeneratePair, ShapeMismatchThrows) {
  try {
    generate_pair(ErpImage(16, 32, 3), DepthMap(8, 16), WarpSpec::identity());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ShapeMismatch);
  }
}

TEST(SampleParams, JsonRecordsDraw) {
  const MtsaConfig cfg{.seed = 31};
  const MtsaDraw draw = draw_spec(cfg, 2);
  const auto j = nlohmann::json::parse(sample_params_json(cfg, draw));
  EXPECT_EQ(j.at("seed").get<std::uint64_t>(), 31U);
  EXPECT_EQ(j.at("index").get<std::size_t>(), 2U);
  EXPECT_EQ(j.at("compose_order").get<std::string>(), kComposeOrder);
  EXPECT_EQ(j.at("theta_deg").get<double>(), round_significant(draw.theta_deg));
  EXPECT_NEAR(j.at("zoom").get<double>(), draw.zoom, 1e-5);
}

#include <gtest/gtest.h>

#include <random>

#include "pansphere/depth_norm.hpp"
#include "synthetic.hpp"

using namespace pansphere;
using pansphere::testing::oracle_percentile;
using pansphere::testing::random_depth;

namespace {

DepthMap linear_ramp(int n, double lo, double hi) {
  Plane v(1, n);
  for (int i = 0; i < n; ++i) v.at(0, i) = lo + (hi - lo) * i / (n - 1);
  return DepthMap::from_values(std::move(v));
}

std::vector<double> valid_values(const DepthMap& d) {
  std::vector<double> out;
  for (int r = 0; r < d.rows(); ++r) {
    for (int c = 0; c < d.cols(); ++c) {
      if (d.is_valid(r, c)) out.push_back(d.at(r, c));
    }
  }
  return out;
}

}  // namespace

TEST(Percentiles, RampFixture) {
  const DepthMap d = linear_ramp(101, 0.0, 10.0);
  const PercentileRange p = depth_percentiles(d);
  EXPECT_NEAR(p.low, 0.2, 1e-12);
  EXPECT_NEAR(p.high, 9.8, 1e-12);
  const DepthMap n = normalize_depth(d);
  EXPECT_NEAR(n.at(0, 50), (5.0 - 0.2) / 9.6, 1e-12);
  EXPECT_EQ(n.at(0, 0), kNormalizedFloor);
  EXPECT_EQ(n.at(0, 100), kNormalizedCeil);
  EXPECT_EQ(n.units, DepthUnits::Normalized);
}

TEST(Percentiles, MatchSortOracle) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    DepthMap d = random_depth(13, 26, seed, 0.1, 50.0);
    d.valid.at(3, 4) = 0;
    const std::vector<double> v = valid_values(d);
    const PercentileRange p = depth_percentiles(d);
    EXPECT_NEAR(p.low, oracle_percentile(v, 0.02), 1e-12);
    EXPECT_NEAR(p.high, oracle_percentile(v, 0.98), 1e-12);
  }
}

TEST(Normalize, OutputsInRangeAndInvalidKept) {
  DepthMap d = random_depth(20, 40, 4, 0.5, 80.0);
  d.valid.at(1, 1) = 0;
  const DepthMap n = normalize_depth(d);
  EXPECT_FALSE(n.is_valid(1, 1));
  for (double v : valid_values(n)) {
    EXPECT_GE(v, kNormalizedFloor);
    EXPECT_LE(v, kNormalizedCeil);
  }
}

TEST(Normalize, PositiveAffineInvariance) {
  const DepthMap d = random_depth(16, 32, 8, 0.5, 20.0);
  DepthMap e = d;
  for (auto& v : e.values.data()) v = 3.7 * v + 11.0;
  const DepthMap a = normalize_depth(d);
  const DepthMap b = normalize_depth(e);
  for (std::size_t i = 0; i < a.values.data().size(); ++i) {
    EXPECT_NEAR(a.values.data()[i], b.values.data()[i], 1e-12);
  }
}

TEST(Normalize, DegenerateRangeThrows) {
  const DepthMap d(8, 16, DepthUnits::Metric, 4.2);
  try {
    normalize_depth(d);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateDepthRange);
  }
}

TEST(Alignment, HandSolvedFixture) {
  const std::vector<double> p{1.0, 2.0, 3.0};
  const std::vector<double> g{5.0, 7.0, 9.0};
  const AlignmentParams a =
      fit_alignment(DepthMap::from_row(p), DepthMap::from_row(g), AlignmentSpace::Depth);
  EXPECT_EQ(a.scale, 2.0);
  EXPECT_EQ(a.shift, 3.0);
  const DepthMap aligned = apply_alignment(DepthMap::from_row(p), a);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(aligned.at(0, i), g[static_cast<std::size_t>(i)]);
}

TEST(Alignment, IdentityAndDegenerate) {
  const DepthMap d = random_depth(6, 12, 2);
  const AlignmentParams a = fit_alignment(d, d, AlignmentSpace::Depth);
  EXPECT_NEAR(a.scale, 1.0, 1e-12);
  EXPECT_NEAR(a.shift, 0.0, 1e-12);
  const DepthMap flat(6, 12, DepthUnits::Metric, 2.0);
  try {
    fit_alignment(flat, d, AlignmentSpace::Depth);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateAlignment);
  }
  DepthMap lonely = d;
  for (auto& m : lonely.valid.data()) m = 0;
  lonely.valid.at(0, 0) = 1;
  try {
    fit_alignment(lonely, d, AlignmentSpace::Depth);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyOverlap);
  }
}

TEST(Alignment, ZeroResidualWhenGtIsAffine) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> s(0.1, 5.0);
  std::uniform_real_distribution<double> t(-1.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const DepthMap pred = random_depth(8, 16, 100 + trial, 1.0, 10.0);
    const double scale = s(rng);
    const double shift = t(rng);
    DepthMap gt = pred;
    for (auto& v : gt.values.data()) v = scale * v + shift;
    const AlignmentParams a = fit_alignment(pred, gt, AlignmentSpace::Depth);
    EXPECT_NEAR(a.scale, scale, 1e-10);
    EXPECT_NEAR(a.shift, shift, 1e-10);
    const DepthMap aligned = apply_alignment(pred, a);
    for (std::size_t i = 0; i < gt.values.data().size(); ++i) {
      ASSERT_NEAR(aligned.values.data()[i], gt.values.data()[i], 1e-10);
    }
  }
}

TEST(Alignment, IsLeastSquaresOptimum) {
  const DepthMap pred = random_depth(10, 20, 5);
  const DepthMap gt = random_depth(10, 20, 6);
  const AlignmentParams a = fit_alignment(pred, gt, AlignmentSpace::Depth);
  auto sse = [&](double s, double t) {
    double acc = 0.0;
    for (std::size_t i = 0; i < pred.values.data().size(); ++i) {
      const double e = s * pred.values.data()[i] + t - gt.values.data()[i];
      acc += e * e;
    }
    return acc;
  };
  const double best = sse(a.scale, a.shift);
  for (double ds : {-1e-3, 0.0, 1e-3}) {
    for (double dt : {-1e-3, 0.0, 1e-3}) EXPECT_GE(sse(a.scale + ds, a.shift + dt), best - 1e-12);
  }
}

TEST(Alignment, DisparitySpace) {
  const DepthMap pred = random_depth(6, 12, 9, 1.0, 10.0);
  DepthMap gt = pred;
  for (auto& v : gt.values.data()) v = 1.0 / (0.5 / v + 0.02);
  const AlignmentParams a = fit_alignment(pred, gt, AlignmentSpace::Disparity);
  EXPECT_NEAR(a.scale, 0.5, 1e-10);
  EXPECT_NEAR(a.shift, 0.02, 1e-10);
  EXPECT_EQ(a.space, AlignmentSpace::Disparity);
  const DepthMap aligned = apply_alignment(pred, a);
  for (std::size_t i = 0; i < gt.values.data().size(); ++i) {
    EXPECT_NEAR(aligned.values.data()[i], gt.values.data()[i], 1e-9);
  }
}

TEST(SkyFill, SetsMaskedPixelsToFar) {
  DepthMap d(4, 8, DepthUnits::Normalized, 0.3);
  d.valid.at(0, 0) = 0;
  Mask sky(4, 8);
  sky.at(0, 0) = 1;
  sky.at(0, 1) = 1;
  const DepthMap out = sky_fill(d, sky);
  EXPECT_TRUE(out.is_valid(0, 0));
  EXPECT_EQ(out.at(0, 0), 1.0);
  EXPECT_EQ(out.at(0, 1), 1.0);
  EXPECT_EQ(out.at(1, 1), 0.3);
  try {
    sky_fill(d, Mask(3, 8));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ShapeMismatch);
  }
}

TEST(Upscale, DoublesResolution) {
  const ErpImage img = pansphere::testing::smooth_panorama(32);
  const ErpImage up = upscale_for_pseudo(img, 2.0);
  EXPECT_EQ(up.rows(), 64);
  EXPECT_EQ(up.cols(), 128);
  EXPECT_EQ(up.channels(), 3);
  const ErpImage same = upscale_for_pseudo(img, 1.0);
  EXPECT_EQ(same.pixels, img.pixels);
  const ErpImage flat = upscale_for_pseudo(ErpImage(8, 16, 1, 0.7), 2.0);
  for (double v : flat.pixels.data()) EXPECT_EQ(v, 0.7);
  EXPECT_THROW(upscale_for_pseudo(img, 0.5), Error);
}

#include <gtest/gtest.h>

#include "pansphere/metrics.hpp"
#include "synthetic.hpp"

using namespace pansphere;
using pansphere::testing::oracle_metrics;
using pansphere::testing::random_depth;

namespace {

std::vector<double> values(const DepthMap& d) {
  return {d.values.data().begin(), d.values.data().end()};
}

}  // namespace

TEST(Metrics, HandFixture) {
  const std::vector<double> p{1.0, 2.0, 3.0};
  const std::vector<double> g{1.0, 2.0, 5.0};
  const MetricReport m = compute_metrics(DepthMap::from_row(p), DepthMap::from_row(g));
  EXPECT_NEAR(m.abs_rel, 0.133333, 1e-6);
  EXPECT_NEAR(m.rmse, 1.154701, 1e-6);
  EXPECT_NEAR(m.delta1, 2.0 / 3.0, 1e-6);
  EXPECT_EQ(m.delta2, 2.0 / 3.0);  // 5/3 > 1.5625
  EXPECT_EQ(m.delta3, 1.0);
  EXPECT_EQ(m.valid_pixels, 3U);
}

TEST(Metrics, PerfectPrediction) {
  const DepthMap d = random_depth(8, 16, 1);
  const MetricReport m = compute_metrics(d, d);
  EXPECT_EQ(m.abs_rel, 0.0);
  EXPECT_EQ(m.rmse, 0.0);
  EXPECT_EQ(m.delta1, 1.0);
  EXPECT_EQ(m.delta3, 1.0);
}

TEST(Metrics, AgreesWithOracle) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const DepthMap p = random_depth(16, 32, 1000 + seed, 0.2, 12.0);
    const DepthMap g = random_depth(16, 32, 2000 + seed, 0.2, 12.0);
    const MetricReport m = compute_metrics(p, g);
    const auto o = oracle_metrics(values(p), values(g));
    EXPECT_NEAR(m.abs_rel, o.abs_rel, 1e-12);
    EXPECT_NEAR(m.rmse, o.rmse, 1e-12);
    EXPECT_NEAR(m.delta1, o.delta[0], 1e-12);
    EXPECT_NEAR(m.delta2, o.delta[1], 1e-12);
    EXPECT_NEAR(m.delta3, o.delta[2], 1e-12);
    EXPECT_EQ(m.valid_pixels, o.count);
    EXPECT_LE(m.delta1, m.delta2);
    EXPECT_LE(m.delta2, m.delta3);
  }
}

TEST(Metrics, DeltaSymmetricAbsRelNot) {
  const DepthMap p = random_depth(16, 32, 7, 0.5, 5.0);
  const DepthMap g = random_depth(16, 32, 8, 0.5, 5.0);
  const MetricReport a = compute_metrics(p, g);
  const MetricReport b = compute_metrics(g, p);
  EXPECT_EQ(a.delta1, b.delta1);
  EXPECT_EQ(a.delta2, b.delta2);
  EXPECT_EQ(a.delta3, b.delta3);
  EXPECT_NE(a.abs_rel, b.abs_rel);
  EXPECT_NEAR(a.rmse, b.rmse, 1e-12);
}

TEST(Metrics, CapExcludesOutliers) {
  const DepthMap p = random_depth(16, 32, 9, 0.5, 9.0);
  DepthMap g = random_depth(16, 32, 10, 0.5, 9.0);
  const MetricOptions capped{10.0, std::nullopt};
  const MetricReport before = compute_metrics(p, g, capped);
  g.values.at(0, 0) = 50.0;
  g.values.at(5, 5) = 1e6;
  const MetricReport after = compute_metrics(p, g, capped);
  EXPECT_EQ(after.valid_pixels, before.valid_pixels - 2);
  DepthMap p2 = p;
  p2.values.at(0, 0) = 1e9;
  p2.values.at(5, 5) = 1e-9;
  const MetricReport again = compute_metrics(p2, g, capped);
  EXPECT_EQ(again.abs_rel, after.abs_rel);
  EXPECT_EQ(again.rmse, after.rmse);
  EXPECT_EQ(again.delta1, after.delta1);
}

TEST(Metrics, InvalidPixelsIgnored) {
  DepthMap p = random_depth(4, 8, 11);
  DepthMap g = random_depth(4, 8, 12);
  p.valid.at(0, 0) = 0;
  g.values.at(1, 1) = 0.0;
  g.values.at(2, 2) = std::numeric_limits<double>::infinity();
  EXPECT_EQ(compute_metrics(p, g).valid_pixels, 29U);
}

TEST(Metrics, AlignmentRemovesAffine) {
  const DepthMap g = random_depth(16, 32, 13);
  DepthMap p = g;
  for (auto& v : p.values.data()) v = (v - 3.0) / 2.0 + 5.0;
  const MetricReport m = compute_metrics(p, g, {std::nullopt, AlignmentSpace::Depth});
  EXPECT_NEAR(m.abs_rel, 0.0, 1e-12);
  EXPECT_NEAR(m.rmse, 0.0, 1e-12);
  EXPECT_EQ(m.delta1, 1.0);
}

TEST(Metrics, EmptyOverlapThrows) {
  DepthMap p = random_depth(4, 8, 1);
  DepthMap g = random_depth(4, 8, 2);
  for (auto& v : g.values.data()) v = 20.0;
  try {
    compute_metrics(p, g, {10.0, std::nullopt});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyOverlap);
  }
}

#include <gtest/gtest.h>

#include <sstream>

#include "pansphere/depth_norm.hpp"
#include "pansphere/sweep.hpp"
#include "synthetic.hpp"

using namespace pansphere;

TEST(SweepGrid, Defaults) {
  const auto angles = default_sweep_angles();
  ASSERT_EQ(angles.size(), 11U);
  EXPECT_EQ(angles.front(), -90.0);
  EXPECT_EQ(angles.back(), 90.0);
  EXPECT_NE(std::find(angles.begin(), angles.end(), 0.0), angles.end());
  const auto zooms = default_sweep_zooms();
  ASSERT_EQ(zooms.size(), 10U);
  EXPECT_NEAR(zooms.front(), 0.4, 1e-15);
  EXPECT_NEAR(zooms.back(), 4.0, 1e-15);
}

TEST(SweepCell, Spec) {
  SweepCell rot{SweepTransform::Rotation, 18.0, std::nullopt, {}};
  EXPECT_EQ(rot.transform_name(), "rotation");
  EXPECT_EQ(rot.spec().mobius, mobius_rotation(deg_to_rad(18.0)));
  SweepCell zoom{SweepTransform::Zoom, 2.0, std::nullopt, {}};
  EXPECT_EQ(zoom.transform_name(), "zoom");
  EXPECT_EQ(zoom.spec().mobius, mobius_zoom(2.0));
}

TEST(Sweep, OraclePredictorIsNearPerfect) {
  const DepthMap gt = normalize_depth(pansphere::testing::box_room_depth(64));
  const ErpImage image = as_image(gt);
  const Predictor oracle = [](const ErpImage& warped, const SweepCell&) {
    return as_depth(warped, DepthUnits::Normalized);
  };
  const auto cells = sweep_transformations(oracle, image, gt, {-36.0, 0.0, 54.0}, {0.4, 2.0}, {}, 2);
  ASSERT_EQ(cells.size(), 5U);
  EXPECT_EQ(cells[0].transform, SweepTransform::Rotation);
  EXPECT_EQ(cells[4].transform, SweepTransform::Zoom);
  for (const SweepCell& c : cells) {
    ASSERT_TRUE(c.report.has_value()) << c.error;
    EXPECT_LT(c.report->rmse, 1e-12);
  }
}

TEST(Sweep, FailingCellsAreRecordedAndRunContinues) {
  const DepthMap gt = normalize_depth(pansphere::testing::box_room_depth(32));
  const Predictor flaky = [](const ErpImage& warped, const SweepCell& cell) {
    if (cell.transform == SweepTransform::Zoom) throw std::runtime_error("model crashed");
    return as_depth(warped, DepthUnits::Normalized);
  };
  const auto cells = sweep_transformations(flaky, as_image(gt), gt, {0.0}, {1.5});
  ASSERT_EQ(cells.size(), 2U);
  EXPECT_TRUE(cells[0].report.has_value());
  EXPECT_FALSE(cells[1].report.has_value());
  EXPECT_NE(cells[1].error.find("model crashed"), std::string::npos);

  std::ostringstream csv;
  write_sweep_csv(csv, cells);
  std::istringstream lines(csv.str());
  std::string header;
  std::string first;
  std::string second;
  std::getline(lines, header);
  std::getline(lines, first);
  std::getline(lines, second);
  EXPECT_EQ(header, kSweepCsvHeader);
  EXPECT_EQ(first.rfind("rotation,0,0,0,1,1,1,", 0), 0U) << first;
  EXPECT_EQ(second, "zoom,1.5,,,,,,");
}

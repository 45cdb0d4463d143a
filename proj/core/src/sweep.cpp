#include "pansphere/sweep.hpp"

#include <ostream>

#include "pansphere/format.hpp"
#include "pansphere/parallel.hpp"

namespace pansphere {

std::string SweepCell::transform_name() const {
  return transform == SweepTransform::Rotation ? "rotation" : "zoom";
}

WarpSpec SweepCell::spec() const {
  return transform == SweepTransform::Rotation ? WarpSpec::rotation_deg(level)
                                               : WarpSpec::zoom(level);
}

std::vector<double> default_sweep_angles() {
  std::vector<double> out;
  for (int k = 0; k <= 10; ++k) out.push_back(-90.0 + 18.0 * k);
  return out;
}

std::vector<double> default_sweep_zooms() {
  std::vector<double> out;
  for (int k = 1; k <= 10; ++k) out.push_back(0.4 * k);
  return out;
}

std::vector<SweepCell> sweep_transformations(const Predictor& predict, const ErpImage& image,
                                             const DepthMap& gt, const std::vector<double>& angles,
                                             const std::vector<double>& zooms,
                                             const MetricOptions& options, std::size_t jobs) {
  if (image.rows() != gt.rows() || image.cols() != gt.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "sweep image and ground truth differ in size");
  }
  ErpGrid::of(image.pixels);

  std::vector<SweepCell> cells;
  for (double a : angles) cells.push_back({SweepTransform::Rotation, a, std::nullopt, {}});
  for (double z : zooms) cells.push_back({SweepTransform::Zoom, z, std::nullopt, {}});

  // Cells run in parallel; each warp then stays single-threaded.
  parallel_for(
      cells.size(),
      [&](std::size_t i) {
        SweepCell& cell = cells[i];
        try {
          const WarpSpec spec = cell.spec();
          const ErpImage warped = warp_erp(image, spec, 1);
          const DepthMap warped_gt = warp_depth_target(gt, spec, 1);
          DepthMap pred = predict(warped, cell);
          cell.report = compute_metrics(pred, warped_gt, options);
        } catch (const std::exception& e) {
          cell.report.reset();
          cell.error = e.what();
        }
      },
      jobs);
  return cells;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepCell>& cells) {
  out << kSweepCsvHeader << '\n';
  for (const SweepCell& cell : cells) {
    out << cell.transform_name() << ',' << format_number(cell.level);
    if (cell.report) {
      const MetricReport& r = *cell.report;
      out << ',' << format_number(r.abs_rel) << ',' << format_number(r.rmse) << ','
          << format_number(r.delta1) << ',' << format_number(r.delta2) << ','
          << format_number(r.delta3) << ',' << r.valid_pixels;
    } else {
      out << ",,,,,,";
    }
    out << '\n';
  }
}

}  // namespace pansphere

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pansphere/errors.hpp"

namespace pansphere {

/// Row-major rows x cols x channels buffer with interleaved channels.
template <typename T>
class Raster {
 public:
  Raster() = default;
  Raster(int rows, int cols, int channels = 1, T fill = T{})
      : rows_(rows), cols_(cols), channels_(channels) {
    if (rows < 0 || cols < 0 || channels < 1) {
      throw Error(ErrorCode::InvalidArgument, "raster dimensions must be non-negative");
    }
    data_.assign(static_cast<std::size_t>(rows) * cols * channels, fill);
  }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int channels() const noexcept { return channels_; }
  std::size_t pixel_count() const noexcept { return static_cast<std::size_t>(rows_) * cols_; }
  bool empty() const noexcept { return data_.empty(); }

  std::size_t offset(int r, int c, int ch = 0) const noexcept {
    return (static_cast<std::size_t>(r) * cols_ + c) * channels_ + ch;
  }
  T& at(int r, int c, int ch = 0) noexcept { return data_[offset(r, c, ch)]; }
  const T& at(int r, int c, int ch = 0) const noexcept { return data_[offset(r, c, ch)]; }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }
  std::span<T> row(int r) noexcept {
    return std::span<T>(data_).subspan(offset(r, 0), static_cast<std::size_t>(cols_) * channels_);
  }
  std::span<const T> row(int r) const noexcept {
    return std::span<const T>(data_).subspan(offset(r, 0),
                                             static_cast<std::size_t>(cols_) * channels_);
  }

  template <typename U>
  bool same_plane(const Raster<U>& other) const noexcept {
    return rows_ == other.rows() && cols_ == other.cols();
  }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  int channels_ = 1;
  std::vector<T> data_;
};

using Plane = Raster<double>;
/// Nonzero means set.
using Mask = Raster<std::uint8_t>;

inline Mask full_mask(int rows, int cols) { return Mask(rows, cols, 1, 1); }

enum class DepthUnits { Metric, Normalized, Disparity };

std::string_view units_name(DepthUnits units) noexcept;
DepthUnits parse_units(std::string_view name);

/// Single-channel depth grid with a validity mask.
struct DepthMap {
  Plane values;
  Mask valid;
  DepthUnits units = DepthUnits::Metric;
  std::optional<double> max_depth;

  DepthMap() = default;
  DepthMap(int rows, int cols, DepthUnits u = DepthUnits::Metric, double fill = 0.0)
      : values(rows, cols, 1, fill), valid(full_mask(rows, cols)), units(u) {}

  /// All pixels valid.
  static DepthMap from_values(Plane v, DepthUnits u = DepthUnits::Metric) {
    DepthMap d;
    d.valid = full_mask(v.rows(), v.cols());
    d.values = std::move(v);
    d.units = u;
    return d;
  }
  /// Row vector convenience for small fixtures.
  static DepthMap from_row(std::span<const double> row, DepthUnits u = DepthUnits::Metric) {
    Plane v(1, static_cast<int>(row.size()));
    for (std::size_t i = 0; i < row.size(); ++i) v.data()[i] = row[i];
    return from_values(std::move(v), u);
  }

  int rows() const noexcept { return values.rows(); }
  int cols() const noexcept { return values.cols(); }
  bool is_valid(int r, int c) const noexcept { return valid.at(r, c) != 0; }
  double at(int r, int c) const noexcept { return values.at(r, c); }
  std::size_t valid_count() const noexcept;
};

/// Multi-channel panorama (or patch) with a validity mask. Channel values
/// are unconstrained doubles; 8-bit files map to [0, 1].
struct ErpImage {
  Plane pixels;
  Mask valid;

  ErpImage() = default;
  ErpImage(int rows, int cols, int channels, double fill = 0.0)
      : pixels(rows, cols, channels, fill), valid(full_mask(rows, cols)) {}
  explicit ErpImage(Plane p) : pixels(std::move(p)), valid(full_mask(pixels.rows(), pixels.cols())) {}

  int rows() const noexcept { return pixels.rows(); }
  int cols() const noexcept { return pixels.cols(); }
  int channels() const noexcept { return pixels.channels(); }
};

/// Depth values as a one-channel image (validity carried over).
ErpImage as_image(const DepthMap& d);
/// Channel 0 of an image as a depth map with the given units.
DepthMap as_depth(const ErpImage& img, DepthUnits units);

void require_same_plane(const DepthMap& a, const DepthMap& b, std::string_view what);

}  // namespace pansphere

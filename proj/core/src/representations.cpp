#include "pansphere/representations.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "pansphere/parallel.hpp"

namespace pansphere {
namespace {

struct TangentRow {
  double latitude_deg;
  int count;
  double offset_deg;
};

// 3 + 6 + 6 + 3 = 18, with a half-step longitude offset on alternate rows.
constexpr TangentRow kTangentRows[] = {
    {67.5, 3, 0.0},
    {22.5, 6, 30.0},
    {-22.5, 6, 0.0},
    {-67.5, 3, 60.0},
};

constexpr double kTangentFovDeg = 80.0;

void require_divisible(const ErpGrid& grid, int by, std::string_view what) {
  if (grid.height % by != 0 || grid.width % by != 0) {
    throw Error(ErrorCode::InvalidErpShape,
                std::string(what) + " needs H and W divisible by " + std::to_string(by));
  }
}

SphericalAngles center_deg(double lon, double lat) {
  return {wrap_angle(deg_to_rad(lon)), deg_to_rad(lat)};
}

PatchSet sample_patches(const ErpImage& img, PatchKind kind) {
  const ErpGrid grid = ErpGrid::of(img.pixels);
  PatchSet set{kind, grid, {}};
  const int channels = img.channels();
  for (const PatchSpec& spec : canonical_layout(kind, grid)) {
    Patch patch{spec, ErpImage(spec.rows, spec.cols, channels)};
    const GnomonicFrame frame(spec);
    parallel_for(static_cast<std::size_t>(spec.rows), [&](std::size_t row) {
      const int r = static_cast<int>(row);
      for (int c = 0; c < spec.cols; ++c) {
        const PixelCoord p = angles_to_pixel(sp_inv(frame.direction(c, r)), grid);
        auto px = patch.image.pixels.row(r).subspan(static_cast<std::size_t>(c) * channels,
                                                    channels);
        const bool ok = sample(img.pixels, img.valid, p.u, p.v, Interpolation::Bilinear,
                               HorizontalEdge::Wrap, px);
        patch.image.valid.at(r, c) = ok ? 1 : 0;
      }
    });
    set.patches.push_back(std::move(patch));
  }
  return set;
}

PatchSet slice_patches(const ErpImage& img, PatchKind kind) {
  const ErpGrid grid = ErpGrid::of(img.pixels);
  require_divisible(grid, 4, kind_name(kind));
  PatchSet set{kind, grid, {}};
  const int channels = img.channels();
  for (const PatchSpec& spec : canonical_layout(kind, grid)) {
    const int k = spec.index - 1;
    const int row0 = kind == PatchKind::HSlice ? k * spec.rows : 0;
    const int col0 = kind == PatchKind::VSlice ? k * spec.cols : 0;
    Patch patch{spec, ErpImage(spec.rows, spec.cols, channels)};
    for (int r = 0; r < spec.rows; ++r) {
      for (int c = 0; c < spec.cols; ++c) {
        for (int ch = 0; ch < channels; ++ch) {
          patch.image.pixels.at(r, c, ch) = img.pixels.at(row0 + r, col0 + c, ch);
        }
        patch.image.valid.at(r, c) = img.valid.at(row0 + r, col0 + c);
      }
    }
    set.patches.push_back(std::move(patch));
  }
  return set;
}

void validate_set(const PatchSet& set) {
  const auto expected = static_cast<std::size_t>(expected_patch_count(set.kind));
  if (set.patches.size() != expected) {
    throw Error(ErrorCode::IncompletePatchSet,
                std::string(kind_name(set.kind)) + " needs " + std::to_string(expected) +
                    " patches, got " + std::to_string(set.patches.size()));
  }
  std::set<int> seen;
  int channels = -1;
  for (const Patch& p : set.patches) {
    if (p.spec.index < 1 || p.spec.index > static_cast<int>(expected) ||
        !seen.insert(p.spec.index).second) {
      throw Error(ErrorCode::IncompletePatchSet,
                  "bad or duplicate patch index " + std::to_string(p.spec.index));
    }
    if (p.image.rows() != p.spec.rows || p.image.cols() != p.spec.cols) {
      throw Error(ErrorCode::IncompletePatchSet,
                  "patch " + std::to_string(p.spec.index) + " does not match its resolution");
    }
    if (channels >= 0 && channels != p.image.channels()) {
      throw Error(ErrorCode::IncompletePatchSet, "patches disagree on channel count");
    }
    channels = p.image.channels();
  }
}

ErpImage concatenate(const PatchSet& set) {
  const ErpGrid grid = set.source;
  const int channels = set.patches.front().image.channels();
  ErpImage out(grid.height, grid.width, channels);
  for (const Patch& p : set.patches) {
    const int k = p.spec.index - 1;
    const int row0 = set.kind == PatchKind::HSlice ? k * p.spec.rows : 0;
    const int col0 = set.kind == PatchKind::VSlice ? k * p.spec.cols : 0;
    if (row0 + p.spec.rows > grid.height || col0 + p.spec.cols > grid.width) {
      throw Error(ErrorCode::IncompletePatchSet, "slice does not fit the source grid");
    }
    for (int r = 0; r < p.spec.rows; ++r) {
      for (int c = 0; c < p.spec.cols; ++c) {
        for (int ch = 0; ch < channels; ++ch) {
          out.pixels.at(row0 + r, col0 + c, ch) = p.image.pixels.at(r, c, ch);
        }
        out.valid.at(row0 + r, col0 + c) = p.image.valid.at(r, c);
      }
    }
  }
  return out;
}

}  // namespace

std::string_view kind_name(PatchKind kind) noexcept {
  switch (kind) {
    case PatchKind::Cube: return "cube";
    case PatchKind::Tangent: return "tangent";
    case PatchKind::HSlice: return "hslice";
    case PatchKind::VSlice: return "vslice";
  }
  return "cube";
}

PatchKind parse_kind(std::string_view name) {
  if (name == "cube" || name == "cp") return PatchKind::Cube;
  if (name == "tangent" || name == "tp") return PatchKind::Tangent;
  if (name == "hslice" || name == "hs") return PatchKind::HSlice;
  if (name == "vslice" || name == "vs") return PatchKind::VSlice;
  throw Error(ErrorCode::InvalidArgument, "unknown representation '" + std::string(name) + "'");
}

int expected_patch_count(PatchKind kind) noexcept {
  switch (kind) {
    case PatchKind::Cube: return 6;
    case PatchKind::Tangent: return 18;
    case PatchKind::HSlice:
    case PatchKind::VSlice: return 4;
  }
  return 0;
}

std::vector<PatchSpec> canonical_layout(PatchKind kind, const ErpGrid& grid) {
  std::vector<PatchSpec> layout;
  switch (kind) {
    case PatchKind::Cube: {
      require_divisible(grid, 2, "cube");
      const int side = grid.height / 2;
      struct Face {
        const char* name;
        double lon;
        double lat;
      };
      constexpr Face faces[] = {{"front", 0, 0},  {"left", -90, 0}, {"right", 90, 0},
                                {"back", 180, 0}, {"top", 0, 90},   {"down", 0, -90}};
      int index = 1;
      for (const Face& f : faces) {
        layout.push_back({index++, f.name, center_deg(f.lon, f.lat), 90.0, 90.0, side, side, kind});
      }
      break;
    }
    case PatchKind::Tangent: {
      const int side = grid.height / 4;
      if (side < 1) throw Error(ErrorCode::InvalidErpShape, "grid too small for tangent patches");
      int index = 1;
      for (const TangentRow& row : kTangentRows) {
        const double step = 360.0 / row.count;
        for (int k = 0; k < row.count; ++k) {
          layout.push_back({index, "tp" + std::to_string(index),
                            center_deg(row.offset_deg + k * step, row.latitude_deg),
                            kTangentFovDeg, kTangentFovDeg, side, side, kind});
          ++index;
        }
      }
      break;
    }
    case PatchKind::HSlice: {
      require_divisible(grid, 4, "hslice");
      for (int k = 0; k < 4; ++k) {
        layout.push_back({k + 1, "hs" + std::to_string(k + 1), center_deg(0.0, 67.5 - 45.0 * k),
                          45.0, 360.0, grid.height / 4, grid.width, kind});
      }
      break;
    }
    case PatchKind::VSlice: {
      require_divisible(grid, 4, "vslice");
      for (int k = 0; k < 4; ++k) {
        layout.push_back({k + 1, "vs" + std::to_string(k + 1), center_deg(-135.0 + 90.0 * k, 0.0),
                          180.0, 90.0, grid.height, grid.width / 4, kind});
      }
      break;
    }
  }
  return layout;
}

std::vector<int> equator_indices(PatchKind kind) {
  switch (kind) {
    case PatchKind::Cube: return {1, 2, 3, 4};
    case PatchKind::Tangent: {
      std::vector<int> out;
      for (int i = 4; i <= 15; ++i) out.push_back(i);
      return out;
    }
    case PatchKind::HSlice: return {2, 3};
    case PatchKind::VSlice: break;
  }
  throw Error(ErrorCode::NoRegionSplit, "vertical slices have no equator/pole split");
}

GnomonicFrame::GnomonicFrame(const PatchSpec& spec)
    : forward_(sp(spec.center)),
      right_{-std::sin(spec.center.theta), std::cos(spec.center.theta), 0.0},
      half_width_(std::tan(deg_to_rad(spec.fov_horizontal_deg) / 2.0)),
      half_height_(std::tan(deg_to_rad(spec.fov_vertical_deg) / 2.0)),
      rows_(spec.rows),
      cols_(spec.cols) {
  // up = forward x right
  up_ = {forward_.y * right_.z - forward_.z * right_.y,
         forward_.z * right_.x - forward_.x * right_.z,
         forward_.x * right_.y - forward_.y * right_.x};
}

UnitVec3 GnomonicFrame::direction(double col, double row) const noexcept {
  const double x = half_width_ * (2.0 * (col + 0.5) / cols_ - 1.0);
  const double y = half_height_ * (1.0 - 2.0 * (row + 0.5) / rows_);
  UnitVec3 d{forward_.x + x * right_.x + y * up_.x, forward_.y + x * right_.y + y * up_.y,
             forward_.z + x * right_.z + y * up_.z};
  const double n = d.norm();
  return {d.x / n, d.y / n, d.z / n};
}

bool GnomonicFrame::pixel(const UnitVec3& dir, double& col, double& row,
                          double slack) const noexcept {
  const double depth = dir.dot(forward_);
  if (depth <= 1e-12) return false;
  const double nx = dir.dot(right_) / depth / half_width_;
  const double ny = dir.dot(up_) / depth / half_height_;
  if (std::abs(nx) > 1.0 + slack || std::abs(ny) > 1.0 + slack) return false;
  col = (nx + 1.0) * cols_ / 2.0 - 0.5;
  row = (1.0 - ny) * rows_ / 2.0 - 0.5;
  return true;
}

PatchSet erp_to_cubemap(const ErpImage& img) { return sample_patches(img, PatchKind::Cube); }
PatchSet erp_to_tangent(const ErpImage& img) { return sample_patches(img, PatchKind::Tangent); }
PatchSet erp_to_hslices(const ErpImage& img) { return slice_patches(img, PatchKind::HSlice); }
PatchSet erp_to_vslices(const ErpImage& img) { return slice_patches(img, PatchKind::VSlice); }

PatchSet erp_to_patches(const ErpImage& img, PatchKind kind) {
  switch (kind) {
    case PatchKind::Cube: return erp_to_cubemap(img);
    case PatchKind::Tangent: return erp_to_tangent(img);
    case PatchKind::HSlice: return erp_to_hslices(img);
    case PatchKind::VSlice: return erp_to_vslices(img);
  }
  return {};
}

std::vector<std::pair<std::size_t, double>> blend_weights(const std::vector<PatchSpec>& layout,
                                                          const UnitVec3& dir) {
  std::vector<std::pair<std::size_t, double>> weights;
  double total = 0.0;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const GnomonicFrame frame(layout[i]);
    double col = 0.0;
    double row = 0.0;
    if (!frame.pixel(dir, col, row)) continue;
    const double w = dir.dot(frame.forward());
    weights.emplace_back(i, w);
    total += w;
  }
  for (auto& [i, w] : weights) w /= total;
  return weights;
}

ErpImage patchset_to_erp(const PatchSet& set) {
  validate_set(set);
  if (set.kind == PatchKind::HSlice || set.kind == PatchKind::VSlice) return concatenate(set);

  const ErpGrid grid = set.source;
  const int channels = set.patches.front().image.channels();
  std::vector<GnomonicFrame> frames;
  frames.reserve(set.patches.size());
  for (const Patch& p : set.patches) frames.emplace_back(p.spec);

  ErpImage out(grid.height, grid.width, channels);
  parallel_for(static_cast<std::size_t>(grid.height), [&](std::size_t row) {
    const int v = static_cast<int>(row);
    std::vector<double> px(channels);
    std::vector<double> acc(channels);
    for (int u = 0; u < grid.width; ++u) {
      const UnitVec3 dir = sp(pixel_to_angles(u, v, grid));
      std::fill(acc.begin(), acc.end(), 0.0);
      double total = 0.0;
      bool covered = false;
      for (std::size_t i = 0; i < frames.size(); ++i) {
        double pc = 0.0;
        double pr = 0.0;
        if (!frames[i].pixel(dir, pc, pr)) continue;
        covered = true;
        const Patch& patch = set.patches[i];
        if (!sample(patch.image.pixels, patch.image.valid, pc, pr, Interpolation::Bilinear,
                    HorizontalEdge::Clamp, px)) {
          continue;
        }
        const double w = dir.dot(frames[i].forward());
        total += w;
        for (int ch = 0; ch < channels; ++ch) acc[ch] += w * px[ch];
      }
      if (!covered) {
        throw Error(ErrorCode::InternalCoverageError,
                    "pixel (" + std::to_string(u) + ", " + std::to_string(v) + ") has no patch");
      }
      if (total <= 0.0) {
        out.valid.at(v, u) = 0;
        for (int ch = 0; ch < channels; ++ch) out.pixels.at(v, u, ch) = 0.0;
        continue;
      }
      for (int ch = 0; ch < channels; ++ch) out.pixels.at(v, u, ch) = acc[ch] / total;
    }
  });
  return out;
}

RegionMasks region_masks(PatchKind kind, const ErpGrid& grid) {
  const std::vector<int> equator = equator_indices(kind);
  RegionMasks masks{Mask(grid.height, grid.width), Mask(grid.height, grid.width)};

  if (kind == PatchKind::HSlice) {
    require_divisible(grid, 4, "hslice");
    for (int v = 0; v < grid.height; ++v) {
      const bool eq = v >= grid.height / 4 && v < 3 * grid.height / 4;
      for (int u = 0; u < grid.width; ++u) {
        masks.equator.at(v, u) = eq ? 1 : 0;
        masks.pole.at(v, u) = eq ? 0 : 1;
      }
    }
    return masks;
  }

  const std::vector<PatchSpec> layout = canonical_layout(kind, grid);
  std::vector<GnomonicFrame> frames;
  for (const PatchSpec& s : layout) frames.emplace_back(s);
  for (int v = 0; v < grid.height; ++v) {
    for (int u = 0; u < grid.width; ++u) {
      const UnitVec3 dir = sp(pixel_to_angles(u, v, grid));
      int owner = -1;
      double best = -2.0;
      for (std::size_t i = 0; i < frames.size(); ++i) {
        double pc = 0.0;
        double pr = 0.0;
        if (!frames[i].pixel(dir, pc, pr)) continue;
        const double c = dir.dot(frames[i].forward());
        if (c > best) {
          best = c;
          owner = layout[i].index;
        }
      }
      if (owner < 0) {
        throw Error(ErrorCode::InternalCoverageError, "uncovered pixel in region mask");
      }
      const bool eq = std::find(equator.begin(), equator.end(), owner) != equator.end();
      masks.equator.at(v, u) = eq ? 1 : 0;
      masks.pole.at(v, u) = eq ? 0 : 1;
    }
  }
  return masks;
}

}  // namespace pansphere

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pansphere/sampling.hpp"
#include "pansphere/sphere_geom.hpp"

namespace pansphere {

enum class PatchKind { Cube, Tangent, HSlice, VSlice };

std::string_view kind_name(PatchKind kind) noexcept;
/// Accepts "cube"/"cp", "tangent"/"tp", "hslice"/"hs", "vslice"/"vs".
PatchKind parse_kind(std::string_view name);
/// 6, 18, 4, 4.
int expected_patch_count(PatchKind kind) noexcept;

struct PatchSpec {
  int index = 1;  ///< 1-based, unique within a set
  std::string name;
  SphericalAngles center;
  double fov_vertical_deg = 90.0;
  double fov_horizontal_deg = 90.0;
  int rows = 0;
  int cols = 0;
  PatchKind kind = PatchKind::Cube;
};

struct Patch {
  PatchSpec spec;
  ErpImage image;
};

struct PatchSet {
  PatchKind kind = PatchKind::Cube;
  ErpGrid source;
  std::vector<Patch> patches;
};

/// Canonical layouts for a source grid.
///
///   cube     Front, Left, Right, Back, Top, Down; 90x90 deg, H/2 x H/2
///   tangent  18 patches, 80x80 deg, H/4 x H/4; center rows at
///            +67.5 (3), +22.5 (6), -22.5 (6), -67.5 (3) deg latitude.
///            Rows alternate a half-step longitude offset.
///   hslice   4 bands of H/4 rows spanning 45x360 deg
///   vslice   4 bands of W/4 columns spanning 180x90 deg, the first centered
///            on theta = -135 deg
std::vector<PatchSpec> canonical_layout(PatchKind kind, const ErpGrid& grid);

/// Indices that form the equator group (cube 1-4, tangent 4-15, hslice 2-3).
/// Throws NoRegionSplit for vslice.
std::vector<int> equator_indices(PatchKind kind);

/// Perspective projection onto the plane tangent at a patch center.
class GnomonicFrame {
 public:
  explicit GnomonicFrame(const PatchSpec& spec);

  /// Patch pixel (col, row), fractional, to a unit direction.
  UnitVec3 direction(double col, double row) const noexcept;
  /// Direction to fractional patch pixel. Returns false when the direction is
  /// behind the tangent plane or outside the field of view (with `slack`
  /// tolerance on the normalized plane coordinates).
  bool pixel(const UnitVec3& dir, double& col, double& row, double slack = 1e-9) const noexcept;

  const UnitVec3& forward() const noexcept { return forward_; }

 private:
  UnitVec3 forward_;
  UnitVec3 right_;
  UnitVec3 up_;
  double half_width_;   ///< tan(fov_h / 2)
  double half_height_;  ///< tan(fov_v / 2)
  int rows_;
  int cols_;
};

PatchSet erp_to_cubemap(const ErpImage& img);
PatchSet erp_to_tangent(const ErpImage& img);
PatchSet erp_to_hslices(const ErpImage& img);
PatchSet erp_to_vslices(const ErpImage& img);
PatchSet erp_to_patches(const ErpImage& img, PatchKind kind);

/// Reassembles an ERP raster. HS/VS concatenate exactly. CP/TP blend every
/// patch whose field of view contains the pixel direction, weighted by the
/// cosine of the angular distance to the patch center. Throws
/// IncompletePatchSet when patches are missing or mis-sized, and
/// InternalCoverageError when a pixel has no contributor.
ErpImage patchset_to_erp(const PatchSet& set);

/// Blend weights for one ERP pixel direction: (patch position, weight) pairs
/// summing to 1.
std::vector<std::pair<std::size_t, double>> blend_weights(const std::vector<PatchSpec>& layout,
                                                          const UnitVec3& dir);

struct RegionMasks {
  Mask equator;
  Mask pole;
};

/// Per-pixel ownership masks: each ERP pixel belongs to the patch whose
/// center is angularly closest among the patches containing it.
RegionMasks region_masks(PatchKind kind, const ErpGrid& grid);

}  // namespace pansphere

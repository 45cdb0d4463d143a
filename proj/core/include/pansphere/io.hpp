#pragma once

// File formats:
//   images  8-bit PNG/JPEG, RGB, channel values mapped to [0, 1]
//   depth   PFM ("Pf"/"PF", either endianness, rows stored bottom-up) or
//           16-bit PNG with a mandatory JSON sidecar
//           {"depth_scale": <meters per unit>, "units": "..."}
//   masks   8-bit PNG, nonzero = set
//   points  binary little-endian PLY, float32 x y z
//
// Depth zero, negative, or non-finite values read as invalid; invalid pixels
// are written as 0.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pansphere/representations.hpp"
#include "pansphere/sweep.hpp"

namespace pansphere::io {

namespace fs = std::filesystem;

ErpImage read_image(const fs::path& path);
/// PNG or JPEG by extension. 1-channel images are written as grayscale;
/// invalid pixels become 0.
void write_image(const fs::path& path, const ErpImage& img);

/// Raw float raster from a PFM file (1 or 3 channels), rows top-down.
Plane read_pfm(const fs::path& path);
/// Little-endian PFM; 1 or 3 channels.
void write_pfm(const fs::path& path, const Plane& plane);

/// Sidecar path for a 16-bit PNG depth file: same stem, ".json".
fs::path sidecar_path(const fs::path& png);

/// Dispatches on extension (.pfm or .png). `units` overrides the units for
/// PFM input (which carries none; default metric) and is ignored for PNG16,
/// where the sidecar is authoritative.
DepthMap read_depth(const fs::path& path, std::optional<DepthUnits> units = std::nullopt);
/// .pfm, or .png (16-bit plus sidecar).
void write_depth(const fs::path& path, const DepthMap& depth);

bool is_depth_path(const fs::path& path);

Mask read_mask(const fs::path& path);

void write_ply(const fs::path& path, const std::vector<Point3f>& points);
std::vector<Point3f> read_ply(const fs::path& path);

std::vector<unsigned char> read_bytes(const fs::path& path);
void write_text(const fs::path& path, const std::string& text);

/// Directory of patch files plus manifest.json (kind, content, indices,
/// centers in degrees, field of view, resolution).
void write_patchset(const fs::path& dir, const PatchSet& set, bool depth,
                    DepthUnits units = DepthUnits::Normalized);

struct LoadedPatchSet {
  PatchSet set;
  bool depth = false;
  DepthUnits units = DepthUnits::Normalized;
};
/// Throws IncompletePatchSet when the manifest lists missing files or the
/// set is incomplete.
LoadedPatchSet read_patchset(const fs::path& dir);

/// Predictor boundary for sweeps: the warped panorama is written as PNG and
/// the prediction read back as depth.
///
/// With a command template, `{input}` and `{output}` are substituted (or the
/// two paths are appended when absent) and the command runs through the
/// shell; a nonzero exit marks the cell as failed. With a prediction
/// directory, `<dir>/<transform>_<level>.pfm` is read instead.
class FileExchangePredictor {
 public:
  static FileExchangePredictor command(std::string command_template, fs::path work_dir,
                                       DepthUnits units);
  static FileExchangePredictor directory(fs::path prediction_dir, DepthUnits units);

  DepthMap operator()(const ErpImage& warped, const SweepCell& cell) const;

  static std::string cell_stem(const SweepCell& cell);

 private:
  std::string command_;
  fs::path dir_;
  DepthUnits units_ = DepthUnits::Normalized;
  bool use_command_ = false;
};

}  // namespace pansphere::io

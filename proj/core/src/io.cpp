#include "pansphere/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>
#include <json.hpp>
#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <sstream>

#include "pansphere/format.hpp"

namespace pansphere::io {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void io_error(const std::string& what, const fs::path& path) {
  throw Error(ErrorCode::Io, what + ": " + path.string());
}

std::string lower_ext(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

void ensure_parent(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
}

std::uint32_t byteswap32(std::uint32_t v) {
  return (v >> 24) | ((v >> 8) & 0xFF00U) | ((v << 8) & 0xFF0000U) | (v << 24);
}

std::string read_token(std::istream& in) {
  std::string tok;
  in >> tok;
  return tok;
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) io_error("cannot open", path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Io, "malformed JSON in " + path.string() + ": " + e.what());
  }
}

}  // namespace

ErpImage read_image(const fs::path& path) {
  if (!fs::exists(path)) io_error("no such file", path);
  const cv::Mat bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
  if (bgr.empty()) io_error("cannot decode image", path);
  ErpImage img(bgr.rows, bgr.cols, 3);
  for (int r = 0; r < bgr.rows; ++r) {
    const auto* src = bgr.ptr<cv::Vec3b>(r);
    for (int c = 0; c < bgr.cols; ++c) {
      for (int ch = 0; ch < 3; ++ch) img.pixels.at(r, c, ch) = src[c][2 - ch] / 255.0;
    }
  }
  return img;
}

void write_image(const fs::path& path, const ErpImage& img) {
  const int channels = img.channels();
  if (channels != 1 && channels != 3) {
    throw Error(ErrorCode::InvalidArgument, "images must have 1 or 3 channels");
  }
  cv::Mat out(img.rows(), img.cols(), channels == 3 ? CV_8UC3 : CV_8UC1);
  for (int r = 0; r < img.rows(); ++r) {
    auto* dst = out.ptr<std::uint8_t>(r);
    for (int c = 0; c < img.cols(); ++c) {
      for (int ch = 0; ch < channels; ++ch) {
        const double v = img.valid.at(r, c) ? img.pixels.at(r, c, ch) : 0.0;
        const auto q = static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
        // OpenCV stores BGR.
        dst[c * channels + (channels == 3 ? 2 - ch : 0)] = q;
      }
    }
  }
  ensure_parent(path);
  if (!cv::imwrite(path.string(), out)) io_error("cannot write image", path);
}

Plane read_pfm(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_error("cannot open", path);
  const std::string magic = read_token(in);
  int channels = 0;
  if (magic == "Pf") {
    channels = 1;
  } else if (magic == "PF") {
    channels = 3;
  } else {
    io_error("not a PFM file", path);
  }
  int width = 0;
  int height = 0;
  double scale = 0.0;
  in >> width >> height >> scale;
  if (!in || width <= 0 || height <= 0 || scale == 0.0) io_error("bad PFM header", path);
  in.get();  // single whitespace before the raster
  const bool little = scale < 0.0;
  const std::size_t count = static_cast<std::size_t>(width) * height * channels;
  std::vector<std::uint32_t> raw(count);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(count * 4));
  if (in.gcount() != static_cast<std::streamsize>(count * 4)) io_error("truncated PFM", path);
  const bool swap = little != (std::endian::native == std::endian::little);

  Plane plane(height, width, channels);
  std::size_t k = 0;
  for (int r = height - 1; r >= 0; --r) {
    for (int c = 0; c < width; ++c) {
      for (int ch = 0; ch < channels; ++ch) {
        const std::uint32_t bits = swap ? byteswap32(raw[k]) : raw[k];
        ++k;
        plane.at(r, c, ch) = static_cast<double>(std::bit_cast<float>(bits));
      }
    }
  }
  return plane;
}

void write_pfm(const fs::path& path, const Plane& plane) {
  if (plane.channels() != 1 && plane.channels() != 3) {
    throw Error(ErrorCode::InvalidArgument, "PFM supports 1 or 3 channels");
  }
  ensure_parent(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) io_error("cannot write", path);
  out << (plane.channels() == 1 ? "Pf" : "PF") << '\n'
      << plane.cols() << ' ' << plane.rows() << '\n'
      << "-1.0\n";
  std::vector<std::uint32_t> raw;
  raw.reserve(plane.data().size());
  for (int r = plane.rows() - 1; r >= 0; --r) {
    for (int c = 0; c < plane.cols(); ++c) {
      for (int ch = 0; ch < plane.channels(); ++ch) {
        std::uint32_t bits = std::bit_cast<std::uint32_t>(static_cast<float>(plane.at(r, c, ch)));
        if constexpr (std::endian::native != std::endian::little) bits = byteswap32(bits);
        raw.push_back(bits);
      }
    }
  }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size() * 4));
  if (!out) io_error("write failed", path);
}

fs::path sidecar_path(const fs::path& png) {
  fs::path p = png;
  p.replace_extension(".json");
  return p;
}

bool is_depth_path(const fs::path& path) {
  const std::string ext = lower_ext(path);
  if (ext == ".pfm") return true;
  return ext == ".png" && fs::exists(sidecar_path(path));
}

DepthMap read_depth(const fs::path& path, std::optional<DepthUnits> units) {
  if (!fs::exists(path)) io_error("no such file", path);
  const std::string ext = lower_ext(path);
  DepthMap d;
  if (ext == ".pfm") {
    Plane raw = read_pfm(path);
    d.values = Plane(raw.rows(), raw.cols());
    for (int r = 0; r < raw.rows(); ++r)
      for (int c = 0; c < raw.cols(); ++c) d.values.at(r, c) = raw.at(r, c, 0);
    d.units = units.value_or(DepthUnits::Metric);
  } else if (ext == ".png") {
    const fs::path side = sidecar_path(path);
    if (!fs::exists(side)) {
      io_error("16-bit PNG depth requires a JSON sidecar " + side.string(), path);
    }
    const json meta = read_json(side);
    if (!meta.contains("depth_scale") || !meta["depth_scale"].is_number()) {
      io_error("sidecar lacks a numeric depth_scale", side);
    }
    const double scale = meta["depth_scale"].get<double>();
    d.units = parse_units(meta.value("units", std::string("metric")));
    const cv::Mat raw = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
    if (raw.empty()) io_error("cannot decode PNG", path);
    if (raw.depth() != CV_16U || raw.channels() != 1) io_error("expected a 16-bit single-channel PNG", path);
    d.values = Plane(raw.rows, raw.cols);
    for (int r = 0; r < raw.rows; ++r) {
      const auto* src = raw.ptr<std::uint16_t>(r);
      for (int c = 0; c < raw.cols; ++c) d.values.at(r, c) = src[c] * scale;
    }
  } else {
    io_error("unsupported depth format (use .pfm or .png)", path);
  }
  d.valid = Mask(d.rows(), d.cols());
  for (int r = 0; r < d.rows(); ++r) {
    for (int c = 0; c < d.cols(); ++c) {
      const double v = d.values.at(r, c);
      const bool ok = std::isfinite(v) && v > 0.0;
      d.valid.at(r, c) = ok ? 1 : 0;
      if (!ok) d.values.at(r, c) = 0.0;
    }
  }
  return d;
}

void write_depth(const fs::path& path, const DepthMap& depth) {
  const std::string ext = lower_ext(path);
  Plane out(depth.rows(), depth.cols());
  double max_value = 0.0;
  for (int r = 0; r < depth.rows(); ++r) {
    for (int c = 0; c < depth.cols(); ++c) {
      const double v = depth.is_valid(r, c) ? depth.at(r, c) : 0.0;
      out.at(r, c) = v;
      if (std::isfinite(v)) max_value = std::max(max_value, v);
    }
  }
  if (ext == ".pfm") {
    write_pfm(path, out);
    return;
  }
  if (ext != ".png") io_error("unsupported depth format (use .pfm or .png)", path);

  const double scale = max_value > 0.0 ? max_value / 65535.0 : 1.0;
  cv::Mat raw(depth.rows(), depth.cols(), CV_16UC1);
  for (int r = 0; r < depth.rows(); ++r) {
    auto* dst = raw.ptr<std::uint16_t>(r);
    for (int c = 0; c < depth.cols(); ++c) {
      const double q = std::isfinite(out.at(r, c)) ? std::round(out.at(r, c) / scale) : 0.0;
      // A valid positive depth must not quantize to the invalid marker.
      const double floor = depth.is_valid(r, c) && out.at(r, c) > 0.0 ? 1.0 : 0.0;
      dst[c] = static_cast<std::uint16_t>(std::clamp(q, floor, 65535.0));
    }
  }
  ensure_parent(path);
  if (!cv::imwrite(path.string(), raw)) io_error("cannot write PNG", path);
  json meta;
  meta["depth_scale"] = scale;
  meta["units"] = std::string(units_name(depth.units));
  write_text(sidecar_path(path), meta.dump(2) + "\n");
}

Mask read_mask(const fs::path& path) {
  if (!fs::exists(path)) io_error("no such file", path);
  const cv::Mat gray = cv::imread(path.string(), cv::IMREAD_GRAYSCALE);
  if (gray.empty()) io_error("cannot decode mask", path);
  Mask m(gray.rows, gray.cols);
  for (int r = 0; r < gray.rows; ++r) {
    const auto* src = gray.ptr<std::uint8_t>(r);
    for (int c = 0; c < gray.cols; ++c) m.at(r, c) = src[c] != 0 ? 1 : 0;
  }
  return m;
}

void write_ply(const fs::path& path, const std::vector<Point3f>& points) {
  ensure_parent(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) io_error("cannot write", path);
  out << "ply\nformat binary_little_endian 1.0\nelement vertex " << points.size()
      << "\nproperty float x\nproperty float y\nproperty float z\nend_header\n";
  for (const Point3f& p : points) {
    for (float v : {p.x, p.y, p.z}) {
      std::uint32_t bits = std::bit_cast<std::uint32_t>(v);
      if constexpr (std::endian::native != std::endian::little) bits = byteswap32(bits);
      out.write(reinterpret_cast<const char*>(&bits), 4);
    }
  }
  if (!out) io_error("write failed", path);
}

std::vector<Point3f> read_ply(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_error("cannot open", path);
  std::string line;
  std::size_t count = 0;
  bool little = false;
  while (std::getline(in, line)) {
    if (line.rfind("format binary_little_endian", 0) == 0) little = true;
    if (line.rfind("element vertex ", 0) == 0) count = std::stoull(line.substr(15));
    if (line == "end_header") break;
  }
  if (!little) io_error("only binary little-endian PLY is supported", path);
  std::vector<Point3f> points(count);
  for (Point3f& p : points) {
    float xyz[3];
    for (float& v : xyz) {
      std::uint32_t bits = 0;
      in.read(reinterpret_cast<char*>(&bits), 4);
      if constexpr (std::endian::native != std::endian::little) bits = byteswap32(bits);
      v = std::bit_cast<float>(bits);
    }
    p = {xyz[0], xyz[1], xyz[2]};
  }
  if (!in) io_error("truncated PLY", path);
  return points;
}

std::vector<unsigned char> read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_error("cannot open", path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const fs::path& path, const std::string& text) {
  ensure_parent(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) io_error("cannot write", path);
  out << text;
  if (!out) io_error("write failed", path);
}

void write_patchset(const fs::path& dir, const PatchSet& set, bool depth, DepthUnits units) {
  fs::create_directories(dir);
  json manifest;
  manifest["kind"] = std::string(kind_name(set.kind));
  manifest["content"] = depth ? "depth" : "image";
  if (depth) manifest["units"] = std::string(units_name(units));
  manifest["source"] = {{"height", set.source.height}, {"width", set.source.width}};
  if (set.kind == PatchKind::Tangent) {
    manifest["layout_convention"] =
        "rows at +67.5/+22.5/-22.5/-67.5 deg with 3/6/6/3 patches, alternate rows offset half a step";
  }
  json patches = json::array();
  for (const Patch& p : set.patches) {
    char stem[64];
    std::snprintf(stem, sizeof stem, "%02d_%s", p.spec.index, p.spec.name.c_str());
    const std::string file = std::string(stem) + (depth ? ".pfm" : ".png");
    if (depth) {
      write_depth(dir / file, as_depth(p.image, units));
    } else {
      write_image(dir / file, p.image);
    }
    patches.push_back({{"index", p.spec.index},
                       {"name", p.spec.name},
                       {"center_deg", {round_significant(rad_to_deg(p.spec.center.theta)),
                                       round_significant(rad_to_deg(p.spec.center.phi))}},
                       {"fov_deg", {p.spec.fov_vertical_deg, p.spec.fov_horizontal_deg}},
                       {"resolution", {p.spec.rows, p.spec.cols}},
                       {"file", file}});
  }
  manifest["patches"] = patches;
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
}

LoadedPatchSet read_patchset(const fs::path& dir) {
  const json manifest = read_json(dir / "manifest.json");
  LoadedPatchSet out;
  try {
    out.set.kind = parse_kind(manifest.at("kind").get<std::string>());
    out.depth = manifest.value("content", std::string("image")) == "depth";
    if (out.depth) out.units = parse_units(manifest.value("units", std::string("normalized")));
    out.set.source = ErpGrid::make(manifest.at("source").at("height").get<int>(),
                                   manifest.at("source").at("width").get<int>());
    for (const json& p : manifest.at("patches")) {
      PatchSpec spec;
      spec.kind = out.set.kind;
      spec.index = p.at("index").get<int>();
      spec.name = p.value("name", std::string());
      spec.center = {deg_to_rad(p.at("center_deg").at(0).get<double>()),
                     deg_to_rad(p.at("center_deg").at(1).get<double>())};
      spec.fov_vertical_deg = p.at("fov_deg").at(0).get<double>();
      spec.fov_horizontal_deg = p.at("fov_deg").at(1).get<double>();
      spec.rows = p.at("resolution").at(0).get<int>();
      spec.cols = p.at("resolution").at(1).get<int>();
      const fs::path file = dir / p.at("file").get<std::string>();
      if (!fs::exists(file)) {
        throw Error(ErrorCode::IncompletePatchSet, "missing patch file " + file.string());
      }
      Patch patch{spec, out.depth ? as_image(read_depth(file, out.units)) : read_image(file)};
      if (!out.depth) {
        // Image patches carry no validity on disk.
        patch.image.valid = full_mask(patch.image.rows(), patch.image.cols());
      }
      out.set.patches.push_back(std::move(patch));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::IncompletePatchSet, std::string("bad patch manifest: ") + e.what());
  }
  if (static_cast<int>(out.set.patches.size()) != expected_patch_count(out.set.kind)) {
    throw Error(ErrorCode::IncompletePatchSet, "manifest lists " +
                                                   std::to_string(out.set.patches.size()) +
                                                   " patches");
  }
  return out;
}

FileExchangePredictor FileExchangePredictor::command(std::string command_template,
                                                     fs::path work_dir, DepthUnits units) {
  FileExchangePredictor p;
  p.command_ = std::move(command_template);
  p.dir_ = std::move(work_dir);
  p.units_ = units;
  p.use_command_ = true;
  return p;
}

FileExchangePredictor FileExchangePredictor::directory(fs::path prediction_dir, DepthUnits units) {
  FileExchangePredictor p;
  p.dir_ = std::move(prediction_dir);
  p.units_ = units;
  return p;
}

std::string FileExchangePredictor::cell_stem(const SweepCell& cell) {
  return cell.transform_name() + "_" + format_number(cell.level);
}

DepthMap FileExchangePredictor::operator()(const ErpImage& warped, const SweepCell& cell) const {
  const std::string stem = cell_stem(cell);
  if (!use_command_) return read_depth(dir_ / (stem + ".pfm"), units_);

  fs::create_directories(dir_);
  const fs::path input = dir_ / (stem + "_input.png");
  const fs::path output = dir_ / (stem + "_pred.pfm");
  write_image(input, warped);
  fs::remove(output);

  auto quote = [](const fs::path& p) { return "'" + p.string() + "'"; };
  std::string cmd = command_;
  bool substituted = false;
  for (const auto& [key, value] : {std::pair{std::string("{input}"), quote(input)},
                                   std::pair{std::string("{output}"), quote(output)}}) {
    for (auto pos = cmd.find(key); pos != std::string::npos; pos = cmd.find(key, pos + value.size())) {
      cmd.replace(pos, key.size(), value);
      substituted = true;
    }
  }
  if (!substituted) cmd += " " + quote(input) + " " + quote(output);

  const int status = std::system(cmd.c_str());
  if (status != 0) {
    throw Error(ErrorCode::PredictorFailure,
                "predictor exited with status " + std::to_string(status) + " for " + stem);
  }
  if (!fs::exists(output)) {
    throw Error(ErrorCode::PredictorFailure, "predictor wrote no output for " + stem);
  }
  return read_depth(output, units_);
}

}  // namespace pansphere::io

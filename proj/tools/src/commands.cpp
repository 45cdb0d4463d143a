#include "commands.hpp"

#include <algorithm>
#include <cctype>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "pansphere/depth_norm.hpp"
#include "pansphere/format.hpp"
#include "pansphere/io.hpp"
#include "pansphere/losses.hpp"
#include "pansphere/metrics.hpp"
#include "pansphere/mtsa.hpp"
#include "pansphere/parallel.hpp"
#include "pansphere/sweep.hpp"

namespace pansphere::cli {
namespace {

using json = nlohmann::ordered_json;

const std::vector<std::string> kUnitNames{"metric", "normalized", "disparity"};
const std::vector<std::string> kAlignNames{"none", "depth", "disparity"};
const std::vector<std::string> kKindNames{"erp", "cp", "tp", "hs", "vs"};

json number(double v) { return round_significant(v); }

json optional_number(const std::optional<double>& v) {
  return v ? number(*v) : json(nullptr);
}

void emit(RunManifest& manifest, const json& j) {
  const std::string text = j.dump(2) + "\n";
  std::cout << text << std::flush;
  manifest.add_stdout(text);
}

std::optional<AlignmentSpace> align_option(const std::string& name) {
  if (name == "none") return std::nullopt;
  return parse_space(name);
}

int exit_code_for(const Error& e) { return e.is_io() ? kExitIo : kExitDomain; }

WarpSpec build_spec(double rotate_deg, double zoom, double roll_deg, const std::string& interp) {
  return WarpSpec{compose(mobius_zoom(zoom), mobius_rotation(deg_to_rad(rotate_deg)))}
      .with_roll(deg_to_rad(roll_deg))
      .with_interpolation(interp == "nearest" ? Interpolation::Nearest : Interpolation::Bilinear);
}

json report_json(const MetricReport& m) {
  json j;
  j["abs_rel"] = number(m.abs_rel);
  j["rmse"] = number(m.rmse);
  j["delta1"] = number(m.delta1);
  j["delta2"] = number(m.delta2);
  j["delta3"] = number(m.delta3);
  j["valid_pixels"] = m.valid_pixels;
  return j;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool is_image_path(const fs::path& p) {
  const std::string ext = lower(p.extension().string());
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

void add_jobs(CLI::App* sub, std::size_t& jobs) {
  jobs = default_jobs();
  sub->add_option("--jobs", jobs, "Worker threads (default: PANSPHERE_JOBS or all cores)")
      ->check(CLI::PositiveNumber);
}

void add_manifest(CLI::App* sub, std::string& path) {
  sub->add_option("--manifest", path, "Where to write the run manifest");
}

fs::path manifest_or(const std::string& explicit_path, const fs::path& fallback) {
  return explicit_path.empty() ? fallback : fs::path(explicit_path);
}

// ---------------------------------------------------------------- warp

struct WarpOptions {
  std::string input, output, units = "metric", interp = "bilinear", manifest;
  double rotate_deg = 0.0, zoom = 1.0, roll_deg = 0.0;
  std::size_t jobs = 0;
};

Command warp_command(CLI::App& app) {
  auto o = std::make_shared<WarpOptions>();
  CLI::App* sub = app.add_subcommand("warp", "Apply a rotation/zoom Möbius warp to an ERP image or depth map");
  sub->add_option("--input", o->input, "ERP image (PNG/JPEG) or depth (PFM/PNG16)")->required();
  sub->add_option("--output", o->output, "Output file; depth inputs need .pfm or .png")->required();
  sub->add_option("--rotate-deg", o->rotate_deg, "Vertical rotation in degrees");
  sub->add_option("--zoom", o->zoom, "Zoom factor s > 0");
  sub->add_option("--roll-deg", o->roll_deg, "Horizontal roll in degrees");
  sub->add_option("--interp", o->interp)->check(CLI::IsMember({"bilinear", "nearest"}));
  sub->add_option("--units", o->units, "Units of a PFM depth input")->check(CLI::IsMember(kUnitNames));
  add_jobs(sub, o->jobs);
  add_manifest(sub, o->manifest);
  return {sub, [o](RunManifest& m) {
            m.set_path(manifest_or(o->manifest, manifest_beside(o->output)));
            m.add_input(o->input);
            const WarpSpec spec = build_spec(o->rotate_deg, o->zoom, o->roll_deg, o->interp);
            if (io::is_depth_path(o->input)) {
              const DepthMap d = io::read_depth(o->input, parse_units(o->units));
              io::write_depth(o->output, warp_erp(d, spec, o->jobs));
            } else {
              io::write_image(o->output, warp_erp(io::read_image(o->input), spec, o->jobs));
            }
            m.add_output(o->output);
            if (io::is_depth_path(o->output) && fs::exists(io::sidecar_path(o->output))) {
              m.add_output(io::sidecar_path(o->output));
            }
            return kExitOk;
          }};
}

// ---------------------------------------------------------------- reproject

struct ReprojectOptions {
  std::string from, to, input, output_dir, units = "metric", manifest;
};

Command reproject_command(CLI::App& app) {
  auto o = std::make_shared<ReprojectOptions>();
  CLI::App* sub = app.add_subcommand("reproject", "Convert between ERP and CP/TP/HS/VS patch sets");
  sub->add_option("--from", o->from)->required()->check(CLI::IsMember(kKindNames));
  sub->add_option("--to", o->to)->required()->check(CLI::IsMember(kKindNames));
  sub->add_option("--input", o->input, "ERP file, or a patch-set directory")->required();
  sub->add_option("--output-dir", o->output_dir)->required();
  sub->add_option("--units", o->units, "Units of a PFM depth input")->check(CLI::IsMember(kUnitNames));
  add_manifest(sub, o->manifest);
  return {sub, [o](RunManifest& m) {
            if ((o->from == "erp") == (o->to == "erp")) {
              throw CLI::ValidationError("--from/--to", "exactly one side must be erp");
            }
            const fs::path out = o->output_dir;
            m.set_path(manifest_or(o->manifest, manifest_inside(out)));
            m.add_input(o->input);
            fs::create_directories(out);
            if (o->from == "erp") {
              const PatchKind kind = parse_kind(o->to);
              const bool depth = io::is_depth_path(o->input);
              const DepthUnits units = parse_units(o->units);
              const ErpImage img = depth ? as_image(io::read_depth(o->input, units))
                                         : io::read_image(o->input);
              io::write_patchset(out, erp_to_patches(img, kind), depth, units);
            } else {
              const io::LoadedPatchSet loaded = io::read_patchset(o->input);
              if (loaded.set.kind != parse_kind(o->from)) {
                throw Error(ErrorCode::IncompletePatchSet,
                            "patch set is " + std::string(kind_name(loaded.set.kind)) +
                                ", not " + o->from);
              }
              const ErpImage erp = patchset_to_erp(loaded.set);
              if (loaded.depth) {
                io::write_depth(out / "erp.pfm", as_depth(erp, loaded.units));
              } else {
                io::write_image(out / "erp.png", erp);
              }
            }
            m.add_output(out);
            return kExitOk;
          }};
}

// ---------------------------------------------------------------- eval

struct EvalOptions {
  std::string pred, gt, align = "none", pred_units = "metric", gt_units = "metric", output, manifest;
  std::optional<double> max_depth;
};

Command eval_command(CLI::App& app) {
  auto o = std::make_shared<EvalOptions>();
  CLI::App* sub = app.add_subcommand("eval", "AbsRel, RMSE and delta accuracies of a prediction");
  sub->add_option("--pred", o->pred)->required();
  sub->add_option("--gt", o->gt)->required();
  sub->add_option("--max-depth", o->max_depth, "Ignore ground truth beyond this depth")
      ->check(CLI::PositiveNumber);
  sub->add_option("--align", o->align)->check(CLI::IsMember(kAlignNames));
  sub->add_option("--pred-units", o->pred_units)->check(CLI::IsMember(kUnitNames));
  sub->add_option("--gt-units", o->gt_units)->check(CLI::IsMember(kUnitNames));
  sub->add_option("--output", o->output, "Also write the JSON report here");
  add_manifest(sub, o->manifest);
  return {sub, [o](RunManifest& m) {
            m.set_path(manifest_or(o->manifest, o->output.empty()
                                                    ? fs::path("pansphere-eval.manifest.json")
                                                    : manifest_beside(o->output)));
            m.add_input(o->pred);
            m.add_input(o->gt);
            const DepthMap pred = io::read_depth(o->pred, parse_units(o->pred_units));
            const DepthMap gt = io::read_depth(o->gt, parse_units(o->gt_units));
            const MetricReport r = compute_metrics(pred, gt, {o->max_depth, align_option(o->align)});
            json j = report_json(r);
            j["align"] = o->align;
            j["max_depth"] = optional_number(o->max_depth);
            emit(m, j);
            if (!o->output.empty()) {
              io::write_text(o->output, j.dump(2) + "\n");
              m.add_output(o->output);
            }
            return kExitOk;
          }};
}

// ---------------------------------------------------------------- sweep

struct SweepOptions {
  std::string pred_cmd, pred_dir, image, gt, gt_units = "metric", pred_units, align = "none",
                                                 output, work_dir, manifest;
  std::vector<double> angles = default_sweep_angles();
  std::vector<double> zooms = default_sweep_zooms();
  std::optional<double> max_depth;
  std::size_t jobs = 0;
};

Command sweep_command(CLI::App& app) {
  auto o = std::make_shared<SweepOptions>();
  CLI::App* sub = app.add_subcommand("sweep", "Evaluate a predictor across rotation and zoom levels");
  auto* cmd = sub->add_option("--pred-cmd", o->pred_cmd,
                              "Predictor command; {input} and {output} are substituted");
  auto* dir = sub->add_option("--pred-dir", o->pred_dir,
                              "Directory of precomputed <transform>_<level>.pfm predictions");
  cmd->excludes(dir);
  sub->add_option("--image", o->image, "ERP image fed to the predictor")->required();
  sub->add_option("--gt", o->gt, "Ground-truth depth on the same grid")->required();
  sub->add_option("--gt-units", o->gt_units)->check(CLI::IsMember(kUnitNames));
  sub->add_option("--pred-units", o->pred_units, "Default: same as --gt-units")
      ->check(CLI::IsMember(kUnitNames));
  sub->add_option("--angles", o->angles, "Comma-separated rotation angles in degrees")
      ->delimiter(',');
  sub->add_option("--zooms", o->zooms, "Comma-separated zoom levels")->delimiter(',');
  sub->add_option("--align", o->align)->check(CLI::IsMember(kAlignNames));
  sub->add_option("--max-depth", o->max_depth)->check(CLI::PositiveNumber);
  sub->add_option("--output", o->output, "CSV path (default: stdout)");
  sub->add_option("--work-dir", o->work_dir, "Scratch directory for predictor files");
  add_jobs(sub, o->jobs);
  add_manifest(sub, o->manifest);
  return {sub, [o](RunManifest& m) {
            if (o->pred_cmd.empty() == o->pred_dir.empty()) {
              throw CLI::ValidationError("--pred-cmd/--pred-dir", "exactly one is required");
            }
            const fs::path out = o->output;
            m.set_path(manifest_or(o->manifest, out.empty()
                                                    ? fs::path("pansphere-sweep.manifest.json")
                                                    : manifest_beside(out)));
            m.add_input(o->image);
            m.add_input(o->gt);
            const DepthUnits gt_units = parse_units(o->gt_units);
            const DepthUnits pred_units =
                o->pred_units.empty() ? gt_units : parse_units(o->pred_units);
            const ErpImage image = io::read_image(o->image);
            const DepthMap gt = io::read_depth(o->gt, gt_units);

            io::FileExchangePredictor predictor = [&] {
              if (!o->pred_dir.empty()) {
                m.add_input(o->pred_dir);
                return io::FileExchangePredictor::directory(o->pred_dir, pred_units);
              }
              fs::path work = o->work_dir;
              if (work.empty()) {
                work = out.empty() ? fs::path("pansphere-sweep-work") : fs::path(out.string() + ".work");
              }
              return io::FileExchangePredictor::command(o->pred_cmd, work, pred_units);
            }();
            const auto cells =
                sweep_transformations(predictor, image, gt, o->angles, o->zooms,
                                      {o->max_depth, align_option(o->align)}, o->jobs);
            std::ostringstream csv;
            write_sweep_csv(csv, cells);
            if (out.empty()) {
              std::cout << csv.str() << std::flush;
              m.add_stdout(csv.str());
            } else {
              io::write_text(out, csv.str());
              m.add_output(out);
            }
            const auto missing = static_cast<std::size_t>(std::count_if(
                cells.begin(), cells.end(), [](const SweepCell& c) { return !c.report; }));
            if (missing == 0) return kExitOk;
            std::ostringstream msg;
            msg << missing << " of " << cells.size() << " cells missing";
            for (const SweepCell& c : cells) {
              if (!c.report) msg << "; " << c.transform_name() << " " << format_number(c.level) << ": " << c.error;
            }
            report_error(error_name(ErrorCode::PredictorFailure), msg.str(), kExitDomain);
            return kExitDomain;
          }};
}

// ---------------------------------------------------------------- augment

struct AugmentOptions {
  std::string image_dir, pseudo_dir, out, pseudo_units = "normalized", manifest;
  std::size_t count = 1;
  std::uint64_t seed = 0;
  std::vector<double> theta_range{-10.0, 10.0};
  std::vector<double> zoom_range{1.0, 1.5};
  std::size_t jobs = 0;
};

struct AugmentSource {
  fs::path image_path;
  std::size_t ordinal = 0;
  ErpImage image;
  DepthMap depth;
};

fs::path find_pseudo(const fs::path& dir, const fs::path& image) {
  for (const char* ext : {".pfm", ".png"}) {
    const fs::path p = dir / (image.stem().string() + ext);
    if (fs::exists(p)) return p;
  }
  throw Error(ErrorCode::Io, "no pseudo depth for " + image.filename().string() + " in " +
                                 dir.string());
}

std::string sample_dir_name(std::size_t index) {
  std::string s = std::to_string(index);
  return std::string(s.size() < 6 ? 6 - s.size() : 0, '0') + s;
}

Command augment_command(CLI::App& app) {
  auto o = std::make_shared<AugmentOptions>();
  CLI::App* sub = app.add_subcommand("augment", "Generate MTSA training pairs");
  sub->add_option("--image-dir", o->image_dir)->required()->check(CLI::ExistingDirectory);
  sub->add_option("--pseudo-dir", o->pseudo_dir, "Pseudo depth <stem>.pfm (or PNG16) per image")
      ->required()
      ->check(CLI::ExistingDirectory);
  sub->add_option("--out", o->out)->required();
  sub->add_option("--count", o->count, "Augmented samples per input image")->check(CLI::PositiveNumber);
  sub->add_option("--seed", o->seed);
  sub->add_option("--theta-range", o->theta_range, "lo hi in degrees")->expected(2);
  sub->add_option("--zoom-range", o->zoom_range, "lo hi")->expected(2);
  sub->add_option("--pseudo-units", o->pseudo_units)->check(CLI::IsMember(kUnitNames));
  add_jobs(sub, o->jobs);
  add_manifest(sub, o->manifest);
  return {sub, [o](RunManifest& m) {
            MtsaConfig cfg;
            cfg.theta_lo_deg = o->theta_range[0];
            cfg.theta_hi_deg = o->theta_range[1];
            cfg.zoom_lo = o->zoom_range[0];
            cfg.zoom_hi = o->zoom_range[1];
            cfg.seed = o->seed;
            cfg.count = o->count;
            cfg.validate();

            const fs::path out = o->out;
            fs::create_directories(out);
            m.set_path(manifest_or(o->manifest, manifest_inside(out)));
            m.set_seed(o->seed);

            std::vector<fs::path> images;
            for (const auto& e : fs::directory_iterator(o->image_dir)) {
              if (e.is_regular_file() && is_image_path(e.path())) images.push_back(e.path());
            }
            std::sort(images.begin(), images.end());

            int worst = kExitOk;
            std::mutex log_mutex;
            auto fail = [&](const fs::path& file, const std::string& name, const std::string& what,
                            int code) {
              const std::lock_guard lock(log_mutex);
              json j;
              j["file"] = file.generic_string();
              j["error"] = name;
              j["message"] = what;
              std::cerr << j.dump() << "\n";
              worst = std::max(worst, code);
            };

            std::vector<AugmentSource> sources;
            for (std::size_t i = 0; i < images.size(); ++i) {
              try {
                const fs::path pseudo = find_pseudo(o->pseudo_dir, images[i]);
                m.add_input(images[i]);
                m.add_input(pseudo);
                sources.push_back({images[i], i, io::read_image(images[i]),
                                   io::read_depth(pseudo, parse_units(o->pseudo_units))});
              } catch (const Error& e) {
                fail(images[i], std::string(error_name(e.code())), e.what(), exit_code_for(e));
              }
            }

            std::size_t written = 0;
            const std::size_t total = sources.size() * o->count;
            std::vector<std::uint8_t> ok(total, 0);
            parallel_for(total, [&](std::size_t t) {
              const AugmentSource& src = sources[t / o->count];
              const std::size_t index = src.ordinal * o->count + t % o->count;
              try {
                const MtsaDraw draw = draw_spec(cfg, index);
                const AugmentedPair pair = generate_pair(src.image, src.depth, draw.spec, 1);
                const fs::path dir = out / sample_dir_name(index);
                fs::create_directories(dir);
                io::write_image(dir / "image.png", pair.image);
                io::write_depth(dir / "depth.pfm", pair.depth);
                json params = json::parse(sample_params_json(cfg, draw));
                params["source"] = src.image_path.filename().string();
                io::write_text(dir / "params.json", params.dump(2) + "\n");
                ok[t] = 1;
              } catch (const Error& e) {
                fail(src.image_path, std::string(error_name(e.code())), e.what(), exit_code_for(e));
              }
            }, o->jobs);
            written = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 1));

            m.add_output(out);
            json summary;
            summary["samples"] = written;
            summary["inputs"] = images.size();
            summary["failed_inputs"] = images.size() - sources.size();
            summary["compose_order"] = kComposeOrder;
            emit(m, summary);
            return worst;
          }};
}

// ---------------------------------------------------------------- normalize, skyfill, upscale

struct DepthIoOptions {
  std::string input, output, units = "metric", mask, manifest;
  double factor = 2.0;
};

Command normalize_command(CLI::App& app) {
  auto o = std::make_shared<DepthIoOptions>();
  CLI::App* sub = app.add_subcommand("normalize", "Percentile-normalize a depth map to [0.01, 1]");
  sub->add_option("--input", o->input)->required();
  sub->add_option("--output", o->output)->required();
  sub->add_option("--units", o->units, "Units of a PFM input")->check(CLI::IsMember(kUnitNames));
  add_manifest(sub, o->manifest);
  return {sub, [o](RunManifest& m) {
            m.set_path(manifest_or(o->manifest, manifest_beside(o->output)));
            m.add_input(o->input);
            const DepthMap d = io::read_depth(o->input, parse_units(o->units));
            const PercentileRange p = depth_percentiles(d);
            const DepthMap n = normalize_depth(d);
            io::write_depth(o->output, n);
            m.add_output(o->output);
            json j;
            j["d2"] = number(p.low);
            j["d98"] = number(p.high);
            j["valid_pixels"] = n.valid_count();
            emit(m, j);
            return kExitOk;
          }};
}

Command skyfill_command(CLI::App& app) {
  auto o = std::make_shared<DepthIoOptions>();
  o->units = "normalized";
  CLI::App* sub = app.add_subcommand("skyfill", "Set sky pixels of a normalized depth map to 1.0");
  sub->add_option("--input", o->input)->required();
  sub->add_option("--mask", o->mask, "8-bit PNG, nonzero = sky")->required();
  sub->add_option("--output", o->output)->required();
  sub->add_option("--units", o->units)->check(CLI::IsMember(kUnitNames));
  add_manifest(sub, o->manifest);
  return {sub, [o](RunManifest& m) {
            m.set_path(manifest_or(o->manifest, manifest_beside(o->output)));
            m.add_input(o->input);
            m.add_input(o->mask);
            const DepthMap d = io::read_depth(o->input, parse_units(o->units));
            io::write_depth(o->output, sky_fill(d, io::read_mask(o->mask)));
            m.add_output(o->output);
            return kExitOk;
          }};
}

Command upscale_command(CLI::App& app) {
  auto o = std::make_shared<DepthIoOptions>();
  CLI::App* sub = app.add_subcommand("upscale", "Upsample an ERP image or depth map for pseudo-labelling");
  sub->add_option("--input", o->input)->required();
  sub->add_option("--output", o->output)->required();
  sub->add_option("--factor", o->factor, "Resolution multiplier >= 1");
  sub->add_option("--units", o->units, "Units of a PFM input")->check(CLI::IsMember(kUnitNames));
  add_manifest(sub, o->manifest);
  return {sub, [o](RunManifest& m) {
            m.set_path(manifest_or(o->manifest, manifest_beside(o->output)));
            m.add_input(o->input);
            if (io::is_depth_path(o->input)) {
              const DepthMap d = io::read_depth(o->input, parse_units(o->units));
              DepthMap up = as_depth(upscale_for_pseudo(as_image(d), o->factor), d.units);
              up.max_depth = d.max_depth;
              io::write_depth(o->output, up);
            } else {
              io::write_image(o->output, upscale_for_pseudo(io::read_image(o->input), o->factor));
            }
            m.add_output(o->output);
            return kExitOk;
          }};
}

// ---------------------------------------------------------------- losses

struct LossOptions {
  std::string pred, gt, units = "normalized", manifest;
  std::uint64_t seed = 0;
  int patches = 32;
  double lambda_e = LossWeights{}.lambda_E;
};

Command losses_command(CLI::App& app) {
  auto o = std::make_shared<LossOptions>();
  CLI::App* sub = app.add_subcommand("losses", "Evaluate SILog, gradient, EPNL and supervised losses");
  sub->add_option("--pred", o->pred)->required();
  sub->add_option("--gt", o->gt)->required();
  sub->add_option("--units", o->units, "Units of PFM inputs")->check(CLI::IsMember(kUnitNames));
  sub->add_option("--seed", o->seed, "EPNL patch sampler seed");
  sub->add_option("--patches", o->patches, "EPNL patch count")->check(CLI::PositiveNumber);
  sub->add_option("--lambda-e", o->lambda_e, "EPNL weight");
  add_manifest(sub, o->manifest);
  return {sub, [o](RunManifest& m) {
            m.set_path(manifest_or(o->manifest, fs::path("pansphere-losses.manifest.json")));
            m.set_seed(o->seed);
            m.add_input(o->pred);
            m.add_input(o->gt);
            const DepthUnits units = parse_units(o->units);
            const DepthMap pred = io::read_depth(o->pred, units);
            const DepthMap gt = io::read_depth(o->gt, units);
            require_same_plane(pred, gt, "losses");
            SamplerConfig cfg;
            cfg.patch_count = o->patches;
            cfg.seed = o->seed;
            const auto patches = sample_equator_patches(cfg, ErpGrid::of(gt.values));
            const double silog = silog_loss(pred, gt);
            const double grad = gradient_loss(pred, gt);
            const double epnl = epnl_loss(pred, gt, patches);
            LossWeights w;
            w.lambda_E = o->lambda_e;
            json j;
            j["silog"] = number(silog);
            j["gradient"] = number(grad);
            j["epnl"] = number(epnl);
            j["supervised"] = number(supervised_combination(silog, grad, epnl, w));
            j["lambda_e"] = number(w.lambda_E);
            j["patches"] = o->patches;
            j["seed"] = o->seed;
            emit(m, j);
            return kExitOk;
          }};
}

// ---------------------------------------------------------------- pointcloud, oracle-predict

Command pointcloud_command(CLI::App& app) {
  auto o = std::make_shared<DepthIoOptions>();
  CLI::App* sub = app.add_subcommand("pointcloud", "Export a metric ERP depth map as a PLY point cloud");
  sub->add_option("--input", o->input)->required();
  sub->add_option("--output", o->output, "Binary PLY")->required();
  sub->add_option("--units", o->units, "Units of a PFM input")->check(CLI::IsMember(kUnitNames));
  add_manifest(sub, o->manifest);
  return {sub, [o](RunManifest& m) {
            m.set_path(manifest_or(o->manifest, manifest_beside(o->output)));
            m.add_input(o->input);
            const auto points = depth_to_pointcloud(io::read_depth(o->input, parse_units(o->units)));
            io::write_ply(o->output, points);
            m.add_output(o->output);
            json j;
            j["points"] = points.size();
            emit(m, j);
            return kExitOk;
          }};
}

Command oracle_command(CLI::App& app) {
  auto o = std::make_shared<DepthIoOptions>();
  CLI::App* sub = app.add_subcommand(
      "oracle-predict",
      "Reference predictor for sweeps: reads channel 0 of an image as normalized depth");
  sub->add_option("--input", o->input)->required();
  sub->add_option("--output", o->output)->required();
  add_manifest(sub, o->manifest);
  return {sub, [o](RunManifest& m) {
            m.set_path(manifest_or(o->manifest, manifest_beside(o->output)));
            m.add_input(o->input);
            io::write_depth(o->output, as_depth(io::read_image(o->input), DepthUnits::Normalized));
            m.add_output(o->output);
            return kExitOk;
          }};
}

}  // namespace

std::vector<Command> register_commands(CLI::App& app) {
  return {warp_command(app),      reproject_command(app), eval_command(app),
          sweep_command(app),     augment_command(app),   normalize_command(app),
          skyfill_command(app),   upscale_command(app),   losses_command(app),
          pointcloud_command(app), oracle_command(app)};
}

void report_error(std::string_view name, std::string_view message, int exit_code) {
  json j;
  j["error"] = name;
  j["message"] = message;
  j["exit_code"] = exit_code;
  std::cerr << j.dump() << std::endl;
}

}  // namespace pansphere::cli

#include "scenesmith/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "scenesmith/annotator.hpp"
#include "scenesmith/errors.hpp"
#include "scenesmith/image_io.hpp"
#include "scenesmith/renderer.hpp"

namespace scenesmith {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// calibrate

CalibrationResult run_calibrate(const CalibrateOptions& opts) {
    SceneConfig cfg = load_scene_config(opts.scene_config_path);
    const std::string corr_path =
        opts.correspondences_path.empty() ? cfg.correspondences_path : opts.correspondences_path;
    if (corr_path.empty())
        throw InvalidParams("calibrate: no correspondence file (config key `correspondences` "
                            "or flag --correspondences)");
    const std::string out_path =
        opts.out_path.empty() ? cfg.calibration_path : opts.out_path;
    if (out_path.empty())
        throw InvalidParams("calibrate: no output path (config key `calibration` or flag --out)");

    const std::vector<Correspondence2D3D> corr = load_correspondence_csv(corr_path);

    CalibrationResult result;
    if (cfg.intrinsics_mode == SceneConfig::IntrinsicsMode::Fixed) {
        CameraIntrinsics intr = cfg.fixed_intrinsics;
        intr.width = cfg.width;
        intr.height = cfg.height;
        result.camera.intrinsics = intr;
        result.camera.pose = solve_pnp(corr, intr);
        result.camera.meters_per_unit = cfg.meters_per_unit;
        result.rms_reprojection_px =
            rms_reprojection(corr, result.camera, &result.per_point_residuals);
    } else {
        const double f0 = cfg.init_focal > 0 ? cfg.init_focal
                                             : 1.2 * std::max(cfg.width, cfg.height);
        CameraIntrinsics init;
        init.fx = init.fy = f0;
        init.cx = cfg.width / 2.0;
        init.cy = cfg.height / 2.0;
        init.width = cfg.width;
        init.height = cfg.height;
        GridSearchOptions gopts;
        gopts.meters_per_unit = cfg.meters_per_unit;
        result = grid_search_intrinsics(corr, init, gopts);
    }
    write_text_file_atomic(out_path, calibration_to_json(result));
    return result;
}

// ---------------------------------------------------------------------------
// layout realization

CameraModel rescale_camera(const CameraModel& cam, int width, int height) {
    if (cam.intrinsics.width == width && cam.intrinsics.height == height) return cam;
    if (cam.intrinsics.width < 1 || cam.intrinsics.height < 1)
        throw InvalidParams("rescale_camera: source camera has no resolution");
    const double sx = static_cast<double>(width) / cam.intrinsics.width;
    const double sy = static_cast<double>(height) / cam.intrinsics.height;
    CameraModel out = cam;
    out.intrinsics.fx *= sx;
    out.intrinsics.cx *= sx;
    out.intrinsics.fy *= sy;
    out.intrinsics.cy *= sy;
    out.intrinsics.width = width;
    out.intrinsics.height = height;
    return out;
}

SceneLayout realize_layout(const SceneConfig& cfg, const AssetLibrary& assets,
                           const CameraModel& calibration_camera) {
    if (cfg.planes.empty())
        throw InvalidParams("scene config defines no layout planes");

    // The background is shared by every extracted plane; built on first use.
    Raster8 background;
    auto ensure_background = [&]() {
        if (background.width > 0) return;
        if (cfg.background_frames.empty())
            throw InvalidParams("extracted plane textures need background frames in the config");
        std::vector<Raster8> frames;
        frames.reserve(cfg.background_frames.size());
        for (const std::string& path : cfg.background_frames)
            frames.push_back(read_png_rgb8(path));
        background = frames.size() == 1 ? std::move(frames[0]) : extract_background(frames);
    };

    std::vector<PlaneSpec> specs;
    specs.reserve(cfg.planes.size());
    for (const PlaneConfig& pc : cfg.planes) {
        PlaneSpec spec;
        spec.role = pc.role;
        spec.corners = pc.corners;
        switch (pc.texture.source) {
            case PlaneTextureSpec::Source::Flat: {
                Raster8 px(1, 1, 3);
                px.set_rgb(0, 0, pc.texture.color);
                spec.texture.image = std::move(px);
                spec.texture.address = AddressMode::Clamp;
                break;
            }
            case PlaneTextureSpec::Source::Bank: {
                const int n = static_cast<int>(assets.textures.size());
                if (pc.texture.bank_index < 0 || pc.texture.bank_index >= n)
                    throw IndexOutOfRange("plane texture bank index " +
                                          std::to_string(pc.texture.bank_index) +
                                          " outside [0, " + std::to_string(n) + ")");
                spec.texture = assets.textures[static_cast<std::size_t>(pc.texture.bank_index)];
                break;
            }
            case PlaneTextureSpec::Source::Extracted: {
                ensure_background();
                spec.texture.image =
                    extract_plane_texture(background, pc.corners, calibration_camera,
                                          pc.texture.tex_w, pc.texture.tex_h);
                spec.texture.address = AddressMode::Clamp;
                break;
            }
        }
        specs.push_back(std::move(spec));
    }
    return build_layout(specs);
}

// ---------------------------------------------------------------------------
// generate

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SCENESMITH_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

std::string dataset_config_digest(const SceneConfig& cfg, const SplitRatio& ratio, int count,
                                  const std::string& calibration_text) {
    std::ostringstream os;
    os << "scenesmith-dataset-v1\n"
       << cfg.scene_name << '\n'
       << cfg.width << 'x' << cfg.height << '\n'
       << "mpu=" << fmt_double(cfg.meters_per_unit) << '\n'
       << "spp=" << cfg.render.samples_per_pixel << " shadows=" << cfg.render.shadows
       << " ambient=" << fmt_double(cfg.render.ambient) << '\n'
       << "min_visibility=" << fmt_double(cfg.annotate.min_visibility) << '\n'
       << "count=" << count << " split=" << ratio.train << ':' << ratio.val << '\n';
    for (const PlaneConfig& pc : cfg.planes) {
        os << "plane " << plane_role_name(pc.role);
        for (const Vec3& c : pc.corners)
            os << ' ' << fmt_double(c.x) << ',' << fmt_double(c.y) << ',' << fmt_double(c.z);
        switch (pc.texture.source) {
            case PlaneTextureSpec::Source::Flat:
                os << " flat " << int(pc.texture.color.r) << ',' << int(pc.texture.color.g)
                   << ',' << int(pc.texture.color.b);
                break;
            case PlaneTextureSpec::Source::Bank:
                os << " bank " << pc.texture.bank_index;
                break;
            case PlaneTextureSpec::Source::Extracted:
                os << " extracted " << pc.texture.tex_w << 'x' << pc.texture.tex_h;
                break;
        }
        os << '\n';
    }
    for (const std::string& bg : cfg.background_frames) os << "background " << bg << '\n';
    os << randomization_to_json(cfg.randomization) << '\n' << calibration_text;
    const std::string s = os.str();
    return hex64(fnv1a64(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

namespace {

// Canonical strings for the manifest's variance audit: the ablation checks
// compare entire lighting / scale / material tuples across frames, so the
// keys must capture every sampled component bit-exactly.
std::string lighting_key(const SceneInstance& scene) {
    std::ostringstream os;
    os << "c=" << fmt_double(scene.contrast) << " b=" << fmt_double(scene.brightness);
    for (const LightSpec& l : scene.lights) {
        os << " | " << (l.kind == LightSpec::Kind::Directional ? "dir" : "point") << ' '
           << fmt_double(l.direction.x) << ',' << fmt_double(l.direction.y) << ','
           << fmt_double(l.direction.z) << " lum=" << fmt_double(l.luminosity);
    }
    return os.str();
}

std::string scale_key(const Vec3& s) {
    return fmt_double(s.x) + "," + fmt_double(s.y) + "," + fmt_double(s.z);
}

struct FramePaths {
    std::string image, mask, depth;  // dataset-relative, forward slashes
};

FramePaths dataset_frame_paths(int frame_id, Split split) {
    const std::string stem = frame_stem(frame_id);
    const std::string s = split_name(split);
    return {"images/" + s + "/" + stem + ".png", "masks/" + s + "/" + stem + ".png",
            "depth/" + s + "/" + stem + ".pfm"};
}

json texture_bank_json(const std::vector<TextureBankEntry>& bank) {
    json arr = json::array();
    for (const TextureBankEntry& e : bank) {
        json j;
        j["name"] = e.name;
        j["kind"] = texture_kind_name(e.kind);
        j["color_a"] = {e.params.color_a.r, e.params.color_a.g, e.params.color_a.b};
        j["color_b"] = {e.params.color_b.r, e.params.color_b.g, e.params.color_b.b};
        j["cell_px"] = e.params.cell_px;
        j["octaves"] = e.params.octaves;
        j["scale"] = e.params.scale;
        j["seed"] = e.seed;
        j["size"] = {e.width, e.height};
        arr.push_back(std::move(j));
    }
    return arr;
}

}  // namespace

GenerateSummary run_generate(const GenerateOptions& opts) {
    if (opts.count < 1) throw InvalidParams("generate: count must be >= 1");
    SceneConfig cfg = load_scene_config(opts.scene_config_path);

    if (!opts.preset_name.empty()) {
        // The preset replaces the sampling policy; the scene-geometry knobs
        // (placement region, separation) stay with the scene.
        RandomizationConfig p = preset(opts.preset_name);
        p.placement_polygon = cfg.randomization.placement_polygon;
        p.min_separation = cfg.randomization.min_separation;
        p.master_seed = cfg.randomization.master_seed;
        cfg.randomization = p;
        cfg.preset_name = opts.preset_name;
    }
    if (opts.seed_given) cfg.randomization.master_seed = opts.seed;
    if (!opts.output_dir.empty()) cfg.output_dir = opts.output_dir;
    const SplitRatio ratio = opts.split.empty() ? SplitRatio{} : parse_split_ratio(opts.split);

    if (cfg.calibration_path.empty())
        throw InvalidParams("generate: scene config does not name a calibration file");
    const std::string calib_text = read_text_file(cfg.calibration_path);
    const CalibrationResult calib = calibration_from_json(calib_text);
    const CameraModel cam = rescale_camera(calib.camera, cfg.width, cfg.height);

    const AssetLibrary assets = default_asset_library();
    const SceneLayout layout = realize_layout(cfg, assets, calib.camera);
    (void)sample_scene(cfg.randomization, layout, assets, 0);  // fail fast on bad config

    const std::string digest = dataset_config_digest(cfg, ratio, opts.count, calib_text);
    const std::vector<Split> splits =
        assign_splits(cfg.randomization.master_seed, opts.count, ratio);

    const fs::path out = cfg.output_dir;
    for (const char* kind : {"images", "masks", "depth"})
        for (const char* split_dir : {"train", "val"})
            fs::create_directories(out / kind / split_dir);
    fs::create_directories(out / ".cache");

    // A digest mismatch invalidates every cached fragment; the manifest is
    // removed up front either way so its presence always means "complete".
    const fs::path digest_file = out / ".cache" / "digest.txt";
    bool resume = false;
    if (fs::exists(digest_file)) {
        resume = read_text_file(digest_file.string()) == digest;
    }
    if (!resume) {
        for (const auto& entry : fs::directory_iterator(out / ".cache"))
            fs::remove(entry.path());
        write_text_file_atomic(digest_file.string(), digest);
    }
    std::error_code ec;
    fs::remove(out / "manifest.json", ec);

    const RenderSettings settings = cfg.render;
    const AnnotateOptions ann_opts = cfg.annotate;

    std::atomic<int> next{0};
    std::atomic<int> reused{0};
    std::atomic<bool> failed{false};
    std::mutex err_mu;
    std::exception_ptr first_error;

    auto process_frame = [&](int i) {
        const Split split = splits[static_cast<std::size_t>(i)];
        const FramePaths rel = dataset_frame_paths(i, split);
        const fs::path img = out / rel.image;
        const fs::path msk = out / rel.mask;
        const fs::path dep = out / rel.depth;
        const fs::path frag_path = out / ".cache" / (frame_stem(i) + ".json");
        if (resume && fs::exists(frag_path) && fs::exists(img) && fs::exists(msk) &&
            fs::exists(dep)) {
            reused.fetch_add(1, std::memory_order_relaxed);
            return;
        }

        const SceneInstance scene =
            sample_scene(cfg.randomization, layout, assets, static_cast<std::uint64_t>(i));
        CameraModel frame_cam = cam;
        if (scene.camera_d_azimuth != 0 || scene.camera_d_elevation != 0)
            frame_cam = jitter_camera(cam, scene.camera_d_azimuth, scene.camera_d_elevation);

        const RenderFrame frame = render(scene, layout, assets, frame_cam, settings);
        const FrameAnnotations ann =
            annotate_frame(frame, scene, assets, frame_cam, settings, i, ann_opts);

        write_png_rgb8(img.string(), frame.rgb);
        write_png_gray16(msk.string(), frame.instance);
        write_pfm(dep.string(), frame.depth);

        ImageEntry entry;
        entry.id = i;
        entry.file = rel.image;
        entry.width = settings.width;
        entry.height = settings.height;

        json frag;
        frag["frame_id"] = i;
        frag["split"] = split_name(split);
        frag["object_count"] = scene.objects.size();
        frag["dropped_objects"] = scene.dropped_objects;
        frag["excluded_low_visibility"] = ann.excluded_low_visibility;
        frag["lighting_key"] = lighting_key(scene);
        json scales = json::array();
        json materials = json::array();
        for (const PlacedObject& obj : scene.objects) {
            if (obj.is_car) scales.push_back(scale_key(obj.scale));
            materials.push_back(obj.material.kind == MaterialRef::Kind::BankTexture ? "bank"
                                                                                    : "palette");
        }
        frag["car_scale_keys"] = std::move(scales);
        frag["material_keys"] = std::move(materials);
        frag["annofile"] = json::parse(annotation_file_json({entry}, ann.records));
        write_text_file_atomic(frag_path.string(), frag.dump());
    };

    const int threads = std::min(resolve_thread_count(opts.threads), opts.count);
    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= opts.count || failed.load(std::memory_order_relaxed)) return;
            try {
                process_frame(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!first_error) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    // Assemble the split documents and the manifest from the fragments (the
    // reused ones included — they carry the full annotation payload).
    std::vector<ImageEntry> split_images[2];
    std::vector<AnnotationRecord> split_records[2];
    std::set<std::string> lighting_keys, car_scale_keys, material_sources;
    GenerateSummary summary;
    summary.frames = opts.count;
    summary.output_dir = out.string();
    summary.config_digest = digest;
    summary.reused_frames = reused.load();
    long long total_objects = 0;

    json frames_json = json::array();
    for (int i = 0; i < opts.count; ++i) {
        const Split split = splits[static_cast<std::size_t>(i)];
        const int si = split == Split::Train ? 0 : 1;
        const fs::path frag_path = out / ".cache" / (frame_stem(i) + ".json");
        json frag;
        try {
            frag = json::parse(read_text_file(frag_path.string()));
        } catch (const json::exception& e) {
            throw ParseError("cache fragment " + frag_path.string() + ": " + e.what());
        }
        const AnnotationFile af = parse_annotation_file(frag.at("annofile").dump());
        if (af.images.size() != 1 || af.images[0].id != i)
            throw InconsistentInputs("cache fragment " + frag_path.string() +
                                     " does not describe frame " + std::to_string(i));
        split_images[si].push_back(af.images[0]);
        split_records[si].insert(split_records[si].end(), af.records.begin(),
                                 af.records.end());
        summary.annotations += static_cast<int>(af.records.size());
        summary.excluded_low_visibility += frag.at("excluded_low_visibility").get<int>();
        summary.dropped_objects += frag.at("dropped_objects").get<int>();
        total_objects += frag.at("object_count").get<long long>();
        lighting_keys.insert(frag.at("lighting_key").get<std::string>());
        for (const auto& k : frag.at("car_scale_keys"))
            car_scale_keys.insert(k.get<std::string>());
        for (const auto& k : frag.at("material_keys"))
            material_sources.insert(k.get<std::string>());

        const FramePaths rel = dataset_frame_paths(i, split);
        json fj;
        fj["id"] = i;
        fj["split"] = split_name(split);
        fj["image"] = rel.image;
        fj["mask"] = rel.mask;
        fj["depth"] = rel.depth;
        frames_json.push_back(std::move(fj));
    }
    summary.train_frames = static_cast<int>(split_images[0].size());
    summary.val_frames = static_cast<int>(split_images[1].size());

    write_text_file_atomic((out / "annotations_train.json").string(),
                           annotation_file_json(split_images[0], split_records[0]));
    write_text_file_atomic((out / "annotations_val.json").string(),
                           annotation_file_json(split_images[1], split_records[1]));

    const std::string unit_scale = scale_key(Vec3{1, 1, 1});
    json manifest;
    manifest["scene"] = cfg.scene_name;
    manifest["config_digest"] = digest;
    manifest["resolution"] = {cfg.width, cfg.height};
    manifest["image_count"] = opts.count;
    manifest["bin_count"] = kPoseBinCount;
    manifest["split_ratio"] = std::to_string(ratio.train) + ":" + std::to_string(ratio.val);
    json split_ids;
    split_ids["train"] = json::array();
    split_ids["val"] = json::array();
    for (int i = 0; i < opts.count; ++i)
        split_ids[split_name(splits[static_cast<std::size_t>(i)])].push_back(i);
    manifest["splits"] = std::move(split_ids);
    manifest["frames"] = std::move(frames_json);
    manifest["annotation_count"] = summary.annotations;
    manifest["dropped_objects"] = summary.dropped_objects;
    manifest["excluded_low_visibility"] = summary.excluded_low_visibility;
    manifest["preset"] = cfg.preset_name;
    manifest["randomization"] = json::parse(randomization_to_json(cfg.randomization));
    json cars = json::array();
    for (const CarModel& c : assets.cars) cars.push_back(c.name);
    manifest["car_models"] = std::move(cars);
    json palette = json::array();
    for (const NamedColor& c : assets.palette) palette.push_back(c.name);
    manifest["palette"] = std::move(palette);
    manifest["texture_bank"] = texture_bank_json(assets.bank);
    manifest["texture_bank_digest"] = hex64(texture_bank_digest(assets.bank));
    json audit;
    audit["total_objects"] = total_objects;
    audit["distinct_lighting_tuples"] = lighting_keys.size();
    audit["distinct_car_scale_tuples"] = car_scale_keys.size();
    audit["car_scales_all_unit"] =
        car_scale_keys.empty() ||
        (car_scale_keys.size() == 1 && *car_scale_keys.begin() == unit_scale);
    audit["material_sources"] = json(material_sources);
    manifest["audit"] = std::move(audit);
    write_text_file_atomic((out / "manifest.json").string(), manifest.dump(2) + "\n");

    return summary;
}

// ---------------------------------------------------------------------------
// evaluate

EvalReport run_evaluate(const EvaluateOptions& opts, std::string* text_report) {
    if (opts.iou_thresholds.empty())
        throw InvalidParams("evaluate: at least one IoU threshold is required");
    const AnnotationFile gt_file = parse_annotation_file(read_text_file(opts.gt_path));
    const std::vector<GroundTruthBox> gts = gt_from_annotations(gt_file);
    const std::vector<Detection> dets = parse_detection_file(read_text_file(opts.pred_path));

    const EvalReport report =
        evaluate_detections(dets, gts, opts.iou_thresholds, opts.with_pose);

    if (text_report) {
        std::ostringstream os;
        os << "detections: " << dets.size() << "  ground truth: " << gts.size() << '\n';
        for (std::size_t k = 0; k < report.iou_thresholds.size(); ++k) {
            char line[160];
            std::snprintf(line, sizeof line, "AP@%.2f = %.4f   (tp %d  fp %d  fn %d)\n",
                          report.iou_thresholds[k], report.ap[k], report.counts[k].tp,
                          report.counts[k].fp, report.counts[k].fn);
            os << line;
        }
        if (report.has_pose) {
            char line[160];
            std::snprintf(line, sizeof line,
                          "Acc10 = %.4f   MedErr = %.2f deg   (matched pairs %d)\n",
                          report.pose.acc10, report.pose.med_err_deg, report.pose.pairs);
            os << line;
        }
        *text_report = os.str();
    }
    if (!opts.out_path.empty())
        write_text_file_atomic(opts.out_path, eval_report_json(report));
    return report;
}

// ---------------------------------------------------------------------------
// overlay

namespace {

Color instance_tint(int id) {
    // Hash-derived hue, kept away from black so the tint survives blending.
    const std::uint64_t h = mix64(static_cast<std::uint64_t>(id) * 0x9E3779B97F4A7C15ull + 1);
    return {static_cast<std::uint8_t>(64 + (h & 0xBF)),
            static_cast<std::uint8_t>(64 + ((h >> 8) & 0xBF)),
            static_cast<std::uint8_t>(64 + ((h >> 16) & 0xBF))};
}

void put_pixel(Raster8& img, int x, int y, Color c) {
    if (x < 0 || y < 0 || x >= img.width || y >= img.height) return;
    img.set_rgb(x, y, c);
}

void draw_line(Raster8& img, double x0, double y0, double x1, double y1, Color c) {
    const int steps =
        std::max(1, static_cast<int>(std::ceil(std::max(std::abs(x1 - x0), std::abs(y1 - y0)))));
    for (int s = 0; s <= steps; ++s) {
        const double t = static_cast<double>(s) / steps;
        put_pixel(img, static_cast<int>(std::lround(x0 + (x1 - x0) * t)),
                  static_cast<int>(std::lround(y0 + (y1 - y0) * t)), c);
    }
}

void draw_box(Raster8& img, const PixelBox& b, Color c) {
    const double x1 = b.x + b.w - 1, y1 = b.y + b.h - 1;
    for (int inset = 0; inset < 2; ++inset) {  // 2 px border
        draw_line(img, b.x + inset, b.y + inset, x1 - inset, b.y + inset, c);
        draw_line(img, b.x + inset, y1 - inset, x1 - inset, y1 - inset, c);
        draw_line(img, b.x + inset, b.y + inset, b.x + inset, y1 - inset, c);
        draw_line(img, x1 - inset, b.y + inset, x1 - inset, y1 - inset, c);
    }
}

// Screen-space yaw glyph: yaw 0 (object facing the camera) points down the
// image, positive yaw rotates counter-clockwise on screen.
void draw_yaw_arrow(Raster8& img, const PixelBox& b, double yaw, Color c) {
    const double cx = b.x + b.w / 2.0, cy = b.y + b.h / 2.0;
    const double len = std::clamp(0.5 * std::min(b.w, b.h), 10.0, 40.0);
    const double dx = std::sin(yaw), dy = std::cos(yaw);
    const double tx = cx + dx * len, ty = cy + dy * len;
    draw_line(img, cx, cy, tx, ty, c);
    for (const double side : {2.6, -2.6}) {  // barbs ~149 deg off the shaft
        const double a = std::atan2(dy, dx) + side;
        draw_line(img, tx, ty, tx + std::cos(a) * len * 0.35, ty + std::sin(a) * len * 0.35, c);
    }
}

}  // namespace

void run_overlay(const OverlayOptions& opts) {
    const fs::path root = opts.dataset_dir;
    const std::string stem = frame_stem(opts.frame_id);
    std::string split;
    for (const char* s : {"train", "val"})
        if (fs::exists(root / "images" / s / (stem + ".png"))) split = s;
    if (split.empty())
        throw UnknownFrame("frame " + std::to_string(opts.frame_id) + " not found under " +
                           (root / "images").string());

    Raster8 rgb = read_png_rgb8((root / "images" / split / (stem + ".png")).string());
    const Raster16 mask = read_png_gray16((root / "masks" / split / (stem + ".png")).string());
    if (mask.width != rgb.width || mask.height != rgb.height)
        throw MismatchedDimensions("overlay: mask and image disagree on size");

    const AnnotationFile af = parse_annotation_file(
        read_text_file((root / ("annotations_" + split + ".json")).string()));

    for (int y = 0; y < rgb.height; ++y)
        for (int x = 0; x < rgb.width; ++x) {
            const int id = mask.at(x, y);
            if (id == 0) continue;
            const Color tint = instance_tint(id);
            for (int ch = 0; ch < 3; ++ch) {
                const int base = rgb.at(x, y, ch);
                const int t = ch == 0 ? tint.r : ch == 1 ? tint.g : tint.b;
                rgb.at(x, y, ch) = static_cast<std::uint8_t>((base * 11 + t * 5) / 16);
            }
        }

    for (const AnnotationRecord& rec : af.records) {
        if (rec.frame_id != opts.frame_id) continue;
        const Color c = instance_tint(rec.instance_id);
        draw_box(rgb, rec.bbox, c);
        draw_yaw_arrow(rgb, rec.bbox, rec.yaw_rad, Color{255, 255, 255});
    }

    write_png_rgb8(opts.out_path, rgb);
}

}  // namespace scenesmith

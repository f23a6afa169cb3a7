#include "scenesmith/scene_config.hpp"

#include <filesystem>

#include <nlohmann/json.hpp>

#include "scenesmith/errors.hpp"
#include "scenesmith/image_io.hpp"

namespace scenesmith {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& context) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* name : allowed)
            if (key == name) {
                known = true;
                break;
            }
        if (!known)
            throw ParseError("unknown key `" + key + "` in " + context);
    }
}

Vec3 vec3_from(const json& j, const std::string& context) {
    if (!j.is_array() || j.size() != 3)
        throw ParseError(context + " must be a [x, y, z] array");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Color color_from(const json& j, const std::string& context) {
    if (!j.is_array() || j.size() != 3)
        throw ParseError(context + " must be an [r, g, b] array");
    for (const auto& c : j)
        if (!c.is_number_integer() || c.get<int>() < 0 || c.get<int>() > 255)
            throw ParseError(context + " channels must be integers in [0, 255]");
    return {static_cast<std::uint8_t>(j[0].get<int>()),
            static_cast<std::uint8_t>(j[1].get<int>()),
            static_cast<std::uint8_t>(j[2].get<int>())};
}

Range range_from(const json& j, const std::string& context) {
    if (!j.is_array() || j.size() != 2)
        throw ParseError(context + " must be a [lo, hi] array");
    return {j[0].get<double>(), j[1].get<double>()};
}

IntRange int_range_from(const json& j, const std::string& context) {
    if (!j.is_array() || j.size() != 2)
        throw ParseError(context + " must be a [lo, hi] integer array");
    return {j[0].get<int>(), j[1].get<int>()};
}

void apply_randomization_overrides(RandomizationConfig& cfg, const json& j) {
    reject_unknown_keys(
        j, {"preset", "master_seed", "textures", "light_augmentation", "geometric_variation",
            "distractors", "car_models", "car_count", "distractor_count", "distractor_kinds",
            "scale_range", "distractor_scale_range", "light_count", "luminosity_range",
            "light_elevation_deg", "contrast_range", "brightness_range", "placement_polygon",
            "min_separation", "camera_azimuth_jitter_deg", "camera_elevation_jitter_deg",
            "palette"},
        "randomization");
    if (j.contains("master_seed")) cfg.master_seed = j["master_seed"].get<std::uint64_t>();
    if (j.contains("textures")) cfg.textures = j["textures"].get<bool>();
    if (j.contains("light_augmentation"))
        cfg.light_augmentation = j["light_augmentation"].get<bool>();
    if (j.contains("geometric_variation"))
        cfg.geometric_variation = j["geometric_variation"].get<bool>();
    if (j.contains("distractors")) cfg.distractors = j["distractors"].get<bool>();
    if (j.contains("car_models"))
        cfg.car_models = j["car_models"].get<std::vector<std::string>>();
    if (j.contains("car_count")) cfg.car_count = int_range_from(j["car_count"], "car_count");
    if (j.contains("distractor_count"))
        cfg.distractor_count = int_range_from(j["distractor_count"], "distractor_count");
    if (j.contains("distractor_kinds"))
        cfg.distractor_kinds = j["distractor_kinds"].get<std::vector<std::string>>();
    if (j.contains("scale_range")) cfg.scale_range = range_from(j["scale_range"], "scale_range");
    if (j.contains("distractor_scale_range"))
        cfg.distractor_scale_range =
            range_from(j["distractor_scale_range"], "distractor_scale_range");
    if (j.contains("light_count")) cfg.light_count = int_range_from(j["light_count"], "light_count");
    if (j.contains("luminosity_range"))
        cfg.luminosity_range = range_from(j["luminosity_range"], "luminosity_range");
    if (j.contains("light_elevation_deg"))
        cfg.light_elevation_deg = range_from(j["light_elevation_deg"], "light_elevation_deg");
    if (j.contains("contrast_range"))
        cfg.contrast_range = range_from(j["contrast_range"], "contrast_range");
    if (j.contains("brightness_range"))
        cfg.brightness_range = range_from(j["brightness_range"], "brightness_range");
    if (j.contains("placement_polygon")) {
        cfg.placement_polygon.clear();
        for (const auto& v : j["placement_polygon"]) {
            if (!v.is_array() || v.size() != 2)
                throw ParseError("placement_polygon entries must be [x, y] arrays");
            cfg.placement_polygon.push_back({v[0].get<double>(), v[1].get<double>()});
        }
    }
    if (j.contains("min_separation")) cfg.min_separation = j["min_separation"].get<double>();
    if (j.contains("camera_azimuth_jitter_deg"))
        cfg.camera_azimuth_jitter_deg =
            range_from(j["camera_azimuth_jitter_deg"], "camera_azimuth_jitter_deg");
    if (j.contains("camera_elevation_jitter_deg"))
        cfg.camera_elevation_jitter_deg =
            range_from(j["camera_elevation_jitter_deg"], "camera_elevation_jitter_deg");
    if (j.contains("palette")) cfg.palette = j["palette"].get<std::vector<std::string>>();
}

std::string resolve_path(const std::string& path, const std::string& base_dir) {
    if (path.empty()) return path;
    const std::filesystem::path p(path);
    if (p.is_absolute() || base_dir.empty()) return path;
    return (std::filesystem::path(base_dir) / p).string();
}

}  // namespace

SceneConfig scene_config_from_json(const std::string& text, const std::string& base_dir) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("scene config: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("scene config must be a JSON object");
    reject_unknown_keys(doc,
                        {"scene", "resolution", "meters_per_unit", "correspondences",
                         "calibration", "intrinsics", "layout", "background", "randomization",
                         "render", "annotation", "output"},
                        "scene config");

    SceneConfig cfg;
    try {
        if (doc.contains("scene")) cfg.scene_name = doc["scene"].get<std::string>();
        if (doc.contains("resolution")) {
            const auto& res = doc["resolution"];
            if (!res.is_array() || res.size() != 2)
                throw ParseError("resolution must be [width, height]");
            cfg.width = res[0].get<int>();
            cfg.height = res[1].get<int>();
            if (cfg.width < 1 || cfg.height < 1) throw ParseError("resolution must be positive");
        }
        if (doc.contains("meters_per_unit")) {
            cfg.meters_per_unit = doc["meters_per_unit"].get<double>();
            if (!(cfg.meters_per_unit > 0)) throw ParseError("meters_per_unit must be positive");
        }
        if (doc.contains("correspondences"))
            cfg.correspondences_path = resolve_path(doc["correspondences"].get<std::string>(),
                                                    base_dir);
        if (doc.contains("calibration"))
            cfg.calibration_path = resolve_path(doc["calibration"].get<std::string>(), base_dir);

        if (doc.contains("intrinsics")) {
            const auto& intr = doc["intrinsics"];
            reject_unknown_keys(intr, {"mode", "init_focal", "fx", "fy", "cx", "cy"},
                                "intrinsics");
            const std::string mode = intr.value("mode", "grid");
            if (mode == "grid") {
                cfg.intrinsics_mode = SceneConfig::IntrinsicsMode::Grid;
                if (intr.contains("init_focal"))
                    cfg.init_focal = intr["init_focal"].get<double>();
            } else if (mode == "fixed") {
                cfg.intrinsics_mode = SceneConfig::IntrinsicsMode::Fixed;
                cfg.fixed_intrinsics.fx = intr.at("fx").get<double>();
                cfg.fixed_intrinsics.fy = intr.at("fy").get<double>();
                cfg.fixed_intrinsics.cx = intr.at("cx").get<double>();
                cfg.fixed_intrinsics.cy = intr.at("cy").get<double>();
            } else {
                throw ParseError("intrinsics mode must be `grid` or `fixed`");
            }
        }

        if (doc.contains("layout")) {
            const auto& layout = doc["layout"];
            reject_unknown_keys(layout, {"planes"}, "layout");
            for (const auto& plane : layout.at("planes")) {
                reject_unknown_keys(plane, {"role", "corners", "texture"}, "layout plane");
                PlaneConfig pc;
                pc.role = plane_role_from_name(plane.at("role").get<std::string>());
                const auto& corners = plane.at("corners");
                if (!corners.is_array() || corners.size() != 4)
                    throw ParseError("plane corners must be 4 [x, y, z] arrays");
                for (int k = 0; k < 4; ++k)
                    pc.corners[static_cast<std::size_t>(k)] =
                        vec3_from(corners[static_cast<std::size_t>(k)], "plane corner");
                if (plane.contains("texture")) {
                    const auto& tex = plane["texture"];
                    reject_unknown_keys(tex, {"source", "color", "index", "size"},
                                        "plane texture");
                    const std::string source = tex.value("source", "flat");
                    if (source == "flat") {
                        pc.texture.source = PlaneTextureSpec::Source::Flat;
                        if (tex.contains("color"))
                            pc.texture.color = color_from(tex["color"], "plane texture color");
                    } else if (source == "bank") {
                        pc.texture.source = PlaneTextureSpec::Source::Bank;
                        pc.texture.bank_index = tex.at("index").get<int>();
                    } else if (source == "extracted") {
                        pc.texture.source = PlaneTextureSpec::Source::Extracted;
                        if (tex.contains("size")) {
                            const auto& size = tex["size"];
                            if (!size.is_array() || size.size() != 2)
                                throw ParseError("plane texture size must be [w, h]");
                            pc.texture.tex_w = size[0].get<int>();
                            pc.texture.tex_h = size[1].get<int>();
                        }
                    } else {
                        throw ParseError("plane texture source must be flat|bank|extracted");
                    }
                }
                cfg.planes.push_back(std::move(pc));
            }
        }

        if (doc.contains("background")) {
            const auto& bg = doc["background"];
            reject_unknown_keys(bg, {"frames"}, "background");
            for (const auto& f : bg.at("frames"))
                cfg.background_frames.push_back(resolve_path(f.get<std::string>(), base_dir));
        }

        if (doc.contains("randomization")) {
            const auto& rand = doc["randomization"];
            if (rand.contains("preset")) {
                cfg.preset_name = rand["preset"].get<std::string>();
                cfg.randomization = preset(cfg.preset_name);
            }
            apply_randomization_overrides(cfg.randomization, rand);
        }

        if (doc.contains("render")) {
            const auto& render = doc["render"];
            reject_unknown_keys(render, {"spp", "shadows", "ambient"}, "render");
            if (render.contains("spp"))
                cfg.render.samples_per_pixel = render["spp"].get<int>();
            if (render.contains("shadows")) cfg.render.shadows = render["shadows"].get<bool>();
            if (render.contains("ambient")) cfg.render.ambient = render["ambient"].get<double>();
        }
        if (doc.contains("annotation")) {
            const auto& ann = doc["annotation"];
            reject_unknown_keys(ann, {"min_visibility"}, "annotation");
            if (ann.contains("min_visibility")) {
                cfg.annotate.min_visibility = ann["min_visibility"].get<double>();
                if (cfg.annotate.min_visibility < 0 || cfg.annotate.min_visibility > 1)
                    throw ParseError("annotation min_visibility must be in [0, 1]");
            }
        }
        if (doc.contains("output"))
            cfg.output_dir = resolve_path(doc["output"].get<std::string>(), base_dir);
    } catch (const json::exception& e) {
        throw ParseError(std::string("scene config: ") + e.what());
    }
    cfg.render.width = cfg.width;
    cfg.render.height = cfg.height;
    return cfg;
}

SceneConfig load_scene_config(const std::string& path) {
    const std::string base = std::filesystem::path(path).parent_path().string();
    return scene_config_from_json(read_text_file(path), base);
}

std::string randomization_to_json(const RandomizationConfig& cfg) {
    json j;
    j["master_seed"] = cfg.master_seed;
    j["textures"] = cfg.textures;
    j["light_augmentation"] = cfg.light_augmentation;
    j["geometric_variation"] = cfg.geometric_variation;
    j["distractors"] = cfg.distractors;
    j["car_models"] = cfg.car_models;
    j["car_count"] = {cfg.car_count.lo, cfg.car_count.hi};
    j["distractor_count"] = {cfg.distractor_count.lo, cfg.distractor_count.hi};
    j["distractor_kinds"] = cfg.distractor_kinds;
    j["scale_range"] = {cfg.scale_range.lo, cfg.scale_range.hi};
    j["distractor_scale_range"] = {cfg.distractor_scale_range.lo, cfg.distractor_scale_range.hi};
    j["light_count"] = {cfg.light_count.lo, cfg.light_count.hi};
    j["luminosity_range"] = {cfg.luminosity_range.lo, cfg.luminosity_range.hi};
    j["light_elevation_deg"] = {cfg.light_elevation_deg.lo, cfg.light_elevation_deg.hi};
    j["contrast_range"] = {cfg.contrast_range.lo, cfg.contrast_range.hi};
    j["brightness_range"] = {cfg.brightness_range.lo, cfg.brightness_range.hi};
    j["placement_polygon"] = json::array();
    for (const auto& v : cfg.placement_polygon)
        j["placement_polygon"].push_back({v.x, v.y});
    j["min_separation"] = cfg.min_separation;
    j["camera_azimuth_jitter_deg"] = {cfg.camera_azimuth_jitter_deg.lo,
                                      cfg.camera_azimuth_jitter_deg.hi};
    j["camera_elevation_jitter_deg"] = {cfg.camera_elevation_jitter_deg.lo,
                                        cfg.camera_elevation_jitter_deg.hi};
    j["palette"] = cfg.palette;
    return j.dump();
}

}  // namespace scenesmith

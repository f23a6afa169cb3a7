#include "scenesmith/randomizer.hpp"

#include <cmath>

#include "scenesmith/errors.hpp"

namespace scenesmith {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_range(const Range& r, const char* name) {
    if (!(r.lo <= r.hi))
        throw InvalidParams(std::string(name) + " range has lo > hi");
}

void require_range(const IntRange& r, const char* name) {
    if (r.lo > r.hi) throw InvalidParams(std::string(name) + " range has lo > hi");
    if (r.lo < 0) throw InvalidParams(std::string(name) + " range must be nonnegative");
}

int orientation(const Vec2& a, const Vec2& b, const Vec2& c) {
    const double v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

bool segments_properly_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    const int o1 = orientation(a, b, c), o2 = orientation(a, b, d);
    const int o3 = orientation(c, d, a), o4 = orientation(c, d, b);
    return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

void validate_config(const RandomizationConfig& cfg) {
    require_range(cfg.car_count, "car_count");
    require_range(cfg.distractor_count, "distractor_count");
    require_range(cfg.scale_range, "scale_range");
    require_range(cfg.distractor_scale_range, "distractor_scale_range");
    require_range(cfg.light_count, "light_count");
    require_range(cfg.luminosity_range, "luminosity_range");
    require_range(cfg.light_elevation_deg, "light_elevation_deg");
    require_range(cfg.contrast_range, "contrast_range");
    require_range(cfg.brightness_range, "brightness_range");
    require_range(cfg.camera_azimuth_jitter_deg, "camera_azimuth_jitter_deg");
    require_range(cfg.camera_elevation_jitter_deg, "camera_elevation_jitter_deg");
    if (!(cfg.scale_range.lo > 0) || !(cfg.distractor_scale_range.lo > 0))
        throw InvalidParams("scale ranges must be positive");
    if (!(cfg.luminosity_range.lo > 0)) throw InvalidParams("luminosity must be positive");
    if (!(cfg.contrast_range.lo > 0)) throw InvalidParams("contrast must be positive");
    if (cfg.min_separation < 0) throw InvalidParams("min_separation must be nonnegative");
    if (cfg.light_count.lo < 1) throw InvalidParams("light_count must be >= 1");
    if (!cfg.placement_polygon.empty() && cfg.placement_polygon.size() < 3)
        throw InvalidParams("placement_polygon needs >= 3 vertices");
    const auto& poly = cfg.placement_polygon;
    for (std::size_t i = 0; i < poly.size(); ++i)
        for (std::size_t j = i + 1; j < poly.size(); ++j) {
            // skip adjacent edges (shared endpoint)
            if (j == i + 1 || (i == 0 && j == poly.size() - 1)) continue;
            if (segments_properly_intersect(poly[i], poly[(i + 1) % poly.size()], poly[j],
                                            poly[(j + 1) % poly.size()]))
                throw InvalidParams("placement_polygon is self-intersecting");
        }
}

// Point containment in the convex ground quad (corners CCW seen from above).
bool inside_ground_quad(const Vec2& p, const std::array<Vec3, 4>& corners, double tol) {
    for (int i = 0; i < 4; ++i) {
        const Vec2 a{corners[i].x, corners[i].y};
        const Vec2 b{corners[(i + 1) % 4].x, corners[(i + 1) % 4].y};
        const double c = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
        if (c < -tol) return false;
    }
    return true;
}

struct MaterialPools {
    const std::vector<TextureBankEntry>* bank;
    std::vector<NamedColor> palette;
};

MaterialRef draw_material(Pcg32& rng, bool textures_on, const MaterialPools& pools) {
    MaterialRef mat;
    if (textures_on) {
        mat.kind = MaterialRef::Kind::BankTexture;
        mat.index = static_cast<int>(rng.index(pools.bank->size()));
        mat.name = (*pools.bank)[static_cast<std::size_t>(mat.index)].name;
    } else {
        mat.kind = MaterialRef::Kind::FlatColor;
        mat.index = static_cast<int>(rng.index(pools.palette.size()));
        mat.color = pools.palette[static_cast<std::size_t>(mat.index)].color;
        mat.name = pools.palette[static_cast<std::size_t>(mat.index)].name;
    }
    return mat;
}

}  // namespace

bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& polygon) {
    bool inside = false;
    const std::size_t n = polygon.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = polygon[i];
        const Vec2& b = polygon[j];
        if ((a.y > p.y) != (b.y > p.y) &&
            p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x)
            inside = !inside;
    }
    return inside;
}

FootprintRect object_footprint(const PlacedObject& obj) {
    FootprintRect rect;
    const Aabb& b = obj.local_bounds;
    const double cx = (b.min.x + b.max.x) / 2 * obj.scale.x;
    const double cy = (b.min.y + b.max.y) / 2 * obj.scale.y;
    const double cw = std::cos(obj.yaw), sw = std::sin(obj.yaw);
    rect.center = {obj.position.x + cx * cw - cy * sw, obj.position.y + cx * sw + cy * cw};
    rect.yaw = obj.yaw;
    rect.half_x = (b.max.x - b.min.x) / 2 * obj.scale.x;
    rect.half_y = (b.max.y - b.min.y) / 2 * obj.scale.y;
    return rect;
}

bool rect_overlap(const FootprintRect& a, const FootprintRect& b, double margin) {
    const Vec2 axes_a[2] = {{std::cos(a.yaw), std::sin(a.yaw)},
                            {-std::sin(a.yaw), std::cos(a.yaw)}};
    const Vec2 axes_b[2] = {{std::cos(b.yaw), std::sin(b.yaw)},
                            {-std::sin(b.yaw), std::cos(b.yaw)}};
    const Vec2 d{b.center.x - a.center.x, b.center.y - a.center.y};
    const Vec2 axes[4] = {axes_a[0], axes_a[1], axes_b[0], axes_b[1]};
    for (const Vec2& axis : axes) {
        const double dist = std::abs(d.x * axis.x + d.y * axis.y);
        const double ra = a.half_x * std::abs(axes_a[0].x * axis.x + axes_a[0].y * axis.y) +
                          a.half_y * std::abs(axes_a[1].x * axis.x + axes_a[1].y * axis.y);
        const double rb = b.half_x * std::abs(axes_b[0].x * axis.x + axes_b[0].y * axis.y) +
                          b.half_y * std::abs(axes_b[1].x * axis.x + axes_b[1].y * axis.y);
        if (dist > ra + rb + margin) return false;  // separating axis found
    }
    return true;
}

bool footprint_overlap(const PlacedObject& a, const PlacedObject& b) {
    return rect_overlap(object_footprint(a), object_footprint(b));
}

SceneInstance sample_scene(const RandomizationConfig& cfg, const SceneLayout& layout,
                           const AssetLibrary& assets, std::uint64_t frame_index) {
    validate_config(cfg);

    // Placement region: config polygon or the whole ground quad.
    const auto& ground = layout.ground().corners;
    std::vector<Vec2> polygon = cfg.placement_polygon;
    if (polygon.empty())
        for (const auto& c : ground) polygon.push_back({c.x, c.y});
    double extent = 0;
    for (int i = 0; i < 4; ++i) extent = std::max(extent, norm(ground[i] - ground[(i + 1) % 4]));
    for (const auto& v : polygon)
        if (!inside_ground_quad(v, ground, 1e-9 * extent))
            throw ConfigOutOfBounds("placement polygon vertex (" + std::to_string(v.x) + ", " +
                                    std::to_string(v.y) + ") outside the ground plane");
    Vec2 poly_min = polygon[0], poly_max = polygon[0];
    for (const auto& v : polygon) {
        poly_min.x = std::min(poly_min.x, v.x);
        poly_min.y = std::min(poly_min.y, v.y);
        poly_max.x = std::max(poly_max.x, v.x);
        poly_max.y = std::max(poly_max.y, v.y);
    }

    // Resolve asset pools up front so bad names fail before any sampling.
    std::vector<const CarModel*> models;
    if (cfg.car_models.empty())
        for (const auto& car : assets.cars) models.push_back(&car);
    else
        for (const auto& name : cfg.car_models) {
            const int idx = assets.car_index(name);
            if (idx < 0) throw NotPresent("car model `" + name + "` not in library");
            models.push_back(&assets.cars[static_cast<std::size_t>(idx)]);
        }
    MaterialPools pools{&assets.bank, {}};
    if (cfg.palette.empty())
        pools.palette = assets.palette;
    else
        for (const auto& name : cfg.palette) {
            const int idx = assets.palette_index(name);
            if (idx < 0) throw NotPresent("palette color `" + name + "` not in library");
            pools.palette.push_back(assets.palette[static_cast<std::size_t>(idx)]);
        }
    std::vector<const TriangleMesh*> distractor_meshes;
    for (const auto& kind : cfg.distractor_kinds)
        distractor_meshes.push_back(&assets.distractor_mesh(kind));

    SceneInstance scene;
    scene.frame_seed = frame_seed(cfg.master_seed, frame_index);
    Pcg32 rng(scene.frame_seed);

    // Fixed draw order: cars, distractors, lights, photometric, camera.
    auto try_place = [&](PlacedObject& obj, bool against_cars_only) -> bool {
        for (int attempt = 0; attempt < 100; ++attempt) {
            obj.position = {rng.uniform(poly_min.x, poly_max.x),
                            rng.uniform(poly_min.y, poly_max.y), 0};
            if (!point_in_polygon({obj.position.x, obj.position.y}, polygon)) continue;
            const FootprintRect rect = object_footprint(obj);
            bool collides = false;
            for (const auto& other : scene.objects) {
                if (against_cars_only && !other.is_car) continue;
                if (rect_overlap(rect, object_footprint(other), cfg.min_separation)) {
                    collides = true;
                    break;
                }
            }
            if (!collides) return true;
        }
        return false;
    };

    const int n_cars = rng.uniform_int(cfg.car_count.lo, cfg.car_count.hi);
    for (int i = 0; i < n_cars; ++i) {
        const CarModel& model = *models[rng.index(models.size())];
        PlacedObject obj;
        obj.asset = model.name;
        obj.category = "car";
        obj.is_car = true;
        obj.local_bounds = model.mesh.bounds;
        obj.yaw = rng.uniform(-kPi, kPi);
        if (cfg.geometric_variation)
            obj.scale = {rng.uniform(cfg.scale_range.lo, cfg.scale_range.hi),
                         rng.uniform(cfg.scale_range.lo, cfg.scale_range.hi),
                         rng.uniform(cfg.scale_range.lo, cfg.scale_range.hi)};
        obj.material = draw_material(rng, cfg.textures, pools);
        if (try_place(obj, /*against_cars_only=*/false)) {
            obj.instance_id = static_cast<std::uint16_t>(scene.objects.size() + 1);
            scene.objects.push_back(obj);
        } else {
            ++scene.dropped_objects;
        }
    }

    if (cfg.distractors && !cfg.distractor_kinds.empty()) {
        const int n_distractors = rng.uniform_int(cfg.distractor_count.lo, cfg.distractor_count.hi);
        for (int i = 0; i < n_distractors; ++i) {
            const std::size_t kind_idx = rng.index(cfg.distractor_kinds.size());
            PlacedObject obj;
            obj.asset = cfg.distractor_kinds[kind_idx];
            obj.category = obj.asset;
            obj.is_car = false;
            obj.local_bounds = distractor_meshes[kind_idx]->bounds;
            obj.yaw = rng.uniform(-kPi, kPi);
            if (cfg.geometric_variation)
                obj.scale = {rng.uniform(cfg.distractor_scale_range.lo, cfg.distractor_scale_range.hi),
                             rng.uniform(cfg.distractor_scale_range.lo, cfg.distractor_scale_range.hi),
                             rng.uniform(cfg.distractor_scale_range.lo, cfg.distractor_scale_range.hi)};
            obj.material = draw_material(rng, cfg.textures, pools);
            if (try_place(obj, /*against_cars_only=*/true)) {
                obj.instance_id = static_cast<std::uint16_t>(scene.objects.size() + 1);
                scene.objects.push_back(obj);
            } else {
                ++scene.dropped_objects;
            }
        }
    }

    if (cfg.light_augmentation) {
        const int n_lights = rng.uniform_int(cfg.light_count.lo, cfg.light_count.hi);
        for (int i = 0; i < n_lights; ++i) {
            const double azimuth = rng.uniform(0, 2 * kPi);
            const double elevation =
                rng.uniform(cfg.light_elevation_deg.lo, cfg.light_elevation_deg.hi) * kPi / 180.0;
            LightSpec light;
            light.kind = LightSpec::Kind::Directional;
            light.direction = -Vec3{std::cos(elevation) * std::cos(azimuth),
                                    std::cos(elevation) * std::sin(azimuth), std::sin(elevation)};
            light.luminosity = rng.uniform(cfg.luminosity_range.lo, cfg.luminosity_range.hi);
            scene.lights.push_back(light);
        }
        scene.contrast = rng.uniform(cfg.contrast_range.lo, cfg.contrast_range.hi);
        scene.brightness = rng.uniform(cfg.brightness_range.lo, cfg.brightness_range.hi);
    } else {
        LightSpec light;  // fixed sun: 45° elevation, azimuth 0
        light.kind = LightSpec::Kind::Directional;
        const double e = kPi / 4;
        light.direction = -Vec3{std::cos(e), 0, std::sin(e)};
        light.luminosity = 1.0;
        scene.lights.push_back(light);
        scene.contrast = 1.0;
        scene.brightness = 0.0;
    }

    const auto jitter_enabled = [](const Range& r) { return r.lo != 0 || r.hi != 0; };
    if (jitter_enabled(cfg.camera_azimuth_jitter_deg))
        scene.camera_d_azimuth =
            rng.uniform(cfg.camera_azimuth_jitter_deg.lo, cfg.camera_azimuth_jitter_deg.hi) *
            kPi / 180.0;
    if (jitter_enabled(cfg.camera_elevation_jitter_deg))
        scene.camera_d_elevation =
            rng.uniform(cfg.camera_elevation_jitter_deg.lo, cfg.camera_elevation_jitter_deg.hi) *
            kPi / 180.0;

    return scene;
}

RandomizationConfig preset(const std::string& name) {
    RandomizationConfig cfg;  // defaults == full randomization
    if (name == "full_dr") return cfg;
    if (name == "no_dr_baseline") {
        cfg.textures = false;
        cfg.light_augmentation = false;
        cfg.geometric_variation = false;
        cfg.distractors = true;  // pedestrians survive the no-DR baseline
        cfg.distractor_kinds = {"pedestrian"};
        cfg.car_models = {"sedan", "hatchback", "suv", "pickup"};
        return cfg;
    }
    if (name == "ablation_T") {
        cfg.textures = false;
        return cfg;
    }
    if (name == "ablation_LA") {
        cfg.light_augmentation = false;
        return cfg;
    }
    if (name == "ablation_G") {
        cfg.geometric_variation = false;
        return cfg;
    }
    if (name == "ablation_D") {
        cfg.distractors = false;
        return cfg;
    }
    throw UnknownPreset("`" + name + "` (known: full_dr, no_dr_baseline, ablation_T, ablation_LA, "
                        "ablation_G, ablation_D)");
}

}  // namespace scenesmith

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scenesmith/assets.hpp"
#include "scenesmith/layout.hpp"
#include "scenesmith/rng.hpp"

namespace scenesmith {

struct Range {
    double lo = 0, hi = 0;
};

struct IntRange {
    int lo = 0, hi = 0;
};

// The §-free knob set: content toggles T/LA/G/D plus every sampling range,
// all serialized by these field names in the scene config.
struct RandomizationConfig {
    std::uint64_t master_seed = 0;
    bool textures = true;            // T: bank textures vs fixed palette
    bool light_augmentation = true;  // LA: sampled lights/contrast/brightness
    bool geometric_variation = true; // G: per-axis scale perturbation
    bool distractors = true;         // D: clutter objects

    std::vector<std::string> car_models;        // names; empty = all library cars
    IntRange car_count{1, 8};
    IntRange distractor_count{0, 8};
    std::vector<std::string> distractor_kinds{"cube", "sphere", "cone", "pedestrian"};
    Range scale_range{0.85, 1.15};              // per-axis, cars (and distractors)
    Range distractor_scale_range{0.3, 2.0};
    IntRange light_count{1, 3};
    Range luminosity_range{0.4, 1.6};
    Range light_elevation_deg{20.0, 80.0};
    Range contrast_range{0.8, 1.2};
    Range brightness_range{-0.1, 0.1};
    std::vector<Vec2> placement_polygon;        // on ground; empty = ground quad
    double min_separation = 0.25;               // scene units between footprints
    Range camera_azimuth_jitter_deg{0.0, 0.0};  // optional rig perturbation,
    Range camera_elevation_jitter_deg{0.0, 0.0};//   default off
    std::vector<std::string> palette;           // names; empty = full library palette
};

struct MaterialRef {
    enum class Kind { BankTexture, FlatColor };
    Kind kind = Kind::FlatColor;
    int index = 0;      // texture bank index or palette index
    Color color;        // resolved color when FlatColor
    std::string name;   // bank entry or palette color name
};

struct PlacedObject {
    std::string asset;        // car model name or distractor kind
    std::string category;     // "car" or the distractor kind
    bool is_car = false;
    Vec3 position;            // on ground, z = 0 (meshes rest on their z-min)
    double yaw = 0;           // radians, about world up
    Vec3 scale{1, 1, 1};
    MaterialRef material;
    std::uint16_t instance_id = 0;  // consecutive from 1 within the frame
    Aabb local_bounds;              // unscaled mesh bounds, snapshotted
};

struct LightSpec {
    enum class Kind { Directional, Point };
    Kind kind = Kind::Directional;
    Vec3 direction{0, 0, -1};  // travel direction (unit), directional lights
    Vec3 position;             // point lights only
    double luminosity = 1.0;
    double ambient = 0.15;     // ambient floor contributed to the scene
};

struct SceneInstance {
    std::vector<PlacedObject> objects;
    std::vector<LightSpec> lights;
    double contrast = 1.0;
    double brightness = 0.0;
    std::uint64_t frame_seed = 0;
    int dropped_objects = 0;        // placements abandoned after 100 attempts
    double camera_d_azimuth = 0;    // radians; nonzero only with camera jitter
    double camera_d_elevation = 0;
};

// Ground footprint as an oriented rectangle.
struct FootprintRect {
    Vec2 center;
    double yaw = 0;
    double half_x = 0, half_y = 0;
};

FootprintRect object_footprint(const PlacedObject& obj);

// Separating-axis test over the 4 candidate axes; `margin` > 0 demands that
// much clearance between the rectangles (used for min_separation).
bool rect_overlap(const FootprintRect& a, const FootprintRect& b, double margin = 0);

bool footprint_overlap(const PlacedObject& a, const PlacedObject& b);

// One deterministic draw of the randomized scene. Placement uses rejection
// sampling (<= 100 attempts per object, then the object is dropped and
// counted); cars never overlap anything, distractors may overlap each other.
SceneInstance sample_scene(const RandomizationConfig& cfg, const SceneLayout& layout,
                           const AssetLibrary& assets, std::uint64_t frame_index);

// Named configurations: full_dr, no_dr_baseline, ablation_T, ablation_LA,
// ablation_G, ablation_D.
RandomizationConfig preset(const std::string& name);

bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& polygon);

}  // namespace scenesmith

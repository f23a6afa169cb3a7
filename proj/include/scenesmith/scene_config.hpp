#pragma once

#include <string>
#include <vector>

#include "scenesmith/annotator.hpp"
#include "scenesmith/layout.hpp"
#include "scenesmith/randomizer.hpp"
#include "scenesmith/renderer.hpp"

namespace scenesmith {

// How a layout plane gets its texture.
struct PlaneTextureSpec {
    enum class Source { Flat, Bank, Extracted };
    Source source = Source::Flat;
    Color color{128, 128, 128};   // Flat
    int bank_index = 0;           // Bank
    int tex_w = 256, tex_h = 256; // Extracted output size
};

struct PlaneConfig {
    PlaneRole role = PlaneRole::Wall;
    std::array<Vec3, 4> corners{};
    PlaneTextureSpec texture;
};

// The one config file the CLI consumes. Unknown keys are rejected at parse
// time — a typo in a randomization range must not silently become a default.
struct SceneConfig {
    std::string scene_name = "scene";
    int width = 1440, height = 810;
    double meters_per_unit = 1.0;

    std::string correspondences_path;  // CSV for `calibrate`
    std::string calibration_path;      // written by `calibrate`, read by `generate`

    enum class IntrinsicsMode { Grid, Fixed };
    IntrinsicsMode intrinsics_mode = IntrinsicsMode::Grid;
    double init_focal = 0;  // grid mode; 0 = 1.2 * max(width, height)
    CameraIntrinsics fixed_intrinsics;

    std::vector<PlaneConfig> planes;
    std::vector<std::string> background_frames;  // 1 = ready background, >=3 = median

    RandomizationConfig randomization;
    std::string preset_name;  // preset the randomization block started from

    RenderSettings render;
    AnnotateOptions annotate;
    std::string output_dir = "out";
};

// Parses and validates; relative paths are resolved against base_dir.
SceneConfig scene_config_from_json(const std::string& text, const std::string& base_dir);
SceneConfig load_scene_config(const std::string& path);

// Canonical serialization used for the dataset config digest and the
// manifest's `randomization` block.
std::string randomization_to_json(const RandomizationConfig& cfg);

}  // namespace scenesmith

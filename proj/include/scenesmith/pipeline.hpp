#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scenesmith/calibration.hpp"
#include "scenesmith/metrics.hpp"
#include "scenesmith/scene_config.hpp"

namespace scenesmith {

// End-to-end drivers behind the CLI subcommands. Everything here is also
// callable from tests, so each driver reports through return values rather
// than process exit codes.

struct CalibrateOptions {
    std::string scene_config_path;
    std::string correspondences_path;  // overrides the config when set
    std::string out_path;              // overrides the config when set
};

// Estimates the camera from 2D-3D correspondences (grid search over focal
// multipliers, or a single PnP solve under fixed intrinsics) and writes the
// calibration document.
CalibrationResult run_calibrate(const CalibrateOptions& opts);

// Proportional intrinsics rescale (fx,cx by width ratio, fy,cy by height
// ratio) so a camera calibrated at photo resolution drives renders at the
// configured dataset resolution. Pose is untouched.
CameraModel rescale_camera(const CameraModel& cam, int width, int height);

// Realizes the configured planes into a renderable layout: flat colors
// become 1x1 textures, bank entries come pre-rendered from the asset
// library, extracted planes are inverse-warped out of the background (median
// of the configured frames) using the calibration-resolution camera.
SceneLayout realize_layout(const SceneConfig& cfg, const AssetLibrary& assets,
                           const CameraModel& calibration_camera);

struct GenerateOptions {
    std::string scene_config_path;
    int count = 0;
    bool seed_given = false;
    std::uint64_t seed = 0;
    std::string split;        // "A:B"; empty = 80:20
    std::string preset_name;  // empty = the config's randomization block
    std::string output_dir;   // overrides the config when set
    int threads = 0;          // 0 = SCENESMITH_THREADS, then hardware count
};

struct GenerateSummary {
    int frames = 0;
    int train_frames = 0;
    int val_frames = 0;
    int annotations = 0;
    int excluded_low_visibility = 0;
    int dropped_objects = 0;
    int reused_frames = 0;  // satisfied from a previous run's cache
    std::string output_dir;
    std::string config_digest;
};

// Renders `count` frames into the dataset layout. Frames are farmed out to a
// worker pool; every artifact is written atomically and the manifest last,
// so an interrupted run is detectable (no manifest) and resumable (frames
// whose cache fragment matches the config digest are skipped).
GenerateSummary run_generate(const GenerateOptions& opts);

struct EvaluateOptions {
    std::string gt_path;    // annotation document
    std::string pred_path;  // detection document
    std::vector<double> iou_thresholds{0.5};
    bool with_pose = false;
    std::string out_path;  // optional JSON report destination
};

// Scores predictions against ground truth; fills `text_report` with the
// human-readable table when non-null.
EvalReport run_evaluate(const EvaluateOptions& opts, std::string* text_report = nullptr);

struct OverlayOptions {
    std::string dataset_dir;
    int frame_id = 0;
    std::string out_path;
};

// Burns boxes, instance tints, and yaw arrows into the frame's RGB image for
// human inspection. Throws UnknownFrame when the frame is not in the dataset.
void run_overlay(const OverlayOptions& opts);

// Worker-pool width: explicit request, else SCENESMITH_THREADS, else the
// hardware concurrency (minimum 1).
int resolve_thread_count(int requested);

// Digest over everything that shapes the rendered frames (config, ratio,
// count, calibration document); the resume cache is keyed on it.
std::string dataset_config_digest(const SceneConfig& cfg, const SplitRatio& ratio, int count,
                                  const std::string& calibration_text);

}  // namespace scenesmith

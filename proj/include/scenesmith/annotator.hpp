#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scenesmith/renderer.hpp"

namespace scenesmith {

struct AnnotationRecord {
    int frame_id = 0;
    int instance_id = 0;
    std::string category;    // "car" or the distractor kind
    PixelBox bbox;           // tight box of the instance-raster pixels
    double yaw_rad = 0;      // [-pi, pi), camera-relative ground yaw
    PoseBin pose_bin;        // quantize_yaw(yaw_rad)
    double visibility = 0;   // visible pixels / solo-render pixels
    bool truncated = false;  // projected hull exits the image (or goes behind)
};

struct FrameAnnotations {
    std::vector<AnnotationRecord> records;
    int excluded_low_visibility = 0;  // objects below min_visibility
};

struct AnnotateOptions {
    double min_visibility = 0.05;
};

// Tight inclusive box of the pixels carrying `id`, as (x, y, w, h) with
// w = maxx - minx + 1. Throws NotPresent when no pixel has the id.
PixelBox bbox_from_mask(const Raster16& instance, int id);

// Ground truth for every placed object: bbox from the instance raster, yaw
// and bin from the scene state, visibility from a solo re-render of the
// object (same camera and settings, no layout). Objects below min_visibility
// are counted, not emitted. Throws InconsistentInputs when the raster holds
// an id the scene does not.
FrameAnnotations annotate_frame(const RenderFrame& frame, const SceneInstance& scene,
                                const AssetLibrary& assets, const CameraModel& cam,
                                const RenderSettings& settings, int frame_id,
                                const AnnotateOptions& opts = {});

enum class Split { Train, Val };

struct SplitRatio {
    int train = 80;
    int val = 20;
};

SplitRatio parse_split_ratio(const std::string& text);  // "80:20"

// Deterministic hash split: frame ids ordered by mix of (master_seed, id),
// first round(N * train/(train+val)) go to train. Throws InvalidRatio unless
// both parts are positive.
std::vector<Split> assign_splits(std::uint64_t master_seed, int frame_count,
                                 const SplitRatio& ratio);

const char* split_name(Split split);  // "train" | "val"

// "img_000042" — shared stem of the per-frame image/mask/depth files.
std::string frame_stem(int frame_id);

struct ImageEntry {
    int id = 0;
    std::string file;  // dataset-relative image path
    int width = 0, height = 0;
};

// The annotations_{train,val}.json document: top-level `images` and
// `annotations` arrays with the exact field names consumers rely on.
std::string annotation_file_json(const std::vector<ImageEntry>& images,
                                 const std::vector<AnnotationRecord>& records);

struct AnnotationFile {
    std::vector<ImageEntry> images;
    std::vector<AnnotationRecord> records;
};

AnnotationFile parse_annotation_file(const std::string& json_text);

}  // namespace scenesmith

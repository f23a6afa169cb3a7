#pragma once

#include <string>
#include <utility>
#include <vector>

#include "scenesmith/annotator.hpp"
#include "scenesmith/geometry.hpp"

namespace scenesmith {

struct Detection {
    int image_id = 0;
    PixelBox bbox;
    double score = 0;  // [0, 1]
    bool has_yaw = false;
    double yaw_rad = 0;
    bool has_bin = false;
    int pose_bin = 0;
};

struct GroundTruthBox {
    int image_id = 0;
    PixelBox bbox;
    double yaw_rad = 0;
    int pose_bin = 0;
};

double iou(const PixelBox& a, const PixelBox& b);

struct EvalCounts {
    int tp = 0, fp = 0, fn = 0;
};

// All-point interpolated AP (area under the precision envelope). Detections
// are ranked by score desc, ties by smaller image_id then input order; each
// greedily takes the highest-IoU unmatched ground truth of its image at
// IoU >= threshold. AP of an empty ground-truth set is 0.
double average_precision(const std::vector<Detection>& dets,
                         const std::vector<GroundTruthBox>& gts, double iou_threshold,
                         EvalCounts* counts = nullptr);

// Wrapped absolute angle difference in degrees, range [0, 180].
double angular_diff(double a_rad, double b_rad);

struct YawPair {
    bool pred_has_yaw = false;
    double pred_yaw = 0;
    int pred_bin = 0;
    double gt_yaw = 0;
};

// Detection->GT matched pairs at the given IoU (default 0.5), same ranking
// and matching rules as average_precision; only pairs where the detection
// carries yaw or bin data are returned.
std::vector<YawPair> match_pose_pairs(const std::vector<Detection>& dets,
                                      const std::vector<GroundTruthBox>& gts,
                                      double iou_threshold = 0.5);

struct PoseMetrics {
    double acc10 = 0;        // fraction with matching 10° bin
    double med_err_deg = 0;  // median angular_diff; even count: mean of the
                             // two middle values
    int pairs = 0;
};

// `bin_centers` forces MedErr onto dequantized bin centers even when
// continuous predictions are available. Throws EmptyInput on no pairs.
PoseMetrics pose_metrics(const std::vector<YawPair>& pairs, bool bin_centers = false);

struct EvalReport {
    std::vector<double> iou_thresholds;
    std::vector<double> ap;          // parallel to iou_thresholds
    std::vector<EvalCounts> counts;  // parallel to iou_thresholds
    bool has_pose = false;
    PoseMetrics pose;
};

EvalReport evaluate_detections(const std::vector<Detection>& dets,
                               const std::vector<GroundTruthBox>& gts,
                               const std::vector<double>& iou_thresholds, bool with_pose,
                               bool pose_bin_centers = false);

struct AblationRow {
    std::string condition;
    double ap50 = 0;
    bool has_pose = false;
    double acc10 = 0;
};

// Expects exactly the five leave-one-out condition labels ("LA + G + D",
// "T + G + D", "T + LA + D", "T + LA + G", "T + LA + D + G"); emits one row
// per condition in that order. Duplicates or absences raise MissingCondition.
std::vector<AblationRow> ablation_report(
    const std::vector<std::pair<std::string, EvalReport>>& reports);

// Condition label of a randomization preset (full_dr -> "T + LA + D + G",
// ablation_T -> "LA + G + D", ...).
std::string ablation_condition_label(const std::string& preset_name);

// Prediction document: annotation shape plus `score`, with yaw_rad/pose_bin
// optional per entry.
std::vector<Detection> parse_detection_file(const std::string& json_text);

std::vector<GroundTruthBox> gt_from_annotations(const AnnotationFile& file);

std::string eval_report_json(const EvalReport& report);

}  // namespace scenesmith

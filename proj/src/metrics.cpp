#include "scenesmith/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>

#include <nlohmann/json.hpp>

#include "scenesmith/errors.hpp"

namespace scenesmith {

using nlohmann::json;

double iou(const PixelBox& a, const PixelBox& b) {
    const double ix = std::max(a.x, b.x);
    const double iy = std::max(a.y, b.y);
    const double ix2 = std::min(a.x + a.w, b.x + b.w);
    const double iy2 = std::min(a.y + a.h, b.y + b.h);
    const double inter = std::max(0.0, ix2 - ix) * std::max(0.0, iy2 - iy);
    const double uni = a.w * a.h + b.w * b.h - inter;
    return uni > 0 ? inter / uni : 0.0;
}

namespace {

// Rank detections by (score desc, image_id asc, input order asc).
std::vector<std::size_t> ranked_order(const std::vector<Detection>& dets) {
    std::vector<std::size_t> order(dets.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&dets](std::size_t a, std::size_t b) {
        if (dets[a].score != dets[b].score) return dets[a].score > dets[b].score;
        return dets[a].image_id < dets[b].image_id;
    });
    return order;
}

// Greedy matching shared by AP and the pose pairing: for each ranked
// detection, the index of its matched GT or -1.
std::vector<int> greedy_match(const std::vector<Detection>& dets,
                              const std::vector<std::size_t>& order,
                              const std::vector<GroundTruthBox>& gts, double iou_threshold) {
    std::map<int, std::vector<std::size_t>> gt_by_image;
    for (std::size_t g = 0; g < gts.size(); ++g) gt_by_image[gts[g].image_id].push_back(g);
    std::vector<bool> taken(gts.size(), false);
    std::vector<int> match(dets.size(), -1);
    for (const std::size_t d : order) {
        const auto it = gt_by_image.find(dets[d].image_id);
        if (it == gt_by_image.end()) continue;
        double best_iou = iou_threshold;
        int best = -1;
        for (const std::size_t g : it->second) {
            if (taken[g]) continue;
            const double v = iou(dets[d].bbox, gts[g].bbox);
            if (v >= best_iou && (best < 0 || v > best_iou)) {
                best_iou = v;
                best = static_cast<int>(g);
            }
        }
        if (best >= 0) {
            taken[static_cast<std::size_t>(best)] = true;
            match[d] = best;
        }
    }
    return match;
}

}  // namespace

double average_precision(const std::vector<Detection>& dets,
                         const std::vector<GroundTruthBox>& gts, double iou_threshold,
                         EvalCounts* counts) {
    const auto order = ranked_order(dets);
    const auto match = greedy_match(dets, order, gts, iou_threshold);

    int tp_total = 0;
    std::vector<double> precision, recall;
    precision.reserve(dets.size());
    recall.reserve(dets.size());
    int tp = 0, fp = 0;
    for (const std::size_t d : order) {
        (match[d] >= 0 ? tp : fp)++;
        precision.push_back(static_cast<double>(tp) / (tp + fp));
        recall.push_back(gts.empty() ? 0.0 : static_cast<double>(tp) / gts.size());
    }
    tp_total = tp;
    if (counts != nullptr)
        *counts = {tp_total, static_cast<int>(dets.size()) - tp_total,
                   static_cast<int>(gts.size()) - tp_total};
    if (gts.empty() || dets.empty()) return 0.0;

    // precision envelope, swept right-to-left
    for (std::size_t i = precision.size() - 1; i > 0; --i)
        precision[i - 1] = std::max(precision[i - 1], precision[i]);
    double ap = 0, prev_recall = 0;
    for (std::size_t i = 0; i < precision.size(); ++i) {
        ap += (recall[i] - prev_recall) * precision[i];
        prev_recall = recall[i];
    }
    return ap;
}

double angular_diff(double a_rad, double b_rad) {
    // wrap puts the difference in [-pi, pi), so |.| is already the minimal
    // arc; the min() with the complement only matters at exactly pi.
    const double w = std::abs(wrap_angle(a_rad - b_rad));
    return std::min(w, 2 * 3.14159265358979323846 - w) * (180.0 / 3.14159265358979323846);
}

std::vector<YawPair> match_pose_pairs(const std::vector<Detection>& dets,
                                      const std::vector<GroundTruthBox>& gts,
                                      double iou_threshold) {
    const auto order = ranked_order(dets);
    const auto match = greedy_match(dets, order, gts, iou_threshold);
    std::vector<YawPair> pairs;
    for (const std::size_t d : order) {
        if (match[d] < 0) continue;
        const Detection& det = dets[d];
        if (!det.has_yaw && !det.has_bin) continue;
        YawPair pair;
        pair.pred_has_yaw = det.has_yaw;
        pair.pred_yaw = det.yaw_rad;
        pair.pred_bin = det.has_bin ? det.pose_bin : quantize_yaw(det.yaw_rad).index;
        pair.gt_yaw = gts[static_cast<std::size_t>(match[d])].yaw_rad;
        pairs.push_back(pair);
    }
    return pairs;
}

PoseMetrics pose_metrics(const std::vector<YawPair>& pairs, bool bin_centers) {
    if (pairs.empty()) throw EmptyInput("no matched pose pairs");
    PoseMetrics out;
    out.pairs = static_cast<int>(pairs.size());
    std::vector<double> errors;
    errors.reserve(pairs.size());
    int correct = 0;
    for (const auto& pair : pairs) {
        const int pred_bin = pair.pred_has_yaw ? quantize_yaw(pair.pred_yaw).index : pair.pred_bin;
        if (pred_bin == quantize_yaw(pair.gt_yaw).index) ++correct;
        const double pred_yaw = (pair.pred_has_yaw && !bin_centers)
                                    ? pair.pred_yaw
                                    : dequantize_yaw({pred_bin});
        errors.push_back(angular_diff(pred_yaw, pair.gt_yaw));
    }
    out.acc10 = static_cast<double>(correct) / static_cast<double>(pairs.size());
    std::sort(errors.begin(), errors.end());
    const std::size_t n = errors.size();
    out.med_err_deg = (n % 2 == 1) ? errors[n / 2] : (errors[n / 2 - 1] + errors[n / 2]) / 2.0;
    return out;
}

EvalReport evaluate_detections(const std::vector<Detection>& dets,
                               const std::vector<GroundTruthBox>& gts,
                               const std::vector<double>& iou_thresholds, bool with_pose,
                               bool pose_bin_centers) {
    EvalReport report;
    report.iou_thresholds = iou_thresholds;
    for (const double thr : iou_thresholds) {
        EvalCounts counts;
        report.ap.push_back(average_precision(dets, gts, thr, &counts));
        report.counts.push_back(counts);
    }
    if (with_pose) {
        const auto pairs = match_pose_pairs(dets, gts);
        report.has_pose = true;
        report.pose = pose_metrics(pairs, pose_bin_centers);
    }
    return report;
}

std::vector<AblationRow> ablation_report(
    const std::vector<std::pair<std::string, EvalReport>>& reports) {
    static const char* kConditions[5] = {"LA + G + D", "T + G + D", "T + LA + D", "T + LA + G",
                                         "T + LA + D + G"};
    std::vector<AblationRow> rows;
    for (const char* condition : kConditions) {
        const EvalReport* found = nullptr;
        for (const auto& [name, report] : reports) {
            if (name != condition) continue;
            if (found != nullptr)
                throw MissingCondition("condition `" + std::string(condition) +
                                       "` appears more than once");
            found = &report;
        }
        if (found == nullptr)
            throw MissingCondition("condition `" + std::string(condition) + "` absent");
        AblationRow row;
        row.condition = condition;
        const auto it = std::find(found->iou_thresholds.begin(), found->iou_thresholds.end(), 0.5);
        if (it == found->iou_thresholds.end())
            throw InvalidParams("ablation report needs AP@0.5 in every condition");
        row.ap50 = found->ap[static_cast<std::size_t>(it - found->iou_thresholds.begin())];
        row.has_pose = found->has_pose;
        row.acc10 = found->has_pose ? found->pose.acc10 : 0.0;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string ablation_condition_label(const std::string& preset_name) {
    if (preset_name == "full_dr") return "T + LA + D + G";
    if (preset_name == "ablation_T") return "LA + G + D";
    if (preset_name == "ablation_LA") return "T + G + D";
    if (preset_name == "ablation_G") return "T + LA + D";
    if (preset_name == "ablation_D") return "T + LA + G";
    throw UnknownPreset("`" + preset_name + "` has no ablation condition label");
}

std::vector<Detection> parse_detection_file(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("prediction file: ") + e.what());
    }
    std::vector<Detection> dets;
    try {
        for (const auto& ann : doc.at("annotations")) {
            Detection det;
            det.image_id = ann.at("image_id").get<int>();
            const auto& box = ann.at("bbox");
            if (!box.is_array() || box.size() != 4)
                throw ParseError("bbox must be a 4-element array");
            det.bbox = {box[0].get<double>(), box[1].get<double>(), box[2].get<double>(),
                        box[3].get<double>()};
            det.score = ann.at("score").get<double>();
            if (det.score < 0 || det.score > 1)
                throw ParseError("score must be in [0, 1], got " + std::to_string(det.score));
            if (ann.contains("yaw_rad")) {
                det.has_yaw = true;
                det.yaw_rad = ann.at("yaw_rad").get<double>();
            }
            if (ann.contains("pose_bin")) {
                det.has_bin = true;
                det.pose_bin = ann.at("pose_bin").get<int>();
                if (det.pose_bin < 0 || det.pose_bin >= kPoseBinCount)
                    throw ParseError("pose_bin must be in [0, 36)");
            }
            dets.push_back(det);
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("prediction file: ") + e.what());
    }
    return dets;
}

std::vector<GroundTruthBox> gt_from_annotations(const AnnotationFile& file) {
    std::vector<GroundTruthBox> gts;
    gts.reserve(file.records.size());
    for (const auto& rec : file.records)
        gts.push_back({rec.frame_id, rec.bbox, rec.yaw_rad, rec.pose_bin.index});
    return gts;
}

std::string eval_report_json(const EvalReport& report) {
    json doc;
    doc["ap"] = json::object();
    doc["counts"] = json::object();
    for (std::size_t i = 0; i < report.iou_thresholds.size(); ++i) {
        char key[32];
        std::snprintf(key, sizeof(key), "%.2f", report.iou_thresholds[i]);
        doc["ap"][key] = report.ap[i];
        doc["counts"][key] = {{"tp", report.counts[i].tp},
                              {"fp", report.counts[i].fp},
                              {"fn", report.counts[i].fn}};
    }
    if (report.has_pose) {
        doc["acc10"] = report.pose.acc10;
        doc["med_err_deg"] = report.pose.med_err_deg;
        doc["matched_pairs"] = report.pose.pairs;
    }
    return doc.dump(2) + "\n";
}

}  // namespace scenesmith

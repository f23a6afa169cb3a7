#include "scenesmith/annotator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>

#include <nlohmann/json.hpp>

#include "scenesmith/errors.hpp"
#include "scenesmith/rng.hpp"

namespace scenesmith {

using nlohmann::json;

PixelBox bbox_from_mask(const Raster16& instance, int id) {
    if (id < 1) throw InvalidParams("instance ids start at 1");
    int minx = instance.width, maxx = -1, miny = instance.height, maxy = -1;
    for (int y = 0; y < instance.height; ++y)
        for (int x = 0; x < instance.width; ++x)
            if (instance.at(x, y) == id) {
                minx = std::min(minx, x);
                maxx = std::max(maxx, x);
                miny = std::min(miny, y);
                maxy = std::max(maxy, y);
            }
    if (maxx < 0) throw NotPresent("id " + std::to_string(id) + " not present in mask");
    return {static_cast<double>(minx), static_cast<double>(miny),
            static_cast<double>(maxx - minx + 1), static_cast<double>(maxy - miny + 1)};
}

FrameAnnotations annotate_frame(const RenderFrame& frame, const SceneInstance& scene,
                                const AssetLibrary& assets, const CameraModel& cam,
                                const RenderSettings& settings, int frame_id,
                                const AnnotateOptions& opts) {
    // Histogram the instance raster once; also validates it against the scene.
    std::map<std::uint16_t, long> pixel_count;
    for (const std::uint16_t id : frame.instance.data)
        if (id != 0) ++pixel_count[id];
    for (const auto& [id, count] : pixel_count) {
        const bool known = std::any_of(scene.objects.begin(), scene.objects.end(),
                                       [id](const PlacedObject& o) { return o.instance_id == id; });
        if (!known)
            throw InconsistentInputs("instance id " + std::to_string(id) +
                                     " in raster but not in scene");
    }

    FrameAnnotations out;
    for (const auto& obj : scene.objects) {
        // Solo pass: the object with nothing else in the world.
        const Raster16 solo = render_object_mask(obj, assets, cam, settings);
        long solo_count = 0;
        for (const std::uint16_t id : solo.data) solo_count += (id != 0);

        const auto it = pixel_count.find(obj.instance_id);
        const long visible = it == pixel_count.end() ? 0 : it->second;
        const double visibility =
            solo_count > 0 ? static_cast<double>(visible) / static_cast<double>(solo_count) : 0.0;
        if (visibility < opts.min_visibility) {
            ++out.excluded_low_visibility;
            continue;
        }

        AnnotationRecord rec;
        rec.frame_id = frame_id;
        rec.instance_id = obj.instance_id;
        rec.category = obj.category;
        rec.bbox = bbox_from_mask(frame.instance, obj.instance_id);
        rec.yaw_rad = yaw_in_camera(Rotation::about_z(obj.yaw), cam);
        rec.pose_bin = quantize_yaw(rec.yaw_rad);
        rec.visibility = visibility;
        rec.truncated = false;
        for (const Vec3& v : transformed_vertices(obj, assets)) {
            const Vec3 pc = cam.pose.rotation.apply(v) + cam.pose.translation;
            if (pc.z <= 1e-9) {
                rec.truncated = true;
                break;
            }
            const double u = cam.intrinsics.fx * pc.x / pc.z + cam.intrinsics.cx;
            const double w = cam.intrinsics.fy * pc.y / pc.z + cam.intrinsics.cy;
            if (u < 0 || u > settings.width || w < 0 || w > settings.height) {
                rec.truncated = true;
                break;
            }
        }
        out.records.push_back(std::move(rec));
    }
    return out;
}

SplitRatio parse_split_ratio(const std::string& text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos)
        throw ParseError("split ratio must look like `80:20`, got `" + text + "`");
    try {
        std::size_t used_a = 0, used_b = 0;
        const int a = std::stoi(text.substr(0, colon), &used_a);
        const int b = std::stoi(text.substr(colon + 1), &used_b);
        if (used_a != colon || used_b != text.size() - colon - 1)
            throw std::invalid_argument(text);
        return {a, b};
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("split ratio must look like `80:20`, got `" + text + "`");
    }
}

std::vector<Split> assign_splits(std::uint64_t master_seed, int frame_count,
                                 const SplitRatio& ratio) {
    if (ratio.train <= 0 || ratio.val <= 0)
        throw InvalidRatio("got " + std::to_string(ratio.train) + ":" +
                           std::to_string(ratio.val));
    if (frame_count < 0) throw InvalidParams("negative frame count");

    // Order frames by a seed-keyed hash (ties impossible modulo a 64-bit
    // collision, broken by id anyway), then cut at the rounded train share.
    std::vector<int> order(static_cast<std::size_t>(frame_count));
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::uint64_t> key(order.size());
    for (std::size_t i = 0; i < key.size(); ++i)
        key[i] = mix64(master_seed ^ mix64(static_cast<std::uint64_t>(i) + 0x51ED270B4A92Bull));
    std::sort(order.begin(), order.end(), [&key](int a, int b) {
        return key[static_cast<std::size_t>(a)] != key[static_cast<std::size_t>(b)]
                   ? key[static_cast<std::size_t>(a)] < key[static_cast<std::size_t>(b)]
                   : a < b;
    });
    const long train_n = std::lround(static_cast<double>(frame_count) * ratio.train /
                                     (ratio.train + ratio.val));
    std::vector<Split> splits(static_cast<std::size_t>(frame_count), Split::Val);
    for (long i = 0; i < train_n; ++i) splits[static_cast<std::size_t>(order[i])] = Split::Train;
    return splits;
}

const char* split_name(Split split) { return split == Split::Train ? "train" : "val"; }

std::string frame_stem(int frame_id) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "img_%06d", frame_id);
    return buf;
}

std::string annotation_file_json(const std::vector<ImageEntry>& images,
                                 const std::vector<AnnotationRecord>& records) {
    json doc;
    doc["images"] = json::array();
    for (const auto& img : images)
        doc["images"].push_back(
            {{"id", img.id}, {"file", img.file}, {"width", img.width}, {"height", img.height}});
    doc["annotations"] = json::array();
    for (const auto& rec : records)
        doc["annotations"].push_back({{"image_id", rec.frame_id},
                                      {"instance_id", rec.instance_id},
                                      {"category", rec.category},
                                      {"bbox", {rec.bbox.x, rec.bbox.y, rec.bbox.w, rec.bbox.h}},
                                      {"yaw_rad", rec.yaw_rad},
                                      {"pose_bin", rec.pose_bin.index},
                                      {"visibility", rec.visibility},
                                      {"truncated", rec.truncated}});
    return doc.dump(2) + "\n";
}

AnnotationFile parse_annotation_file(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("annotation file: ") + e.what());
    }
    AnnotationFile out;
    try {
        for (const auto& img : doc.at("images")) {
            ImageEntry entry;
            entry.id = img.at("id").get<int>();
            entry.file = img.at("file").get<std::string>();
            entry.width = img.at("width").get<int>();
            entry.height = img.at("height").get<int>();
            out.images.push_back(std::move(entry));
        }
        for (const auto& ann : doc.at("annotations")) {
            AnnotationRecord rec;
            rec.frame_id = ann.at("image_id").get<int>();
            rec.instance_id = ann.at("instance_id").get<int>();
            rec.category = ann.at("category").get<std::string>();
            const auto& box = ann.at("bbox");
            if (!box.is_array() || box.size() != 4)
                throw ParseError("bbox must be a 4-element array");
            rec.bbox = {box[0].get<double>(), box[1].get<double>(), box[2].get<double>(),
                        box[3].get<double>()};
            rec.yaw_rad = ann.at("yaw_rad").get<double>();
            rec.pose_bin.index = ann.at("pose_bin").get<int>();
            rec.visibility = ann.at("visibility").get<double>();
            rec.truncated = ann.at("truncated").get<bool>();
            out.records.push_back(std::move(rec));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("annotation file: ") + e.what());
    }
    return out;
}

}  // namespace scenesmith

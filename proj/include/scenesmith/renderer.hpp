#pragma once

#include "scenesmith/assets.hpp"
#include "scenesmith/geometry.hpp"
#include "scenesmith/layout.hpp"
#include "scenesmith/randomizer.hpp"
#include "scenesmith/raster.hpp"

namespace scenesmith {

struct RenderSettings {
    int width = 640, height = 360;
    int samples_per_pixel = 1;  // 1 or a perfect square n² (stratified grid)
    bool shadows = true;
    double ambient = 0.15;
};

struct RenderFrame {
    Raster8 rgb;        // shaded + photometric jitter, 8-bit
    Raster16 instance;  // pixel-center nearest hit; 0 = background layout
    RasterF depth;      // pixel-center camera-ray distance; +inf = no hit
};

// Deterministic Lambertian ray trace of one sampled scene. Shading per hit:
// albedo × (ambient + Σ luminosity·max(0, n·l)·shadow_visibility) with
// two-sided normals; the effective ambient term is the maximum of
// settings.ambient and every light's ambient floor. Instance and depth are
// always taken from the pixel-center ray, independent of spp and of the
// photometric jitter (contrast/brightness) applied to RGB only.
RenderFrame render(const SceneInstance& scene, const SceneLayout& layout,
                   const AssetLibrary& assets, const CameraModel& cam,
                   const RenderSettings& settings);

// Per-channel v' = clamp((v/255 − 0.5)·contrast + 0.5 + brightness)·255,
// rounded half-to-even. Throws InvalidParams for contrast <= 0.
Raster8 apply_photometric_jitter(const Raster8& rgb, double contrast, double brightness);

// The object rendered alone (no layout, no other objects): pixel-center
// instance raster used by the annotator's visibility ratio.
Raster16 render_object_mask(const PlacedObject& obj, const AssetLibrary& assets,
                            const CameraModel& cam, const RenderSettings& settings);

// World-space triangle positions of an object's transformed mesh; the
// annotator projects these for truncation and hull-containment checks.
std::vector<Vec3> transformed_vertices(const PlacedObject& obj, const AssetLibrary& assets);

}  // namespace scenesmith

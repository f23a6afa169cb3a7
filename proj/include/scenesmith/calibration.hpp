#pragma once

#include <array>
#include <string>
#include <vector>

#include "scenesmith/geometry.hpp"
#include "scenesmith/raster.hpp"

namespace scenesmith {

struct Correspondence2D3D {
    Vec2 pixel;   // observed image point
    Vec3 point;   // world point, scene units
};

// 3x3 projective map, row-major, normalized so h33 = 1 when |h33| > 1e-9,
// otherwise to unit Frobenius norm.
struct Homography {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    Vec2 apply(const Vec2& p) const;
    void normalize();
};

struct CalibrationResult {
    CameraModel camera;
    double rms_reprojection_px = 0;
    std::vector<double> per_point_residuals;  // pixels, one per correspondence
};

struct PlanarPair {
    Vec2 src;
    Vec2 dst;
};

// Normalized DLT. H maps src -> dst. Reports the max transfer error over the
// inputs through the optional out parameter.
Homography estimate_homography(const std::vector<PlanarPair>& pairs,
                               double* max_transfer_error = nullptr);

struct PnpOptions {
    int max_iterations = 200;
    double cost_tolerance = 1e-10;      // relative cost decrease
    double gradient_tolerance = 1e-10;  // infinity norm
};

// Pose from 2D-3D correspondences with known intrinsics. Coplanar inputs
// (plane-fit residual < 1e-6 of extent) initialize from a homography
// decomposition, general position from a DLT of the projection matrix; both
// are refined by Levenberg-Marquardt on pixel reprojection error.
CameraPose solve_pnp(const std::vector<Correspondence2D3D>& corr,
                     const CameraIntrinsics& intrinsics, const PnpOptions& opts = {});

double rms_reprojection(const std::vector<Correspondence2D3D>& corr, const CameraModel& cam,
                        std::vector<double>* per_point = nullptr);

std::vector<double> default_focal_grid();  // 31 multipliers, log-spaced in [0.5, 2]

struct GridSearchOptions {
    std::vector<double> focal_multipliers = default_focal_grid();
    bool fix_principal_to_center = true;
    double meters_per_unit = 1.0;
};

// Runs solve_pnp per focal multiplier and keeps the lowest-rms cell; ties go
// to the multiplier closest to 1.
CalibrationResult grid_search_intrinsics(const std::vector<Correspondence2D3D>& corr,
                                         const CameraIntrinsics& init,
                                         const GridSearchOptions& opts = {});

// Per-pixel, per-channel temporal median over >= 3 equally sized frames
// (even count: lower median).
Raster8 extract_background(const std::vector<Raster8>& frames);

// Inverse-warps the quad spanned by four world corners into a tex_w x tex_h
// texture using the homography texture-rect -> projected-corner pixels.
// Corner k maps to texture corner {(0,0),(W,0),(W,H),(0,H)}[k]. Samples are
// bilinear, clamped to the background edge.
Raster8 extract_plane_texture(const Raster8& background,
                              const std::array<Vec3, 4>& plane_corners_world,
                              const CameraModel& cam, int tex_w, int tex_h);

// Correspondence CSV: one `u,v,X,Y,Z` line per point, no header.
std::vector<Correspondence2D3D> parse_correspondence_csv(const std::string& text);
std::vector<Correspondence2D3D> load_correspondence_csv(const std::string& path);

// Calibration document (JSON keys fx, fy, cx, cy, width, height, R, t,
// meters_per_unit, rms_px).
std::string calibration_to_json(const CalibrationResult& result);
CalibrationResult calibration_from_json(const std::string& text);

}  // namespace scenesmith

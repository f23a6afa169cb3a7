#include "scenesmith/geometry.hpp"

#include <algorithm>

#include "scenesmith/errors.hpp"

namespace scenesmith {

Rotation Rotation::from_axis_angle(const Vec3& axis, double angle) {
    const Vec3 k = normalized(axis);
    const double c = std::cos(angle), s = std::sin(angle), ic = 1.0 - c;
    Rotation r;
    r.m = {c + k.x * k.x * ic,       k.x * k.y * ic - k.z * s,  k.x * k.z * ic + k.y * s,
           k.y * k.x * ic + k.z * s, c + k.y * k.y * ic,        k.y * k.z * ic - k.x * s,
           k.z * k.x * ic - k.y * s, k.z * k.y * ic + k.x * s,  c + k.z * k.z * ic};
    return r;
}

Rotation Rotation::about_z(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    Rotation r;
    r.m = {c, -s, 0, s, c, 0, 0, 0, 1};
    return r;
}

Rotation Rotation::transposed() const {
    Rotation r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[3 * i + j] = m[3 * j + i];
    return r;
}

Rotation Rotation::operator*(const Rotation& o) const {
    Rotation r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0;
            for (int k = 0; k < 3; ++k) s += m[3 * i + k] * o.m[3 * k + j];
            r.m[3 * i + j] = s;
        }
    return r;
}

double Rotation::det() const {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
}

bool Rotation::is_orthonormal(double tol) const {
    const Rotation rtr = transposed() * (*this);
    double worst = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            worst = std::max(worst, std::abs(rtr.m[3 * i + j] - (i == j ? 1.0 : 0.0)));
    return worst < tol && std::abs(det() - 1.0) < tol;
}

Vec3 CameraModel::position() const {
    // x_cam = R x + t  =>  center C solves R C + t = 0.
    return pose.rotation.apply_transposed(-pose.translation);
}

Vec3 CameraModel::optical_axis() const {
    return pose.rotation.row(2);
}

double wrap_angle(double a) {
    const double two_pi = 2.0 * M_PI;
    double w = a - two_pi * std::floor((a + M_PI) / two_pi);
    // floor rounding can land exactly on +pi for inputs just below a seam
    if (w >= M_PI) w -= two_pi;
    if (w < -M_PI) w += two_pi;
    return w;
}

Vec2 project(const Vec3& p, const CameraModel& cam) {
    const Vec3 pc = cam.pose.rotation.apply(p) + cam.pose.translation;
    if (pc.z <= 1e-9) throw PointBehindCamera();
    const auto& k = cam.intrinsics;
    return {k.fx * (pc.x / pc.z) + k.cx, k.fy * (pc.y / pc.z) + k.cy};
}

Vec3 unproject(const Vec2& pixel, double depth, const CameraModel& cam) {
    const auto& k = cam.intrinsics;
    const Vec3 pc{(pixel.x - k.cx) / k.fx * depth, (pixel.y - k.cy) / k.fy * depth, depth};
    return cam.pose.rotation.apply_transposed(pc - cam.pose.translation);
}

namespace {

double ground_azimuth(const Vec3& dir) {
    const double n = std::hypot(dir.x, dir.y);
    if (n < 1e-6) throw DegenerateAzimuth();
    return std::atan2(dir.y, dir.x);
}

}  // namespace

double yaw_in_camera(const Rotation& object_rotation, const CameraModel& cam) {
    const Vec3 forward_obj = object_rotation.apply({1, 0, 0});
    const Vec3 forward_cam = cam.optical_axis();
    return wrap_angle(ground_azimuth(forward_obj) - ground_azimuth(forward_cam));
}

PoseBin quantize_yaw(double yaw) {
    const double bin_width = 2.0 * M_PI / kPoseBinCount;
    int idx = static_cast<int>(std::floor((wrap_angle(yaw) + M_PI) / bin_width));
    idx = std::clamp(idx, 0, kPoseBinCount - 1);
    return {idx};
}

double dequantize_yaw(PoseBin bin) {
    const double bin_width = 2.0 * M_PI / kPoseBinCount;
    return -M_PI + (bin.index + 0.5) * bin_width;
}

CameraPose look_at(const Vec3& eye, const Vec3& target) {
    const Vec3 forward = normalized(target - eye);
    Vec3 right = cross(forward, Vec3{0, 0, 1});
    const double rn = norm(right);
    if (rn < 1e-9) throw DegenerateAzimuth("look_at: viewing direction parallel to world up");
    right = right / rn;
    const Vec3 down = cross(forward, right);
    CameraPose pose;
    pose.rotation.m = {right.x,   right.y,   right.z,
                       down.x,    down.y,    down.z,
                       forward.x, forward.y, forward.z};
    pose.translation = -pose.rotation.apply(eye);
    return pose;
}

CameraModel jitter_camera(const CameraModel& cam, double d_azimuth, double d_elevation) {
    CameraModel out = cam;
    const Vec3 center = cam.position();
    Rotation r = cam.pose.rotation;
    if (d_azimuth != 0.0)
        r = r * Rotation::from_axis_angle({0, 0, 1}, d_azimuth).transposed();
    if (d_elevation != 0.0) {
        const Vec3 right = r.row(0);
        r = r * Rotation::from_axis_angle(right, d_elevation).transposed();
    }
    out.pose.rotation = r;
    out.pose.translation = -r.apply(center);
    return out;
}

}  // namespace scenesmith

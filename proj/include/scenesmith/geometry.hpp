#pragma once

#include <array>
#include <cmath>

namespace scenesmith {

// World convention: right-handed, +Z up, ground plane z = 0.
// Camera frame: x right, y down, z forward (looks along its +Z).

struct Vec2 {
    double x = 0.0, y = 0.0;
};

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline Vec3 normalized(const Vec3& v) { return v / norm(v); }
inline Vec3 cwise_mul(const Vec3& a, const Vec3& b) { return {a.x * b.x, a.y * b.y, a.z * b.z}; }

// 3x3 rotation matrix, row-major.
struct Rotation {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    static Rotation identity() { return {}; }
    static Rotation from_axis_angle(const Vec3& axis, double angle);
    static Rotation about_z(double angle);

    double at(int r, int c) const { return m[3 * r + c]; }
    Vec3 apply(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }
    Vec3 apply_transposed(const Vec3& v) const {
        return {m[0] * v.x + m[3] * v.y + m[6] * v.z,
                m[1] * v.x + m[4] * v.y + m[7] * v.z,
                m[2] * v.x + m[5] * v.y + m[8] * v.z};
    }
    Rotation transposed() const;
    Rotation operator*(const Rotation& o) const;
    Vec3 row(int r) const { return {m[3 * r], m[3 * r + 1], m[3 * r + 2]}; }
    double det() const;
    // ||R^T R - I||_inf < tol and det within tol of +1
    bool is_orthonormal(double tol = 1e-9) const;
};

struct CameraIntrinsics {
    double fx = 0, fy = 0;   // focal lengths, pixels
    double cx = 0, cy = 0;   // principal point, pixels
    int width = 0, height = 0;
};

// World-to-camera transform: x_cam = R x_world + t.
struct CameraPose {
    Rotation rotation;
    Vec3 translation;
};

struct CameraModel {
    CameraIntrinsics intrinsics;
    CameraPose pose;
    double meters_per_unit = 1.0;

    Vec3 position() const;       // camera center in world coordinates
    Vec3 optical_axis() const;   // camera +Z expressed in world coordinates
};

struct PixelBox {
    double x = 0, y = 0;  // top-left
    double w = 0, h = 0;
};

inline constexpr int kPoseBinCount = 36;

struct PoseBin {
    int index = 0;  // [0, 36)
};

// Maps any finite angle to [-pi, pi).
double wrap_angle(double a);

// Pinhole projection of a world point; throws PointBehindCamera when the
// camera-frame depth is <= 1e-9.
Vec2 project(const Vec3& p, const CameraModel& cam);

// Inverse of project for a given camera-frame depth (z_cam = depth > 0).
Vec3 unproject(const Vec2& pixel, double depth, const CameraModel& cam);

// Ground-plane yaw of an object relative to the camera viewing direction:
// wrap(azimuth(object +X in world) - azimuth(camera optical axis in world)).
// Throws DegenerateAzimuth when either direction projects onto the ground
// plane with norm < 1e-6.
double yaw_in_camera(const Rotation& object_rotation, const CameraModel& cam);

PoseBin quantize_yaw(double yaw);
double dequantize_yaw(PoseBin bin);  // bin center

// CV-convention look-at: camera at eye, +Z toward target, world up (0,0,1).
CameraPose look_at(const Vec3& eye, const Vec3& target);

// Rotates the camera rig: yaw about world up, then elevation about the
// camera right axis. The camera center stays fixed.
CameraModel jitter_camera(const CameraModel& cam, double d_azimuth, double d_elevation);

}  // namespace scenesmith

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "scenesmith/geometry.hpp"

namespace scenesmith {

struct Aabb {
    Vec3 min{0, 0, 0};
    Vec3 max{0, 0, 0};

    static Aabb empty();
    void expand(const Vec3& p);
    void expand(const Aabb& other);
    Vec3 extent() const { return max - min; }
    Vec3 center() const { return (min + max) * 0.5; }
};

// Indexed triangle mesh with one UV per vertex. Car meshes follow the
// local-forward = +X convention with the footprint resting on z = 0.
struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<Vec2> uvs;                       // same length as vertices
    std::vector<std::array<std::uint32_t, 3>> triangles;
    Aabb bounds;

    void recompute_bounds();
};

// Parses Wavefront-style text: `v`, `vt` and `f` records, `f` entries in the
// `i` or `i/j` form, triangles or fan-triangulated quads/polygons. v/vt index
// pairs are re-indexed into the single-index mesh representation.
TriangleMesh load_mesh(const std::string& wavefront_text);

// Builders for the bundled assets.
TriangleMesh make_box(const Vec3& min, const Vec3& max);
TriangleMesh make_cylinder_y(double radius, double y0, double y1, double cx, double cz,
                             int segments);
// Rectangular frustum between two axis-aligned rectangles at z0 < z1.
TriangleMesh make_box_frustum(double x0b, double x1b, double y0b, double y1b, double x0t,
                              double x1t, double y0t, double y1t, double z0, double z1);
TriangleMesh make_uv_sphere(double radius, const Vec3& center, int stacks, int slices);
TriangleMesh make_cone(double radius, double height, int segments, double tip_radius_fraction = 0.06);
TriangleMesh make_capsule(double radius, double height, int stacks, int slices);

void append_mesh(TriangleMesh& dst, const TriangleMesh& src);

// Planar UVs from the dominant axis of each triangle normal, normalized by
// the mesh bounds. Adequate for randomized texturing.
void assign_box_uvs(TriangleMesh& mesh);

double mesh_surface_area(const TriangleMesh& mesh);

}  // namespace scenesmith

#pragma once

#include <array>
#include <string>
#include <vector>

#include "scenesmith/mesh.hpp"
#include "scenesmith/texture.hpp"

namespace scenesmith {

enum class PlaneRole { Ground, Wall, Ceiling };

const char* plane_role_name(PlaneRole role);
PlaneRole plane_role_from_name(const std::string& name);

// One textured quad of the box-shaped background. Corners are listed
// counter-clockwise as seen from the scene interior; corner k carries
// texture coordinate {(0,0),(1,0),(1,1),(0,1)}[k].
struct PlaneSpec {
    std::array<Vec3, 4> corners;
    Texture texture;
    PlaneRole role = PlaneRole::Wall;
};

struct SceneLayout {
    std::vector<PlaneSpec> planes;     // validated input, ground first is not required
    TriangleMesh mesh;                 // 2 triangles per plane, quad uv already assigned
    std::vector<int> triangle_plane;   // triangle index -> planes index
    Aabb bounds;                       // union of corners, inflated 1% per axis
    int ground_index = -1;             // index of the unique ground plane

    const PlaneSpec& ground() const { return planes[static_cast<std::size_t>(ground_index)]; }
};

// Validates planarity (1e-6 of quad extent) and convexity, requires exactly
// one ground plane, triangulates each quad, and computes inflated bounds.
SceneLayout build_layout(const std::vector<PlaneSpec>& planes);

}  // namespace scenesmith

#include "scenesmith/layout.hpp"

#include <cmath>

#include "scenesmith/errors.hpp"

namespace scenesmith {

const char* plane_role_name(PlaneRole role) {
    switch (role) {
        case PlaneRole::Ground: return "ground";
        case PlaneRole::Wall: return "wall";
        case PlaneRole::Ceiling: return "ceiling";
    }
    return "wall";
}

PlaneRole plane_role_from_name(const std::string& name) {
    if (name == "ground") return PlaneRole::Ground;
    if (name == "wall") return PlaneRole::Wall;
    if (name == "ceiling") return PlaneRole::Ceiling;
    throw InvalidParams("unknown plane role `" + name + "`");
}

namespace {

void validate_quad(const std::array<Vec3, 4>& c, std::size_t plane_index) {
    // Planarity: distance of the 4th corner from the plane of the other
    // three, relative to the quad extent.
    const Vec3 n = cross(c[1] - c[0], c[2] - c[0]);
    const double n_len = norm(n);
    double extent = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) extent = std::max(extent, norm(c[i] - c[j]));
    if (extent <= 0 || n_len < 1e-12 * extent * extent)
        throw NonPlanarQuad("plane " + std::to_string(plane_index) + " is degenerate");
    const double deviation = std::abs(dot(n / n_len, c[3] - c[0]));
    if (deviation > 1e-6 * extent)
        throw NonPlanarQuad("plane " + std::to_string(plane_index) + " corners deviate " +
                            std::to_string(deviation / extent) + " of extent from coplanarity");
    // Convexity: all consecutive edge cross products point the same way.
    const Vec3 unit_n = n / n_len;
    for (int i = 0; i < 4; ++i) {
        const Vec3 e0 = c[(i + 1) % 4] - c[i];
        const Vec3 e1 = c[(i + 2) % 4] - c[(i + 1) % 4];
        if (dot(cross(e0, e1), unit_n) <= 0)
            throw NonPlanarQuad("plane " + std::to_string(plane_index) + " quad is not convex");
    }
}

}  // namespace

SceneLayout build_layout(const std::vector<PlaneSpec>& planes) {
    SceneLayout layout;
    layout.planes = planes;

    for (std::size_t i = 0; i < planes.size(); ++i) {
        validate_quad(planes[i].corners, i);
        if (planes[i].role == PlaneRole::Ground) {
            if (layout.ground_index >= 0)
                throw MissingGround("more than one ground plane (planes " +
                                    std::to_string(layout.ground_index) + " and " +
                                    std::to_string(i) + ")");
            layout.ground_index = static_cast<int>(i);
        }
    }
    if (layout.ground_index < 0) throw MissingGround();
    if (planes.empty() || planes.size() > 6)
        throw InvalidParams("layout needs 1..6 planes, got " + std::to_string(planes.size()));

    static const Vec2 quad_uv[4] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    Aabb raw = Aabb::empty();
    for (std::size_t i = 0; i < planes.size(); ++i) {
        const auto& c = planes[i].corners;
        std::array<std::uint32_t, 4> idx{};
        for (int k = 0; k < 4; ++k) {
            idx[k] = static_cast<std::uint32_t>(layout.mesh.vertices.size());
            layout.mesh.vertices.push_back(c[k]);
            layout.mesh.uvs.push_back(quad_uv[k]);
            raw.expand(c[k]);
        }
        layout.mesh.triangles.push_back({idx[0], idx[1], idx[2]});
        layout.mesh.triangles.push_back({idx[0], idx[2], idx[3]});
        layout.triangle_plane.push_back(static_cast<int>(i));
        layout.triangle_plane.push_back(static_cast<int>(i));
    }
    layout.mesh.recompute_bounds();

    // Bounds inflated 1% of each axis extent (0.5% per side).
    const Vec3 pad = raw.extent() * 0.005;
    layout.bounds = {raw.min - pad, raw.max + pad};
    return layout;
}

}  // namespace scenesmith

#include "scenesmith/assets.hpp"

#include "scenesmith/errors.hpp"

namespace scenesmith {

namespace {

// Wheels: four short cylinders about the Y (width) axis, bottom touching
// z = 0. `axle_x` distances are measured from the body center.
void add_wheels(TriangleMesh& car, double axle_x, double half_track, double radius,
                double width) {
    for (const double sx : {-1.0, 1.0})
        for (const double sy : {-1.0, 1.0}) {
            TriangleMesh wheel = make_cylinder_y(radius, sy * half_track - width / 2,
                                                 sy * half_track + width / 2, sx * axle_x, radius, 12);
            append_mesh(car, wheel);
        }
}

// Shared construction: slab body above a ground clearance, a tapered cabin
// on top, and four wheels. Parameters distinguish the five silhouettes.
TriangleMesh build_car(double length, double width, double height, double clearance,
                       double belt, double cabin_front, double cabin_rear, double cabin_taper) {
    const double hl = length / 2, hw = width / 2;
    TriangleMesh car = make_box({-hl, -hw, clearance}, {hl, hw, belt});
    TriangleMesh cabin = make_box_frustum(cabin_rear, cabin_front, -hw * 0.92, hw * 0.92,
                                          cabin_rear + cabin_taper, cabin_front - cabin_taper,
                                          -hw * 0.8, hw * 0.8, belt, height);
    append_mesh(car, cabin);
    const double wheel_r = clearance + 0.12;
    add_wheels(car, hl * 0.62, hw * 0.82, wheel_r, 0.22);
    car.recompute_bounds();
    return car;
}

}  // namespace

TriangleMesh make_car_sedan() {
    return build_car(4.5, 1.8, 1.45, 0.22, 0.85, 0.9, -1.4, 0.45);
}

TriangleMesh make_car_hatchback() {
    return build_car(4.0, 1.75, 1.5, 0.2, 0.8, 0.7, -1.75, 0.25);
}

TriangleMesh make_car_suv() {
    return build_car(4.7, 1.9, 1.75, 0.28, 1.0, 1.0, -2.1, 0.3);
}

TriangleMesh make_car_pickup() {
    // Cabin sits forward; the rear bed stays at belt height.
    return build_car(5.3, 1.95, 1.85, 0.3, 1.0, 2.1, 0.1, 0.35);
}

TriangleMesh make_car_van() {
    return build_car(5.0, 1.95, 2.1, 0.24, 1.0, 2.2, -2.3, 0.3);
}

const TriangleMesh& AssetLibrary::car_mesh(const std::string& name) const {
    for (const auto& car : cars)
        if (car.name == name) return car.mesh;
    throw NotPresent("car model `" + name + "` not in library");
}

const TriangleMesh& AssetLibrary::distractor_mesh(const std::string& kind) const {
    for (std::size_t i = 0; i < distractor_kinds.size(); ++i)
        if (distractor_kinds[i] == kind) return distractor_meshes[i];
    throw NotPresent("distractor kind `" + kind + "` not in library");
}

int AssetLibrary::car_index(const std::string& name) const {
    for (std::size_t i = 0; i < cars.size(); ++i)
        if (cars[i].name == name) return static_cast<int>(i);
    return -1;
}

int AssetLibrary::palette_index(const std::string& name) const {
    for (std::size_t i = 0; i < palette.size(); ++i)
        if (palette[i].name == name) return static_cast<int>(i);
    return -1;
}

AssetLibrary default_asset_library() {
    AssetLibrary lib;
    lib.cars = {{"sedan", make_car_sedan()},
                {"hatchback", make_car_hatchback()},
                {"suv", make_car_suv()},
                {"pickup", make_car_pickup()},
                {"van", make_car_van()}};
    for (auto& car : lib.cars) assign_box_uvs(car.mesh);

    lib.distractor_kinds = {"cube", "sphere", "cone", "pedestrian"};
    lib.distractor_meshes.push_back(make_box({-0.5, -0.5, 0}, {0.5, 0.5, 1}));
    lib.distractor_meshes.push_back(make_uv_sphere(0.5, {0, 0, 0.5}, 10, 16));
    lib.distractor_meshes.push_back(make_cone(0.5, 1.0, 16));
    lib.distractor_meshes.push_back(make_capsule(0.25, 1.7, 6, 12));
    for (auto& mesh : lib.distractor_meshes) assign_box_uvs(mesh);

    lib.bank = default_texture_bank();
    lib.textures.reserve(lib.bank.size());
    for (const auto& entry : lib.bank) lib.textures.push_back(render_texture(entry));

    lib.palette = {{"white", {240, 240, 240}}, {"black", {25, 25, 25}},
                   {"silver", {192, 192, 192}}, {"gray", {128, 128, 128}},
                   {"red", {180, 30, 30}},      {"blue", {30, 60, 160}},
                   {"brown", {120, 80, 50}}};
    return lib;
}

}  // namespace scenesmith

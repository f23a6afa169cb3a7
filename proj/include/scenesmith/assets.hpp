#pragma once

#include <string>
#include <vector>

#include "scenesmith/mesh.hpp"
#include "scenesmith/texture.hpp"

namespace scenesmith {

struct CarModel {
    std::string name;
    TriangleMesh mesh;  // local +X forward, footprint resting on z = 0
};

struct NamedColor {
    std::string name;
    Color color;
};

// Immutable after construction; shared read-only across render workers.
struct AssetLibrary {
    std::vector<CarModel> cars;                  // >= 5 silhouette classes
    std::vector<std::string> distractor_kinds;   // cube, sphere, cone, pedestrian
    std::vector<TriangleMesh> distractor_meshes; // parallel to distractor_kinds
    std::vector<TextureBankEntry> bank;          // 50 entries
    std::vector<Texture> textures;               // rendered bank, parallel
    std::vector<NamedColor> palette;             // the 7-color flat palette

    const TriangleMesh& car_mesh(const std::string& name) const;
    const TriangleMesh& distractor_mesh(const std::string& kind) const;
    int car_index(const std::string& name) const;      // -1 when absent
    int palette_index(const std::string& name) const;  // -1 when absent
};

// Builds the bundled library: 5 car meshes, 4 distractor meshes, the
// 50-entry texture bank (rendered), and the 7-color palette.
AssetLibrary default_asset_library();

// Individual car builders, exposed for the mesh sanity tests.
TriangleMesh make_car_sedan();
TriangleMesh make_car_hatchback();
TriangleMesh make_car_suv();
TriangleMesh make_car_pickup();
TriangleMesh make_car_van();

}  // namespace scenesmith

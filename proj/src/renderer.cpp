#include "scenesmith/renderer.hpp"

#include <algorithm>
#include <cmath>

#include "scenesmith/errors.hpp"

namespace scenesmith {

namespace {

// ---------------------------------------------------------------- geometry

struct SceneTriangle {
    Vec3 v0, e1, e2;        // v0 plus edge vectors, Möller–Trumbore layout
    Vec2 uv0, uv1, uv2;
    std::uint16_t instance_id = 0;  // 0 = layout
    std::int32_t material = -1;
};

struct FlatMaterial {
    const Raster8* texture = nullptr;  // null = flat color
    AddressMode address = AddressMode::Repeat;
    Color flat;
};

struct Hit {
    double t = std::numeric_limits<double>::infinity();
    double u = 0, v = 0;  // barycentrics of e1/e2
    int triangle = -1;
};

Aabb triangle_bounds(const SceneTriangle& tri) {
    Aabb b = Aabb::empty();
    b.expand(tri.v0);
    b.expand(tri.v0 + tri.e1);
    b.expand(tri.v0 + tri.e2);
    return b;
}

// ---------------------------------------------------------------- BVH

struct BvhNode {
    Aabb bounds;
    int left = -1, right = -1;  // internal nodes
    int first = 0, count = 0;   // leaf when count > 0
};

class Bvh {
  public:
    explicit Bvh(std::vector<SceneTriangle> triangles) : triangles_(std::move(triangles)) {
        if (triangles_.empty()) return;
        std::vector<int> order(triangles_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        nodes_.reserve(2 * triangles_.size());
        build(order, 0, static_cast<int>(order.size()));
        // flatten triangle order so leaves address contiguous ranges
        std::vector<SceneTriangle> sorted;
        sorted.reserve(triangles_.size());
        for (int idx : order_) sorted.push_back(triangles_[static_cast<std::size_t>(idx)]);
        triangles_ = std::move(sorted);
    }

    bool empty() const { return triangles_.empty(); }
    const SceneTriangle& triangle(int i) const { return triangles_[static_cast<std::size_t>(i)]; }

    Hit closest(const Vec3& orig, const Vec3& dir) const {
        Hit hit;
        if (triangles_.empty()) return hit;
        const Vec3 inv{1 / dir.x, 1 / dir.y, 1 / dir.z};
        int stack[64];
        int sp = 0;
        stack[sp++] = 0;
        while (sp > 0) {
            const BvhNode& node = nodes_[static_cast<std::size_t>(stack[--sp])];
            if (!slab(node.bounds, orig, inv, hit.t)) continue;
            if (node.count > 0) {
                for (int i = node.first; i < node.first + node.count; ++i)
                    intersect(i, orig, dir, hit);
            } else {
                stack[sp++] = node.left;
                stack[sp++] = node.right;
            }
        }
        return hit;
    }

    // Any hit with t in (eps, tmax); used for shadow rays.
    bool occluded(const Vec3& orig, const Vec3& dir, double tmax) const {
        if (triangles_.empty()) return false;
        const Vec3 inv{1 / dir.x, 1 / dir.y, 1 / dir.z};
        int stack[64];
        int sp = 0;
        stack[sp++] = 0;
        while (sp > 0) {
            const BvhNode& node = nodes_[static_cast<std::size_t>(stack[--sp])];
            if (!slab(node.bounds, orig, inv, tmax)) continue;
            if (node.count > 0) {
                Hit hit;
                hit.t = tmax;
                for (int i = node.first; i < node.first + node.count; ++i)
                    if (intersect(i, orig, dir, hit)) return true;
            } else {
                stack[sp++] = node.left;
                stack[sp++] = node.right;
            }
        }
        return false;
    }

  private:
    static bool slab(const Aabb& b, const Vec3& orig, const Vec3& inv, double tmax) {
        double t0 = 1e-9, t1 = tmax;
        const double* lo = &b.min.x;
        const double* hi = &b.max.x;
        const double* o = &orig.x;
        const double* iv = &inv.x;
        for (int axis = 0; axis < 3; ++axis) {
            double ta = (lo[axis] - o[axis]) * iv[axis];
            double tb = (hi[axis] - o[axis]) * iv[axis];
            if (ta > tb) std::swap(ta, tb);
            t0 = std::max(t0, ta);
            t1 = std::min(t1, tb);
            if (t0 > t1) return false;
        }
        return true;
    }

    bool intersect(int index, const Vec3& orig, const Vec3& dir, Hit& hit) const {
        const SceneTriangle& tri = triangles_[static_cast<std::size_t>(index)];
        const Vec3 pvec = cross(dir, tri.e2);
        const double det = dot(tri.e1, pvec);
        if (std::abs(det) < 1e-12) return false;  // parallel or degenerate
        const double inv_det = 1.0 / det;
        const Vec3 tvec = orig - tri.v0;
        const double u = dot(tvec, pvec) * inv_det;
        if (u < 0 || u > 1) return false;
        const Vec3 qvec = cross(tvec, tri.e1);
        const double v = dot(dir, qvec) * inv_det;
        if (v < 0 || u + v > 1) return false;
        const double t = dot(tri.e2, qvec) * inv_det;
        if (t <= 1e-9 || t >= hit.t) return false;
        hit.t = t;
        hit.u = u;
        hit.v = v;
        hit.triangle = index;
        return true;
    }

    void build(std::vector<int>& order, int first, int count) {
        BvhNode node;
        Aabb centroid_bounds = Aabb::empty();
        node.bounds = Aabb::empty();
        for (int i = first; i < first + count; ++i) {
            const Aabb tb = triangle_bounds(triangles_[static_cast<std::size_t>(order[i])]);
            node.bounds.expand(tb);
            centroid_bounds.expand(tb.center());
        }
        const int self = static_cast<int>(nodes_.size());
        nodes_.push_back(node);
        const Vec3 ext = centroid_bounds.extent();
        if (count <= 4 || (ext.x <= 0 && ext.y <= 0 && ext.z <= 0)) {
            nodes_[static_cast<std::size_t>(self)].first = static_cast<int>(order_.size());
            nodes_[static_cast<std::size_t>(self)].count = count;
            for (int i = first; i < first + count; ++i) order_.push_back(order[i]);
            return;
        }
        // median split on the longest centroid axis
        const int axis = (ext.x >= ext.y && ext.x >= ext.z) ? 0 : (ext.y >= ext.z ? 1 : 2);
        const int mid = first + count / 2;
        std::nth_element(order.begin() + first, order.begin() + mid,
                         order.begin() + first + count, [this, axis](int a, int b) {
                             const Vec3 ca =
                                 triangle_bounds(triangles_[static_cast<std::size_t>(a)]).center();
                             const Vec3 cb =
                                 triangle_bounds(triangles_[static_cast<std::size_t>(b)]).center();
                             const double va = axis == 0 ? ca.x : (axis == 1 ? ca.y : ca.z);
                             const double vb = axis == 0 ? cb.x : (axis == 1 ? cb.y : cb.z);
                             return va < vb || (va == vb && a < b);
                         });
        nodes_[static_cast<std::size_t>(self)].left = static_cast<int>(nodes_.size());
        build(order, first, mid - first);
        nodes_[static_cast<std::size_t>(self)].right = static_cast<int>(nodes_.size());
        build(order, mid, first + count - mid);
    }

    std::vector<SceneTriangle> triangles_;
    std::vector<BvhNode> nodes_;
    std::vector<int> order_;  // build-time permutation, leaf-contiguous
};

// ---------------------------------------------------------------- scene prep

struct RenderScene {
    Bvh bvh;
    std::vector<FlatMaterial> materials;
    double ambient = 0.15;

    RenderScene(std::vector<SceneTriangle> tris, std::vector<FlatMaterial> mats, double amb)
        : bvh(std::move(tris)), materials(std::move(mats)), ambient(amb) {}
};

void append_object_triangles(const PlacedObject& obj, const TriangleMesh& mesh, int material,
                             std::vector<SceneTriangle>& out) {
    const Rotation rot = Rotation::about_z(obj.yaw);
    auto transform = [&](const Vec3& v) {
        return rot.apply(cwise_mul(v, obj.scale)) + obj.position;
    };
    for (const auto& tri : mesh.triangles) {
        SceneTriangle st;
        const Vec3 a = transform(mesh.vertices[tri[0]]);
        const Vec3 b = transform(mesh.vertices[tri[1]]);
        const Vec3 c = transform(mesh.vertices[tri[2]]);
        st.v0 = a;
        st.e1 = b - a;
        st.e2 = c - a;
        st.uv0 = mesh.uvs[tri[0]];
        st.uv1 = mesh.uvs[tri[1]];
        st.uv2 = mesh.uvs[tri[2]];
        st.instance_id = obj.instance_id;
        st.material = material;
        out.push_back(st);
    }
}

const TriangleMesh& object_mesh(const PlacedObject& obj, const AssetLibrary& assets) {
    return obj.is_car ? assets.car_mesh(obj.asset) : assets.distractor_mesh(obj.asset);
}

FlatMaterial material_for(const MaterialRef& ref, const AssetLibrary& assets) {
    FlatMaterial mat;
    if (ref.kind == MaterialRef::Kind::BankTexture) {
        mat.texture = &assets.textures[static_cast<std::size_t>(ref.index)].image;
        mat.address = assets.textures[static_cast<std::size_t>(ref.index)].address;
    } else {
        mat.flat = ref.color;
    }
    return mat;
}

RenderScene build_render_scene(const SceneInstance& scene, const SceneLayout* layout,
                               const AssetLibrary& assets, double settings_ambient) {
    std::vector<SceneTriangle> tris;
    std::vector<FlatMaterial> mats;
    if (layout != nullptr) {
        // one material per plane, triangles tagged instance 0
        for (const auto& plane : layout->planes) {
            FlatMaterial mat;
            mat.texture = &plane.texture.image;
            mat.address = plane.texture.address;
            mats.push_back(mat);
        }
        for (std::size_t t = 0; t < layout->mesh.triangles.size(); ++t) {
            const auto& tri = layout->mesh.triangles[t];
            SceneTriangle st;
            const Vec3 a = layout->mesh.vertices[tri[0]];
            st.v0 = a;
            st.e1 = layout->mesh.vertices[tri[1]] - a;
            st.e2 = layout->mesh.vertices[tri[2]] - a;
            st.uv0 = layout->mesh.uvs[tri[0]];
            st.uv1 = layout->mesh.uvs[tri[1]];
            st.uv2 = layout->mesh.uvs[tri[2]];
            st.instance_id = 0;
            st.material = layout->triangle_plane[t];
            tris.push_back(st);
        }
    }
    for (const auto& obj : scene.objects) {
        mats.push_back(material_for(obj.material, assets));
        append_object_triangles(obj, object_mesh(obj, assets), static_cast<int>(mats.size() - 1),
                                tris);
    }
    double ambient = settings_ambient;
    for (const auto& light : scene.lights) ambient = std::max(ambient, light.ambient);
    return RenderScene(std::move(tris), std::move(mats), ambient);
}

// ---------------------------------------------------------------- shading

struct LinearRgb {
    double r = 0, g = 0, b = 0;
};

double wrap_or_clamp(double x, int n, AddressMode mode) {
    if (mode == AddressMode::Repeat) {
        x = std::fmod(x, n);
        if (x < 0) x += n;
        return x;
    }
    return std::clamp(x, 0.0, static_cast<double>(n) - 1e-9);
}

LinearRgb sample_texture(const Raster8& img, AddressMode mode, const Vec2& uv) {
    // pixel-center convention: uv (0,0) is the center of pixel (−0.5, −0.5)
    const double px = wrap_or_clamp(uv.x, 1, mode) * img.width - 0.5;
    const double py = wrap_or_clamp(uv.y, 1, mode) * img.height - 0.5;
    const double fx = std::floor(px), fy = std::floor(py);
    const double tx = px - fx, ty = py - fy;
    auto fetch = [&](double ix, double iy, int c) {
        int x, y;
        if (mode == AddressMode::Repeat) {
            x = static_cast<int>(ix - std::floor(ix / img.width) * img.width);
            y = static_cast<int>(iy - std::floor(iy / img.height) * img.height);
        } else {
            x = static_cast<int>(std::clamp(ix, 0.0, img.width - 1.0));
            y = static_cast<int>(std::clamp(iy, 0.0, img.height - 1.0));
        }
        return img.at(x, y, c) / 255.0;
    };
    LinearRgb out;
    double* ch[3] = {&out.r, &out.g, &out.b};
    for (int c = 0; c < 3; ++c)
        *ch[c] = (fetch(fx, fy, c) * (1 - tx) + fetch(fx + 1, fy, c) * tx) * (1 - ty) +
                 (fetch(fx, fy + 1, c) * (1 - tx) + fetch(fx + 1, fy + 1, c) * tx) * ty;
    return out;
}

LinearRgb albedo_at(const RenderScene& rs, const Hit& hit) {
    const SceneTriangle& tri = rs.bvh.triangle(hit.triangle);
    const FlatMaterial& mat = rs.materials[static_cast<std::size_t>(tri.material)];
    if (mat.texture == nullptr)
        return {mat.flat.r / 255.0, mat.flat.g / 255.0, mat.flat.b / 255.0};
    const double w = 1 - hit.u - hit.v;
    const Vec2 uv{w * tri.uv0.x + hit.u * tri.uv1.x + hit.v * tri.uv2.x,
                  w * tri.uv0.y + hit.u * tri.uv1.y + hit.v * tri.uv2.y};
    return sample_texture(*mat.texture, mat.address, uv);
}

LinearRgb shade(const RenderScene& rs, const SceneInstance& scene, const RenderSettings& settings,
                const Vec3& orig, const Vec3& dir, const Hit& hit) {
    const SceneTriangle& tri = rs.bvh.triangle(hit.triangle);
    Vec3 n = cross(tri.e1, tri.e2);
    const double n_len = norm(n);
    if (n_len < 1e-18) return {};
    n = n / n_len;
    if (dot(n, dir) > 0) n = -n;  // two-sided
    const Vec3 p = orig + dir * hit.t;

    double direct = 0;
    for (const auto& light : scene.lights) {
        Vec3 l;
        double tmax;
        if (light.kind == LightSpec::Kind::Directional) {
            l = -light.direction;
            tmax = std::numeric_limits<double>::infinity();
        } else {
            const Vec3 to_light = light.position - p;
            tmax = norm(to_light);
            if (tmax < 1e-12) continue;
            l = to_light / tmax;
        }
        const double lambert = dot(n, l);
        if (lambert <= 0) continue;
        if (settings.shadows && rs.bvh.occluded(p + n * 1e-4, l, tmax)) continue;
        direct += light.luminosity * lambert;
    }

    const LinearRgb albedo = albedo_at(rs, hit);
    const double scale = rs.ambient + direct;
    return {albedo.r * scale, albedo.g * scale, albedo.b * scale};
}

Vec3 pixel_ray_dir(const CameraModel& cam, double u, double v) {
    const Vec3 dir_cam{(u - cam.intrinsics.cx) / cam.intrinsics.fx,
                       (v - cam.intrinsics.cy) / cam.intrinsics.fy, 1.0};
    return normalized(cam.pose.rotation.apply_transposed(dir_cam));
}

int validated_grid(int spp) {
    if (spp < 1) throw InvalidParams("samples_per_pixel must be >= 1");
    const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(spp))));
    if (n * n != spp) throw InvalidParams("samples_per_pixel must be a perfect square");
    return n;
}

std::uint8_t quantize_channel(double v, double contrast, double brightness) {
    const double jittered = std::clamp((v - 0.5) * contrast + 0.5 + brightness, 0.0, 1.0);
    return static_cast<std::uint8_t>(std::nearbyint(jittered * 255.0));  // ties to even
}

}  // namespace

std::vector<Vec3> transformed_vertices(const PlacedObject& obj, const AssetLibrary& assets) {
    const TriangleMesh& mesh = object_mesh(obj, assets);
    const Rotation rot = Rotation::about_z(obj.yaw);
    std::vector<Vec3> out;
    out.reserve(mesh.vertices.size());
    for (const auto& v : mesh.vertices)
        out.push_back(rot.apply(cwise_mul(v, obj.scale)) + obj.position);
    return out;
}

RenderFrame render(const SceneInstance& scene, const SceneLayout& layout,
                   const AssetLibrary& assets, const CameraModel& cam,
                   const RenderSettings& settings) {
    if (settings.width < 1 || settings.height < 1)
        throw InvalidParams("render resolution must be >= 1");
    const int grid = validated_grid(settings.samples_per_pixel);
    if (!(settings.ambient >= 0)) throw InvalidParams("ambient must be >= 0");

    const RenderScene rs = build_render_scene(scene, &layout, assets, settings.ambient);
    const Vec3 origin = cam.position();

    RenderFrame frame;
    frame.rgb = Raster8(settings.width, settings.height, 3);
    frame.instance = Raster16(settings.width, settings.height, 0);
    frame.depth = RasterF(settings.width, settings.height);

    for (int y = 0; y < settings.height; ++y)
        for (int x = 0; x < settings.width; ++x) {
            // ground truth: pixel-center ray, independent of spp
            const Vec3 center_dir = pixel_ray_dir(cam, x + 0.5, y + 0.5);
            const Hit center_hit = rs.bvh.closest(origin, center_dir);
            if (center_hit.triangle >= 0) {
                frame.instance.at(x, y) = rs.bvh.triangle(center_hit.triangle).instance_id;
                frame.depth.at(x, y) = static_cast<float>(center_hit.t);
            }

            LinearRgb sum;
            if (grid == 1) {
                if (center_hit.triangle >= 0)
                    sum = shade(rs, scene, settings, origin, center_dir, center_hit);
            } else {
                for (int sy = 0; sy < grid; ++sy)
                    for (int sx = 0; sx < grid; ++sx) {
                        const Vec3 dir = pixel_ray_dir(cam, x + (sx + 0.5) / grid,
                                                       y + (sy + 0.5) / grid);
                        const Hit hit = rs.bvh.closest(origin, dir);
                        if (hit.triangle < 0) continue;
                        const LinearRgb s = shade(rs, scene, settings, origin, dir, hit);
                        sum.r += s.r;
                        sum.g += s.g;
                        sum.b += s.b;
                    }
                const double inv = 1.0 / (grid * grid);
                sum = {sum.r * inv, sum.g * inv, sum.b * inv};
            }
            frame.rgb.at(x, y, 0) = quantize_channel(sum.r, scene.contrast, scene.brightness);
            frame.rgb.at(x, y, 1) = quantize_channel(sum.g, scene.contrast, scene.brightness);
            frame.rgb.at(x, y, 2) = quantize_channel(sum.b, scene.contrast, scene.brightness);
        }
    return frame;
}

Raster8 apply_photometric_jitter(const Raster8& rgb, double contrast, double brightness) {
    if (!(contrast > 0)) throw InvalidParams("contrast must be > 0");
    Raster8 out = rgb;
    for (auto& v : out.data) {
        // algebraically (v/255 − 0.5)·c + 0.5 + b, kept on the 0..255 scale so
        // exact-half ties stay exact before the round-half-to-even step
        const double mapped =
            std::clamp((v - 127.5) * contrast + 127.5 + brightness * 255.0, 0.0, 255.0);
        v = static_cast<std::uint8_t>(std::nearbyint(mapped));
    }
    return out;
}

Raster16 render_object_mask(const PlacedObject& obj, const AssetLibrary& assets,
                            const CameraModel& cam, const RenderSettings& settings) {
    SceneInstance solo;
    solo.objects.push_back(obj);
    const RenderScene rs = build_render_scene(solo, nullptr, assets, settings.ambient);
    const Vec3 origin = cam.position();

    Raster16 mask(settings.width, settings.height, 0);

    // Restrict tracing to the projected-vertex bounding box when the whole
    // object is in front of the camera; projection maps each triangle to the
    // triangle of its projected vertices, so nothing can fall outside it.
    int x0 = 0, x1 = settings.width - 1, y0 = 0, y1 = settings.height - 1;
    bool bounded = true;
    double min_u = 1e300, max_u = -1e300, min_v = 1e300, max_v = -1e300;
    for (const Vec3& v : transformed_vertices(obj, assets)) {
        const Vec3 pc = cam.pose.rotation.apply(v) + cam.pose.translation;
        if (pc.z <= 1e-9) {
            bounded = false;
            break;
        }
        const double u = cam.intrinsics.fx * pc.x / pc.z + cam.intrinsics.cx;
        const double w = cam.intrinsics.fy * pc.y / pc.z + cam.intrinsics.cy;
        min_u = std::min(min_u, u);
        max_u = std::max(max_u, u);
        min_v = std::min(min_v, w);
        max_v = std::max(max_v, w);
    }
    if (bounded) {
        x0 = std::max(0, static_cast<int>(std::floor(min_u - 1)));
        x1 = std::min(settings.width - 1, static_cast<int>(std::ceil(max_u + 1)));
        y0 = std::max(0, static_cast<int>(std::floor(min_v - 1)));
        y1 = std::min(settings.height - 1, static_cast<int>(std::ceil(max_v + 1)));
    }

    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) {
            const Hit hit = rs.bvh.closest(origin, pixel_ray_dir(cam, x + 0.5, y + 0.5));
            if (hit.triangle >= 0) mask.at(x, y) = obj.instance_id;
        }
    return mask;
}

}  // namespace scenesmith

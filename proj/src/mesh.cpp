#include "scenesmith/mesh.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "scenesmith/errors.hpp"

namespace scenesmith {

Aabb Aabb::empty() {
    const double inf = std::numeric_limits<double>::infinity();
    return {{inf, inf, inf}, {-inf, -inf, -inf}};
}

void Aabb::expand(const Vec3& p) {
    min.x = std::min(min.x, p.x); min.y = std::min(min.y, p.y); min.z = std::min(min.z, p.z);
    max.x = std::max(max.x, p.x); max.y = std::max(max.y, p.y); max.z = std::max(max.z, p.z);
}

void Aabb::expand(const Aabb& other) {
    expand(other.min);
    expand(other.max);
}

void TriangleMesh::recompute_bounds() {
    bounds = Aabb::empty();
    for (const auto& v : vertices) bounds.expand(v);
}

namespace {

struct FaceRef {
    int v = 0;   // 1-based position index
    int vt = 0;  // 1-based uv index, 0 = none
};

FaceRef parse_face_ref(const std::string& token, int line_no) {
    FaceRef ref;
    const std::size_t slash = token.find('/');
    try {
        std::size_t used = 0;
        ref.v = std::stoi(token.substr(0, slash), &used);
        if (used != (slash == std::string::npos ? token.size() : slash))
            throw std::invalid_argument(token);
        if (slash != std::string::npos) {
            const std::string rest = token.substr(slash + 1);
            // `i//k` (normal index) keeps uv empty; `i/j` and `i/j/k` carry uv
            const std::size_t slash2 = rest.find('/');
            const std::string uv_part = rest.substr(0, slash2);
            if (!uv_part.empty()) {
                ref.vt = std::stoi(uv_part, &used);
                if (used != uv_part.size()) throw std::invalid_argument(token);
            }
        }
    } catch (const std::exception&) {
        throw ParseError("mesh line " + std::to_string(line_no) + ": bad face element `" + token + "`",
                         line_no);
    }
    return ref;
}

}  // namespace

TriangleMesh load_mesh(const std::string& wavefront_text) {
    std::vector<Vec3> positions;
    std::vector<Vec2> texcoords;
    std::vector<std::array<FaceRef, 3>> faces;

    std::istringstream in(wavefront_text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "v") {
            Vec3 p;
            if (!(ls >> p.x >> p.y >> p.z))
                throw ParseError("mesh line " + std::to_string(line_no) + ": bad vertex", line_no);
            if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
                throw ParseError("mesh line " + std::to_string(line_no) + ": non-finite vertex",
                                 line_no);
            positions.push_back(p);
        } else if (tag == "vt") {
            Vec2 t;
            if (!(ls >> t.x >> t.y))
                throw ParseError("mesh line " + std::to_string(line_no) + ": bad uv", line_no);
            texcoords.push_back(t);
        } else if (tag == "f") {
            std::vector<FaceRef> refs;
            std::string token;
            while (ls >> token) refs.push_back(parse_face_ref(token, line_no));
            if (refs.size() < 3)
                throw ParseError("mesh line " + std::to_string(line_no) + ": face needs >= 3 vertices",
                                 line_no);
            for (std::size_t k = 1; k + 1 < refs.size(); ++k)
                faces.push_back({refs[0], refs[k], refs[k + 1]});
        }
        // other record types (vn, o, g, s, usemtl, mtllib) are ignored
    }
    if (faces.empty()) throw ParseError("mesh has no faces", line_no);

    TriangleMesh mesh;
    std::map<std::pair<int, int>, std::uint32_t> remap;
    for (const auto& face : faces) {
        std::array<std::uint32_t, 3> tri{};
        for (int c = 0; c < 3; ++c) {
            const FaceRef& ref = face[c];
            if (ref.v < 1 || ref.v > static_cast<int>(positions.size()))
                throw IndexOutOfRange("mesh face references vertex " + std::to_string(ref.v) +
                                      " of " + std::to_string(positions.size()));
            if (ref.vt < 0 || ref.vt > static_cast<int>(texcoords.size()))
                throw IndexOutOfRange("mesh face references uv " + std::to_string(ref.vt) + " of " +
                                      std::to_string(texcoords.size()));
            const auto key = std::make_pair(ref.v, ref.vt);
            auto it = remap.find(key);
            if (it == remap.end()) {
                it = remap.emplace(key, static_cast<std::uint32_t>(mesh.vertices.size())).first;
                mesh.vertices.push_back(positions[static_cast<std::size_t>(ref.v - 1)]);
                mesh.uvs.push_back(ref.vt > 0 ? texcoords[static_cast<std::size_t>(ref.vt - 1)]
                                              : Vec2{0, 0});
            }
            tri[c] = it->second;
        }
        mesh.triangles.push_back(tri);
    }
    mesh.recompute_bounds();
    return mesh;
}

namespace {

std::uint32_t push_vertex(TriangleMesh& m, const Vec3& p, const Vec2& uv = {0, 0}) {
    m.vertices.push_back(p);
    m.uvs.push_back(uv);
    return static_cast<std::uint32_t>(m.vertices.size() - 1);
}

void push_quad(TriangleMesh& m, std::uint32_t a, std::uint32_t b, std::uint32_t c,
               std::uint32_t d) {
    m.triangles.push_back({a, b, c});
    m.triangles.push_back({a, c, d});
}

}  // namespace

TriangleMesh make_box(const Vec3& lo, const Vec3& hi) {
    TriangleMesh m;
    // 8 corners, duplicated per face for clean per-face uvs
    const Vec3 c[8] = {{lo.x, lo.y, lo.z}, {hi.x, lo.y, lo.z}, {hi.x, hi.y, lo.z},
                       {lo.x, hi.y, lo.z}, {lo.x, lo.y, hi.z}, {hi.x, lo.y, hi.z},
                       {hi.x, hi.y, hi.z}, {lo.x, hi.y, hi.z}};
    const int faces[6][4] = {{0, 3, 2, 1},   // bottom (z-)
                             {4, 5, 6, 7},   // top (z+)
                             {0, 1, 5, 4},   // y-
                             {2, 3, 7, 6},   // y+
                             {1, 2, 6, 5},   // x+
                             {3, 0, 4, 7}};  // x-
    const Vec2 uv[4] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    for (const auto& f : faces) {
        const std::uint32_t a = push_vertex(m, c[f[0]], uv[0]);
        const std::uint32_t b = push_vertex(m, c[f[1]], uv[1]);
        const std::uint32_t cc = push_vertex(m, c[f[2]], uv[2]);
        const std::uint32_t d = push_vertex(m, c[f[3]], uv[3]);
        push_quad(m, a, b, cc, d);
    }
    m.recompute_bounds();
    return m;
}

TriangleMesh make_cylinder_y(double radius, double y0, double y1, double cx, double cz,
                             int segments) {
    TriangleMesh m;
    std::vector<std::uint32_t> lo(segments), hi(segments);
    for (int i = 0; i < segments; ++i) {
        const double a = 2.0 * M_PI * i / segments;
        const double x = cx + radius * std::cos(a);
        const double z = cz + radius * std::sin(a);
        const double u = static_cast<double>(i) / segments;
        lo[i] = push_vertex(m, {x, y0, z}, {u, 0});
        hi[i] = push_vertex(m, {x, y1, z}, {u, 1});
    }
    for (int i = 0; i < segments; ++i) {
        const int j = (i + 1) % segments;
        push_quad(m, lo[i], lo[j], hi[j], hi[i]);
    }
    const std::uint32_t center_lo = push_vertex(m, {cx, y0, cz}, {0.5, 0.5});
    const std::uint32_t center_hi = push_vertex(m, {cx, y1, cz}, {0.5, 0.5});
    for (int i = 0; i < segments; ++i) {
        const int j = (i + 1) % segments;
        m.triangles.push_back({center_lo, lo[j], lo[i]});
        m.triangles.push_back({center_hi, hi[i], hi[j]});
    }
    m.recompute_bounds();
    return m;
}

TriangleMesh make_box_frustum(double x0b, double x1b, double y0b, double y1b, double x0t,
                              double x1t, double y0t, double y1t, double z0, double z1) {
    TriangleMesh m;
    const Vec3 c[8] = {{x0b, y0b, z0}, {x1b, y0b, z0}, {x1b, y1b, z0}, {x0b, y1b, z0},
                       {x0t, y0t, z1}, {x1t, y0t, z1}, {x1t, y1t, z1}, {x0t, y1t, z1}};
    const int faces[6][4] = {{0, 3, 2, 1}, {4, 5, 6, 7}, {0, 1, 5, 4},
                             {2, 3, 7, 6}, {1, 2, 6, 5}, {3, 0, 4, 7}};
    const Vec2 uv[4] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    for (const auto& f : faces) {
        const std::uint32_t a = push_vertex(m, c[f[0]], uv[0]);
        const std::uint32_t b = push_vertex(m, c[f[1]], uv[1]);
        const std::uint32_t cc = push_vertex(m, c[f[2]], uv[2]);
        const std::uint32_t d = push_vertex(m, c[f[3]], uv[3]);
        push_quad(m, a, b, cc, d);
    }
    m.recompute_bounds();
    return m;
}

TriangleMesh make_uv_sphere(double radius, const Vec3& center, int stacks, int slices) {
    TriangleMesh m;
    std::vector<std::vector<std::uint32_t>> ring(stacks + 1);
    for (int s = 0; s <= stacks; ++s) {
        const double phi = M_PI * s / stacks;  // 0 at +z pole
        for (int t = 0; t <= slices; ++t) {
            const double theta = 2.0 * M_PI * t / slices;
            const Vec3 p{center.x + radius * std::sin(phi) * std::cos(theta),
                         center.y + radius * std::sin(phi) * std::sin(theta),
                         center.z + radius * std::cos(phi)};
            ring[s].push_back(push_vertex(m, p, {static_cast<double>(t) / slices,
                                                 static_cast<double>(s) / stacks}));
        }
    }
    for (int s = 0; s < stacks; ++s)
        for (int t = 0; t < slices; ++t) {
            if (s > 0) m.triangles.push_back({ring[s][t], ring[s + 1][t], ring[s][t + 1]});
            if (s < stacks - 1)
                m.triangles.push_back({ring[s][t + 1], ring[s + 1][t], ring[s + 1][t + 1]});
        }
    m.recompute_bounds();
    return m;
}

TriangleMesh make_cone(double radius, double height, int segments, double tip_radius_fraction) {
    // Slightly truncated tip keeps the silhouette raster-friendly.
    const double rt = radius * tip_radius_fraction;
    TriangleMesh m;
    std::vector<std::uint32_t> base(segments), top(segments);
    for (int i = 0; i < segments; ++i) {
        const double a = 2.0 * M_PI * i / segments;
        const double u = static_cast<double>(i) / segments;
        base[i] = push_vertex(m, {radius * std::cos(a), radius * std::sin(a), 0}, {u, 0});
        top[i] = push_vertex(m, {rt * std::cos(a), rt * std::sin(a), height}, {u, 1});
    }
    for (int i = 0; i < segments; ++i) {
        const int j = (i + 1) % segments;
        push_quad(m, base[i], base[j], top[j], top[i]);
    }
    const std::uint32_t base_center = push_vertex(m, {0, 0, 0}, {0.5, 0.5});
    const std::uint32_t top_center = push_vertex(m, {0, 0, height}, {0.5, 0.5});
    for (int i = 0; i < segments; ++i) {
        const int j = (i + 1) % segments;
        m.triangles.push_back({base_center, base[j], base[i]});
        m.triangles.push_back({top_center, top[i], top[j]});
    }
    m.recompute_bounds();
    return m;
}

TriangleMesh make_capsule(double radius, double height, int stacks, int slices) {
    // Upright capsule resting on z = 0: hemisphere + cylinder + hemisphere.
    const double cyl0 = radius, cyl1 = height - radius;
    TriangleMesh m;
    std::vector<std::vector<std::uint32_t>> rings;
    auto add_ring = [&](double z, double r, double v) {
        std::vector<std::uint32_t> ring;
        for (int t = 0; t <= slices; ++t) {
            const double theta = 2.0 * M_PI * t / slices;
            ring.push_back(push_vertex(m, {r * std::cos(theta), r * std::sin(theta), z},
                                       {static_cast<double>(t) / slices, v}));
        }
        rings.push_back(std::move(ring));
    };
    for (int s = 0; s <= stacks; ++s) {  // bottom hemisphere: pole at z=0
        const double phi = M_PI / 2.0 * s / stacks;
        add_ring(cyl0 - radius * std::cos(phi), radius * std::sin(phi), 0.25 * s / stacks);
    }
    add_ring(cyl1, radius, 0.75);
    for (int s = 1; s <= stacks; ++s) {  // top hemisphere: pole at z=height
        const double phi = M_PI / 2.0 * s / stacks;
        add_ring(cyl1 + radius * std::sin(phi), radius * std::cos(phi), 0.75 + 0.25 * s / stacks);
    }
    for (std::size_t r = 0; r + 1 < rings.size(); ++r)
        for (int t = 0; t < slices; ++t) {
            m.triangles.push_back({rings[r][t], rings[r + 1][t], rings[r][t + 1]});
            m.triangles.push_back({rings[r][t + 1], rings[r + 1][t], rings[r + 1][t + 1]});
        }
    m.recompute_bounds();
    return m;
}

void append_mesh(TriangleMesh& dst, const TriangleMesh& src) {
    const auto offset = static_cast<std::uint32_t>(dst.vertices.size());
    dst.vertices.insert(dst.vertices.end(), src.vertices.begin(), src.vertices.end());
    dst.uvs.insert(dst.uvs.end(), src.uvs.begin(), src.uvs.end());
    for (const auto& t : src.triangles)
        dst.triangles.push_back({t[0] + offset, t[1] + offset, t[2] + offset});
    dst.recompute_bounds();
}

void assign_box_uvs(TriangleMesh& mesh) {
    mesh.recompute_bounds();
    const Vec3 ext = mesh.bounds.extent();
    auto safe = [](double e) { return e > 1e-12 ? e : 1.0; };
    for (const auto& tri : mesh.triangles) {
        const Vec3 n = cross(mesh.vertices[tri[1]] - mesh.vertices[tri[0]],
                             mesh.vertices[tri[2]] - mesh.vertices[tri[0]]);
        const double ax = std::abs(n.x), ay = std::abs(n.y), az = std::abs(n.z);
        for (std::uint32_t idx : tri) {
            const Vec3 rel = mesh.vertices[idx] - mesh.bounds.min;
            if (az >= ax && az >= ay)
                mesh.uvs[idx] = {rel.x / safe(ext.x), rel.y / safe(ext.y)};
            else if (ax >= ay)
                mesh.uvs[idx] = {rel.y / safe(ext.y), rel.z / safe(ext.z)};
            else
                mesh.uvs[idx] = {rel.x / safe(ext.x), rel.z / safe(ext.z)};
        }
    }
}

double mesh_surface_area(const TriangleMesh& mesh) {
    double area = 0;
    for (const auto& t : mesh.triangles)
        area += 0.5 * norm(cross(mesh.vertices[t[1]] - mesh.vertices[t[0]],
                                 mesh.vertices[t[2]] - mesh.vertices[t[0]]));
    return area;
}

}  // namespace scenesmith

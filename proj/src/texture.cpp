#include "scenesmith/texture.hpp"

#include <cmath>

#include "scenesmith/errors.hpp"
#include "scenesmith/rng.hpp"

namespace scenesmith {

const char* texture_kind_name(TextureKind kind) {
    switch (kind) {
        case TextureKind::Flat: return "flat";
        case TextureKind::Checker: return "checker";
        case TextureKind::Stripes: return "stripes";
        case TextureKind::Noise: return "noise";
    }
    return "flat";
}

TextureKind texture_kind_from_name(const std::string& name) {
    if (name == "flat") return TextureKind::Flat;
    if (name == "checker") return TextureKind::Checker;
    if (name == "stripes") return TextureKind::Stripes;
    if (name == "noise") return TextureKind::Noise;
    throw InvalidParams("unknown texture kind `" + name + "`");
}

namespace {

// Lattice value in [0, 1): pure integer hashing, so the noise field is the
// same bit pattern on every platform.
double lattice(std::uint64_t seed, std::int64_t ix, std::int64_t iy) {
    std::uint64_t h = mix64(seed ^ mix64(static_cast<std::uint64_t>(ix) * 0x9E3779B97F4A7C15ull ^
                                         static_cast<std::uint64_t>(iy) * 0xC2B2AE3D27D4EB4Full));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double smooth(double t) { return t * t * t * (t * (t * 6.0 - 15.0) + 10.0); }

double value_noise(std::uint64_t seed, double x, double y) {
    const double fx = std::floor(x), fy = std::floor(y);
    const auto ix = static_cast<std::int64_t>(fx), iy = static_cast<std::int64_t>(fy);
    const double tx = smooth(x - fx), ty = smooth(y - fy);
    const double v00 = lattice(seed, ix, iy), v10 = lattice(seed, ix + 1, iy);
    const double v01 = lattice(seed, ix, iy + 1), v11 = lattice(seed, ix + 1, iy + 1);
    const double a = v00 + (v10 - v00) * tx;
    const double b = v01 + (v11 - v01) * tx;
    return a + (b - a) * ty;
}

double fractal_noise(std::uint64_t seed, double x, double y, int octaves) {
    double sum = 0, amp = 1, freq = 1, total = 0;
    for (int o = 0; o < octaves; ++o) {
        sum += amp * value_noise(seed + static_cast<std::uint64_t>(o), x * freq, y * freq);
        total += amp;
        amp *= 0.5;
        freq *= 2.0;
    }
    return sum / total;
}

Color blend(Color a, Color b, double t) {
    auto ch = [t](std::uint8_t u, std::uint8_t v) {
        return static_cast<std::uint8_t>(std::lround(u + (static_cast<double>(v) - u) * t));
    };
    return {ch(a.r, b.r), ch(a.g, b.g), ch(a.b, b.b)};
}

}  // namespace

Texture procedural_texture(TextureKind kind, const TextureParams& params, std::uint64_t seed,
                           int width, int height) {
    if (width < 1 || height < 1) throw InvalidParams("texture dimensions must be >= 1");
    if ((kind == TextureKind::Checker || kind == TextureKind::Stripes) && params.cell_px < 1)
        throw InvalidParams("cell_px must be >= 1");
    if (kind == TextureKind::Noise && (params.octaves < 1 || params.octaves > 10))
        throw InvalidParams("noise octaves must be in [1, 10]");
    if (kind == TextureKind::Noise && !(params.scale > 0))
        throw InvalidParams("noise scale must be > 0");

    Texture tex;
    tex.image = Raster8(width, height, 3);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            Color c;
            switch (kind) {
                case TextureKind::Flat:
                    c = params.color_a;
                    break;
                case TextureKind::Checker:
                    c = ((x / params.cell_px + y / params.cell_px) % 2 == 0) ? params.color_a
                                                                             : params.color_b;
                    break;
                case TextureKind::Stripes:
                    c = ((x / params.cell_px) % 2 == 0) ? params.color_a : params.color_b;
                    break;
                case TextureKind::Noise: {
                    const double u = (x + 0.5) / width * params.scale;
                    const double v = (y + 0.5) / height * params.scale;
                    c = blend(params.color_a, params.color_b,
                              fractal_noise(seed, u, v, params.octaves));
                    break;
                }
            }
            tex.image.set_rgb(x, y, c);
        }
    return tex;
}

Texture render_texture(const TextureBankEntry& entry) {
    return procedural_texture(entry.kind, entry.params, entry.seed, entry.width, entry.height);
}

std::vector<TextureBankEntry> default_texture_bank() {
    std::vector<TextureBankEntry> bank;
    auto add = [&bank](const std::string& name, TextureKind kind, Color a, Color b, int cell,
                       int octaves, double scale, std::uint64_t seed) {
        TextureBankEntry e;
        e.name = name;
        e.kind = kind;
        e.params.color_a = a;
        e.params.color_b = b;
        e.params.cell_px = cell;
        e.params.octaves = octaves;
        e.params.scale = scale;
        e.seed = seed;
        bank.push_back(e);
    };

    // 14 flats: saturated primaries plus common vehicle paint tones.
    const Color flats[14] = {{230, 230, 230}, {20, 20, 20},   {192, 192, 192}, {128, 128, 128},
                             {180, 30, 30},   {30, 60, 160},  {120, 80, 50},   {220, 180, 40},
                             {30, 140, 60},   {200, 110, 30}, {90, 30, 120},   {40, 160, 170},
                             {235, 120, 150}, {70, 90, 110}};
    for (int i = 0; i < 14; ++i)
        add("flat_" + std::to_string(i), TextureKind::Flat, flats[i], {}, 8, 3, 8.0, 0);

    // 12 checkers: varied cell sizes and contrasting pairs.
    const Color checker_pairs[12][2] = {
        {{240, 240, 240}, {10, 10, 10}},   {{200, 40, 40}, {240, 230, 220}},
        {{40, 70, 160}, {220, 220, 100}},  {{20, 110, 60}, {230, 230, 230}},
        {{150, 90, 40}, {250, 220, 170}},  {{60, 60, 60}, {180, 180, 180}},
        {{250, 160, 20}, {30, 30, 80}},    {{130, 20, 130}, {230, 210, 90}},
        {{10, 140, 150}, {240, 120, 80}},  {{90, 110, 50}, {210, 220, 180}},
        {{170, 30, 60}, {40, 40, 40}},     {{20, 40, 90}, {160, 190, 230}}};
    const int checker_cells[12] = {4, 6, 8, 8, 12, 16, 16, 24, 32, 6, 12, 24};
    for (int i = 0; i < 12; ++i)
        add("checker_" + std::to_string(i), TextureKind::Checker, checker_pairs[i][0],
            checker_pairs[i][1], checker_cells[i], 3, 8.0, 0);

    // 12 stripes.
    const Color stripe_pairs[12][2] = {
        {{240, 240, 240}, {180, 20, 20}},  {{20, 20, 20}, {230, 200, 40}},
        {{30, 90, 170}, {220, 230, 240}},  {{20, 120, 70}, {240, 240, 220}},
        {{90, 50, 20}, {230, 180, 120}},   {{110, 110, 110}, {210, 210, 210}},
        {{250, 140, 0}, {50, 20, 90}},     {{190, 40, 120}, {240, 220, 230}},
        {{10, 130, 140}, {240, 240, 240}}, {{60, 80, 40}, {190, 210, 150}},
        {{140, 10, 30}, {250, 230, 210}},  {{30, 30, 120}, {150, 180, 240}}};
    const int stripe_cells[12] = {3, 4, 6, 8, 8, 12, 16, 16, 24, 32, 5, 10};
    for (int i = 0; i < 12; ++i)
        add("stripes_" + std::to_string(i), TextureKind::Stripes, stripe_pairs[i][0],
            stripe_pairs[i][1], stripe_cells[i], 3, 8.0, 0);

    // 12 noise fields: organic blotches at mixed scales.
    const Color noise_pairs[12][2] = {
        {{40, 40, 40}, {220, 220, 220}},   {{110, 70, 30}, {230, 200, 150}},
        {{20, 60, 20}, {140, 200, 120}},   {{20, 40, 90}, {150, 190, 230}},
        {{120, 20, 20}, {240, 160, 140}},  {{90, 90, 100}, {230, 230, 240}},
        {{150, 110, 30}, {250, 240, 200}}, {{40, 20, 60}, {190, 160, 220}},
        {{10, 100, 110}, {200, 240, 240}}, {{80, 80, 20}, {230, 230, 160}},
        {{60, 30, 10}, {180, 140, 110}},   {{30, 30, 30}, {160, 120, 200}}};
    const int noise_octaves[12] = {2, 3, 3, 4, 4, 5, 2, 3, 4, 5, 3, 4};
    const double noise_scales[12] = {4, 6, 8, 8, 12, 16, 3, 5, 10, 14, 7, 9};
    for (int i = 0; i < 12; ++i)
        add("noise_" + std::to_string(i), TextureKind::Noise, noise_pairs[i][0], noise_pairs[i][1],
            8, noise_octaves[i], noise_scales[i], 0xA5EED0000ull + static_cast<std::uint64_t>(i));

    return bank;  // 14 + 12 + 12 + 12 = 50
}

std::uint64_t fnv1a64(const std::uint8_t* data, std::size_t size, std::uint64_t seed) {
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= data[i];
        h *= 0x100000001B3ull;
    }
    return h;
}

std::uint64_t texture_bank_digest(const std::vector<TextureBankEntry>& bank) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (const auto& entry : bank) {
        const Texture tex = render_texture(entry);
        h = fnv1a64(tex.image.data.data(), tex.image.data.size(), h);
    }
    return h;
}

}  // namespace scenesmith

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scenesmith/raster.hpp"

namespace scenesmith {

enum class AddressMode { Clamp, Repeat };

struct Texture {
    Raster8 image;  // RGB
    AddressMode address = AddressMode::Repeat;
};

enum class TextureKind { Flat, Checker, Stripes, Noise };

const char* texture_kind_name(TextureKind kind);
TextureKind texture_kind_from_name(const std::string& name);

struct TextureParams {
    Color color_a;        // primary
    Color color_b;        // secondary (ignored by Flat)
    int cell_px = 8;      // checker cell edge / stripe period, pixels
    int octaves = 3;      // noise octaves
    double scale = 8.0;   // noise lattice cells across the texture width
};

// One versioned bank entry: everything needed to re-render the texture.
struct TextureBankEntry {
    std::string name;
    TextureKind kind = TextureKind::Flat;
    TextureParams params;
    std::uint64_t seed = 0;
    int width = 64, height = 64;
};

// Deterministic function of (kind, params, seed, size). The noise generator
// deliberately avoids libm transcendentals so output is bit-identical across
// platforms, which keeps the bank digest stable.
Texture procedural_texture(TextureKind kind, const TextureParams& params, std::uint64_t seed,
                           int width, int height);

Texture render_texture(const TextureBankEntry& entry);

// The shipped 50-entry bank; fixed (kind, params, seed) triples.
std::vector<TextureBankEntry> default_texture_bank();

// FNV-1a over raw bytes; `seed` is the running hash for chaining.
std::uint64_t fnv1a64(const std::uint8_t* data, std::size_t size,
                      std::uint64_t seed = 0xCBF29CE484222325ull);

// Chained digest over all rendered entries, in bank order. The value for
// default_texture_bank() is frozen in the tests and documented in the README.
std::uint64_t texture_bank_digest(const std::vector<TextureBankEntry>& bank);

}  // namespace scenesmith

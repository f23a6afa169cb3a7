#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "scenesmith/errors.hpp"

namespace scenesmith {

struct Color {
    std::uint8_t r = 0, g = 0, b = 0;
    bool operator==(const Color&) const = default;
};

// 8-bit raster, 1 or 3 interleaved channels, row-major.
struct Raster8 {
    int width = 0, height = 0, channels = 0;
    std::vector<std::uint8_t> data;

    Raster8() = default;
    Raster8(int w, int h, int ch, std::uint8_t fill = 0)
        : width(w), height(h), channels(ch),
          data(static_cast<std::size_t>(w) * h * ch, fill) {
        if (w < 1 || h < 1 || (ch != 1 && ch != 3)) throw InvalidParams("Raster8: bad dimensions");
    }

    std::uint8_t& at(int x, int y, int c) {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    std::uint8_t at(int x, int y, int c) const {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    void set_rgb(int x, int y, Color col) {
        at(x, y, 0) = col.r;
        at(x, y, 1) = col.g;
        at(x, y, 2) = col.b;
    }
    bool operator==(const Raster8&) const = default;
};

// 16-bit single-channel raster (instance ids; 0 = background layout).
struct Raster16 {
    int width = 0, height = 0;
    std::vector<std::uint16_t> data;

    Raster16() = default;
    Raster16(int w, int h, std::uint16_t fill = 0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

    std::uint16_t& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    std::uint16_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
    bool operator==(const Raster16&) const = default;
};

// 32-bit float single-channel raster (depth; +inf = no hit).
struct RasterF {
    int width = 0, height = 0;
    std::vector<float> data;

    RasterF() = default;
    RasterF(int w, int h, float fill = std::numeric_limits<float>::infinity())
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

    float& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    float at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
    bool operator==(const RasterF&) const = default;
};

}  // namespace scenesmith

#pragma once

#include <string>

#include "scenesmith/raster.hpp"

namespace scenesmith {

// All writers are atomic: data goes to `<path>.tmp` in the same directory and
// is renamed over the target, so an interrupted run never leaves torn files.

void write_png_rgb8(const std::string& path, const Raster8& img);
void write_png_gray16(const std::string& path, const Raster16& img);

// Reads any 8/16-bit PNG and converts to 8-bit RGB (palette expanded, alpha
// stripped, gray replicated).
Raster8 read_png_rgb8(const std::string& path);

// Reads a 16-bit grayscale PNG (the instance-mask format).
Raster16 read_png_gray16(const std::string& path);

// Portable float map, grayscale ("Pf"), scale header -1.0 (little-endian),
// scanlines bottom-up.
void write_pfm(const std::string& path, const RasterF& img);
RasterF read_pfm(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file_atomic(const std::string& path, const std::string& contents);

}  // namespace scenesmith

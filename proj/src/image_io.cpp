#include "scenesmith/image_io.hpp"

#include <png.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "scenesmith/errors.hpp"

namespace scenesmith {

namespace {

// RAII FILE handle; libpng wants stdio.
struct File {
    std::FILE* f = nullptr;
    explicit File(const std::string& path, const char* mode) : f(std::fopen(path.c_str(), mode)) {
        if (f == nullptr) throw IoFailure("cannot open `" + path + "`");
    }
    ~File() {
        if (f != nullptr) std::fclose(f);
    }
    File(const File&) = delete;
    File& operator=(const File&) = delete;
};

void rename_over(const std::string& tmp, const std::string& path) {
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoFailure("rename `" + tmp + "` -> `" + path + "`: " + ec.message());
}

// libpng error handling: instead of setjmp (which interacts badly with C++
// destructors), the error callback throws. x86-64 unwind tables make the
// throw-through-C safe, and the RAII wrappers below clean the png structs up.
[[noreturn]] void png_error_thrower(png_structp, png_const_charp msg) {
    throw IoFailure(std::string("libpng: ") + msg);
}
void png_warning_sink(png_structp, png_const_charp) {}

struct PngWriter {
    png_structp png = nullptr;
    png_infop info = nullptr;
    PngWriter() {
        png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_thrower,
                                      png_warning_sink);
        if (png != nullptr) info = png_create_info_struct(png);
        if (png == nullptr || info == nullptr) {
            png_destroy_write_struct(&png, &info);
            throw IoFailure("libpng writer allocation failed");
        }
    }
    ~PngWriter() { png_destroy_write_struct(&png, &info); }
};

struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;
    PngReader() {
        png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_thrower,
                                     png_warning_sink);
        if (png != nullptr) info = png_create_info_struct(png);
        if (png == nullptr || info == nullptr) {
            png_destroy_read_struct(&png, &info, nullptr);
            throw IoFailure("libpng reader allocation failed");
        }
    }
    ~PngReader() { png_destroy_read_struct(&png, &info, nullptr); }
};

}  // namespace

void write_png_rgb8(const std::string& path, const Raster8& img) {
    if (img.channels != 3) throw InvalidParams("write_png_rgb8 wants a 3-channel raster");
    const std::string tmp = path + ".tmp";
    {
        File file(tmp, "wb");
        PngWriter w;
        png_init_io(w.png, file.f);
        png_set_IHDR(w.png, w.info, static_cast<png_uint_32>(img.width),
                     static_cast<png_uint_32>(img.height), 8, PNG_COLOR_TYPE_RGB,
                     PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
        png_write_info(w.png, w.info);
        for (int y = 0; y < img.height; ++y)
            png_write_row(w.png,
                          const_cast<png_bytep>(&img.data[static_cast<std::size_t>(y) *
                                                          img.width * 3]));
        png_write_end(w.png, w.info);
    }
    rename_over(tmp, path);
}

void write_png_gray16(const std::string& path, const Raster16& img) {
    const std::string tmp = path + ".tmp";
    {
        File file(tmp, "wb");
        PngWriter w;
        png_init_io(w.png, file.f);
        png_set_IHDR(w.png, w.info, static_cast<png_uint_32>(img.width),
                     static_cast<png_uint_32>(img.height), 16, PNG_COLOR_TYPE_GRAY,
                     PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
        png_write_info(w.png, w.info);
        // PNG stores 16-bit samples big-endian; pack explicitly
        std::vector<png_byte> row(static_cast<std::size_t>(img.width) * 2);
        for (int y = 0; y < img.height; ++y) {
            for (int x = 0; x < img.width; ++x) {
                const std::uint16_t v = img.at(x, y);
                row[static_cast<std::size_t>(x) * 2] = static_cast<png_byte>(v >> 8);
                row[static_cast<std::size_t>(x) * 2 + 1] = static_cast<png_byte>(v & 0xFF);
            }
            png_write_row(w.png, row.data());
        }
        png_write_end(w.png, w.info);
    }
    rename_over(tmp, path);
}

Raster8 read_png_rgb8(const std::string& path) {
    File file(path, "rb");
    PngReader r;
    png_init_io(r.png, file.f);
    png_read_info(r.png, r.info);

    png_set_palette_to_rgb(r.png);
    png_set_expand_gray_1_2_4_to_8(r.png);
    png_set_strip_16(r.png);
    png_set_strip_alpha(r.png);
    png_set_gray_to_rgb(r.png);
    png_read_update_info(r.png, r.info);

    const int width = static_cast<int>(png_get_image_width(r.png, r.info));
    const int height = static_cast<int>(png_get_image_height(r.png, r.info));
    if (png_get_channels(r.png, r.info) != 3 || png_get_bit_depth(r.png, r.info) != 8)
        throw IoFailure("`" + path + "` did not normalize to 8-bit RGB");

    Raster8 img(width, height, 3);
    for (int y = 0; y < height; ++y)
        png_read_row(r.png, &img.data[static_cast<std::size_t>(y) * width * 3], nullptr);
    return img;
}

Raster16 read_png_gray16(const std::string& path) {
    File file(path, "rb");
    PngReader r;
    png_init_io(r.png, file.f);
    png_read_info(r.png, r.info);

    if (png_get_color_type(r.png, r.info) != PNG_COLOR_TYPE_GRAY ||
        png_get_bit_depth(r.png, r.info) != 16)
        throw IoFailure("`" + path + "` is not a 16-bit grayscale PNG");
    const int width = static_cast<int>(png_get_image_width(r.png, r.info));
    const int height = static_cast<int>(png_get_image_height(r.png, r.info));

    Raster16 img(width, height);
    std::vector<png_byte> row(static_cast<std::size_t>(width) * 2);
    for (int y = 0; y < height; ++y) {
        png_read_row(r.png, row.data(), nullptr);
        for (int x = 0; x < width; ++x)
            img.at(x, y) = static_cast<std::uint16_t>(
                (row[static_cast<std::size_t>(x) * 2] << 8) |
                row[static_cast<std::size_t>(x) * 2 + 1]);
    }
    return img;
}

void write_pfm(const std::string& path, const RasterF& img) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IoFailure("cannot open `" + tmp + "`");
        out << "Pf\n" << img.width << " " << img.height << "\n-1.0\n";
        // PFM scanlines run bottom-to-top
        for (int y = img.height - 1; y >= 0; --y)
            out.write(reinterpret_cast<const char*>(&img.data[static_cast<std::size_t>(y) *
                                                              img.width]),
                      static_cast<std::streamsize>(img.width) * 4);
        if (!out) throw IoFailure("write failed for `" + tmp + "`");
    }
    rename_over(tmp, path);
}

RasterF read_pfm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open `" + path + "`");
    std::string magic;
    int width = 0, height = 0;
    double scale = 0;
    in >> magic >> width >> height >> scale;
    if (magic != "Pf" || width < 1 || height < 1)
        throw ParseError("`" + path + "` is not a grayscale PFM");
    if (scale >= 0) throw ParseError("big-endian PFM not supported (`" + path + "`)");
    in.get();  // single whitespace after the scale line
    RasterF img(width, height);
    for (int y = height - 1; y >= 0; --y)
        in.read(reinterpret_cast<char*>(&img.data[static_cast<std::size_t>(y) * width]),
                static_cast<std::streamsize>(width) * 4);
    if (!in) throw IoFailure("truncated PFM `" + path + "`");
    return img;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open `" + path + "`");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file_atomic(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IoFailure("cannot open `" + tmp + "`");
        out << contents;
        if (!out) throw IoFailure("write failed for `" + tmp + "`");
    }
    rename_over(tmp, path);
}

}  // namespace scenesmith

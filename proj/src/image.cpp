// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/image.hpp"

#include <png.h>

#include <cstring>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "forge/error.hpp"
#include "forge/store.hpp"

namespace forge {

namespace {

void on_png_error(png_structp png, png_const_charp message) {
    auto* err = static_cast<std::string*>(png_get_error_ptr(png));
    if (err != nullptr) *err = message;
    png_longjmp(png, 1);
}

void on_png_warning(png_structp, png_const_charp) {}

struct ReadCursor {
    const std::string* bytes;
    std::size_t offset;
};

}  // namespace

std::string encode_png(const Image& image) {
    if (image.width < 1 || image.height < 1 || (image.channels != 1 && image.channels != 3) ||
        (image.bit_depth != 8 && image.bit_depth != 16) ||
        image.data.size() != static_cast<std::size_t>(image.width) * image.height * image.channels) {
        throw Error(Errc::invalid_argument, "unsupported image layout for PNG");
    }
    std::string error;
    std::string out;
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &error, on_png_error, on_png_warning);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (png == nullptr || info == nullptr) {
        png_destroy_write_struct(&png, &info);
        throw Error(Errc::io, "png: out of memory");
    }
    const std::size_t stride = static_cast<std::size_t>(image.width) * image.channels * (image.bit_depth / 8);
    std::vector<unsigned char> row(stride);
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw Error(Errc::io, fmt::format("png encode: {}", error));
    }
    png_set_write_fn(
        png, &out,
        [](png_structp p, png_bytep data, png_size_t n) {
            static_cast<std::string*>(png_get_io_ptr(p))->append(reinterpret_cast<const char*>(data), n);
        },
        [](png_structp) {});
    png_set_IHDR(png, info, static_cast<png_uint_32>(image.width), static_cast<png_uint_32>(image.height),
                 image.bit_depth, image.channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_set_compression_level(png, 6);
    png_write_info(png, info);
    for (int y = 0; y < image.height; ++y) {
        const std::uint16_t* src = &image.data[image.index(0, y)];
        const std::size_t n = static_cast<std::size_t>(image.width) * image.channels;
        if (image.bit_depth == 8) {
            for (std::size_t i = 0; i < n; ++i) row[i] = static_cast<unsigned char>(src[i]);
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                row[2 * i] = static_cast<unsigned char>(src[i] >> 8);  // PNG is big-endian
                row[2 * i + 1] = static_cast<unsigned char>(src[i] & 0xFF);
            }
        }
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return out;
}

Image decode_png(const std::string& bytes) {
    if (bytes.size() < 8 || png_sig_cmp(reinterpret_cast<png_const_bytep>(bytes.data()), 0, 8) != 0) {
        throw Error(Errc::io, "not a PNG stream");
    }
    std::string error;
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &error, on_png_error, on_png_warning);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (png == nullptr || info == nullptr) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw Error(Errc::io, "png: out of memory");
    }
    ReadCursor cursor{&bytes, 0};
    Image image;
    std::vector<unsigned char> row;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw Error(Errc::io, fmt::format("png decode: {}", error));
    }
    png_set_read_fn(png, &cursor, [](png_structp p, png_bytep data, png_size_t n) {
        auto* c = static_cast<ReadCursor*>(png_get_io_ptr(p));
        if (c->offset + n > c->bytes->size()) png_error(p, "truncated stream");
        std::memcpy(data, c->bytes->data() + c->offset, n);
        c->offset += n;
    });
    png_read_info(png, info);
    const int color = png_get_color_type(png, info);
    const int depth = png_get_bit_depth(png, info);
    if ((color != PNG_COLOR_TYPE_GRAY && color != PNG_COLOR_TYPE_RGB) || (depth != 8 && depth != 16) ||
        png_get_interlace_type(png, info) != PNG_INTERLACE_NONE) {
        png_error(png, "only non-interlaced 8/16-bit gray or RGB images are supported");
    }
    image = Image(static_cast<int>(png_get_image_width(png, info)), static_cast<int>(png_get_image_height(png, info)),
                  color == PNG_COLOR_TYPE_RGB ? 3 : 1, depth);
    row.resize(png_get_rowbytes(png, info));
    for (int y = 0; y < image.height; ++y) {
        png_read_row(png, row.data(), nullptr);
        std::uint16_t* dst = &image.data[image.index(0, y)];
        const std::size_t n = static_cast<std::size_t>(image.width) * image.channels;
        for (std::size_t i = 0; i < n; ++i) {
            dst[i] = depth == 8 ? row[i] : static_cast<std::uint16_t>((row[2 * i] << 8) | row[2 * i + 1]);
        }
    }
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return image;
}

void write_png(const std::filesystem::path& path, const Image& image) {
    write_file_atomic(path, encode_png(image));
}

Image read_png(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io, fmt::format("cannot open {}", path.string()));
    std::ostringstream buf;
    buf << in.rdbuf();
    return decode_png(buf.str());
}

}  // namespace forge

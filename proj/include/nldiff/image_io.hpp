#pragma once

#include <cctype>
#include <csetjmp>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <png.h>

#include "nldiff/core.hpp"

namespace nldiff {

namespace detail {

// Next whitespace-separated token, skipping '#' comments. Leaves the
// terminating whitespace in the stream (P5 needs exactly one separator
// between the header and the samples).
inline std::string pnm_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (!std::isspace(c)) {
            tok.push_back(static_cast<char>(c));
            break;
        }
    }
    while ((c = in.peek()) != EOF && !std::isspace(c))
        tok.push_back(static_cast<char>(in.get()));
    if (tok.empty())
        throw format_error("PGM: truncated header");
    return tok;
}

inline unsigned pnm_uint(std::istream& in, const char* what) {
    const std::string tok = pnm_token(in);
    try {
        const unsigned long v = std::stoul(tok);
        return static_cast<unsigned>(v);
    } catch (const std::exception&) {
        throw format_error(std::string("PGM: bad ") + what + " '" + tok + "'");
    }
}

} // namespace detail

struct PgmImage {
    Image2D image;       // normalized to [0,1]
    unsigned maxval = 255;
};

inline PgmImage read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw format_error("cannot open '" + path + "'");
    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (m0 != 'P' || (m1 != '2' && m1 != '5'))
        throw format_error(path + ": not a PGM file");
    const bool binary = m1 == '5';
    const unsigned width = detail::pnm_uint(in, "width");
    const unsigned height = detail::pnm_uint(in, "height");
    const unsigned maxval = detail::pnm_uint(in, "maxval");
    if (width == 0 || height == 0)
        throw format_error(path + ": zero dimension");
    if (maxval == 0 || maxval > 65535)
        throw format_error(path + ": maxval out of range");

    std::vector<std::uint32_t> raw(static_cast<std::size_t>(width) * height);
    if (binary) {
        // exactly one whitespace byte after maxval, then samples
        const int sep = in.get();
        if (sep == EOF || !std::isspace(sep))
            throw format_error(path + ": bad header separator");
        const bool wide = maxval > 255;
        std::vector<unsigned char> buf(raw.size() * (wide ? 2 : 1));
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
        if (static_cast<std::size_t>(in.gcount()) != buf.size())
            throw format_error(path + ": truncated pixel data");
        for (std::size_t i = 0; i < raw.size(); ++i)
            raw[i] = wide ? (static_cast<std::uint32_t>(buf[2 * i]) << 8) | buf[2 * i + 1]
                          : buf[i];
    } else {
        for (auto& v : raw)
            v = detail::pnm_uint(in, "sample");
    }
    for (std::uint32_t v : raw)
        if (v > maxval)
            throw format_error(path + ": sample exceeds maxval");
    PgmImage out;
    out.maxval = maxval;
    out.image = normalize(raw, static_cast<int>(width), static_cast<int>(height), maxval);
    return out;
}

inline void write_pgm(const std::string& path, const Image2D& img, unsigned maxval = 255,
                      bool binary = true) {
    if (maxval == 0 || maxval > 65535)
        throw argument_error("write_pgm: maxval out of range");
    const std::vector<std::uint32_t> raw = quantize(img, maxval);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw format_error("cannot write '" + path + "'");
    out << (binary ? "P5" : "P2") << '\n'
        << img.width << ' ' << img.height << '\n'
        << maxval << '\n';
    if (binary) {
        const bool wide = maxval > 255;
        std::vector<unsigned char> buf;
        buf.reserve(raw.size() * (wide ? 2 : 1));
        for (std::uint32_t v : raw) {
            if (wide)
                buf.push_back(static_cast<unsigned char>(v >> 8)); // big-endian
            buf.push_back(static_cast<unsigned char>(v & 0xff));
        }
        out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    } else {
        for (int y = 0; y < img.height; ++y) {
            for (int x = 0; x < img.width; ++x) {
                out << raw[static_cast<std::size_t>(y) * img.width + x];
                out << (x + 1 == img.width ? '\n' : ' ');
            }
        }
    }
    if (!out)
        throw format_error("write failed for '" + path + "'");
}

/// 8-bit grayscale PNG only; anything else is an unsupported-format error.
inline Image2D read_png(const std::string& path) {
    std::unique_ptr<std::FILE, int (*)(std::FILE*)> fp(std::fopen(path.c_str(), "rb"), &std::fclose);
    if (!fp)
        throw format_error("cannot open '" + path + "'");
    png_byte header[8];
    if (std::fread(header, 1, 8, fp.get()) != 8 || png_sig_cmp(header, 0, 8) != 0)
        throw format_error(path + ": not a PNG file");

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw format_error("libpng init failed");
    }
    std::vector<png_bytep> rows;
    std::vector<unsigned char> data;
    Image2D img;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw format_error(path + ": corrupt PNG");
    }
    png_init_io(png, fp.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);
    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    const int color = png_get_color_type(png, info);
    const int depth = png_get_bit_depth(png, info);
    if (color != PNG_COLOR_TYPE_GRAY) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw format_error(path + ": unsupported PNG (grayscale 8-bit only)");
    }
    if (depth < 8)
        png_set_expand_gray_1_2_4_to_8(png);
    if (depth == 16) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw format_error(path + ": unsupported PNG (grayscale 8-bit only)");
    }
    png_read_update_info(png, info);

    data.resize(static_cast<std::size_t>(width) * height);
    rows.resize(height);
    for (png_uint_32 y = 0; y < height; ++y)
        rows[y] = data.data() + static_cast<std::size_t>(y) * width;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    std::vector<std::uint32_t> raw(data.begin(), data.end());
    img = normalize(raw, static_cast<int>(width), static_cast<int>(height), 255);
    return img;
}

inline void write_png(const std::string& path, const Image2D& img) {
    const std::vector<std::uint32_t> raw = quantize(img, 255);
    std::unique_ptr<std::FILE, int (*)(std::FILE*)> fp(std::fopen(path.c_str(), "wb"), &std::fclose);
    if (!fp)
        throw format_error("cannot write '" + path + "'");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw format_error("libpng init failed");
    }
    std::vector<unsigned char> data(raw.size());
    std::vector<png_bytep> rows(static_cast<std::size_t>(img.height));
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw format_error(path + ": PNG write failed");
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width),
                 static_cast<png_uint_32>(img.height), 8, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    for (std::size_t i = 0; i < raw.size(); ++i)
        data[i] = static_cast<unsigned char>(raw[i]);
    for (int y = 0; y < img.height; ++y)
        rows[static_cast<std::size_t>(y)] = data.data() + static_cast<std::size_t>(y) * img.width;
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

} // namespace nldiff

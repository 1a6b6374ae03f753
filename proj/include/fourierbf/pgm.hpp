#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fourierbf/image.hpp"

// 8-bit portable graymap I/O. Reading accepts binary (P5) and ASCII (P2)
// files with maxval up to 255; writing always emits binary P5 with
// maxval 255. Parse failures report the byte offset of the problem.

namespace fourierbf {

namespace detail {

[[noreturn]] inline void pgm_fail(size_t offset, const std::string& what) {
    throw std::runtime_error("pgm parse error at byte " + std::to_string(offset) + ": " + what);
}

struct PgmCursor {
    std::string_view bytes;
    size_t pos = 0;

    bool eof() const { return pos >= bytes.size(); }
    char peek() const { return bytes[pos]; }

    void skip_space_and_comments() {
        while (!eof()) {
            const char c = peek();
            if (c == '#') {
                while (!eof() && peek() != '\n') ++pos;
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' ||
                       c == '\f') {
                ++pos;
            } else {
                break;
            }
        }
    }

    long next_int(const char* name) {
        skip_space_and_comments();
        if (eof()) pgm_fail(pos, std::string("missing ") + name);
        if (peek() < '0' || peek() > '9')
            pgm_fail(pos, std::string("expected digit for ") + name);
        long value = 0;
        while (!eof() && peek() >= '0' && peek() <= '9') {
            value = value * 10 + (peek() - '0');
            if (value > 1'000'000'000) pgm_fail(pos, std::string(name) + " out of range");
            ++pos;
        }
        return value;
    }
};

}  // namespace detail

inline Image decode_pgm(std::string_view bytes) {
    detail::PgmCursor cur{bytes};
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2'))
        detail::pgm_fail(0, "not a P5 or P2 graymap");
    const bool binary = bytes[1] == '5';
    cur.pos = 2;

    const long width = cur.next_int("width");
    const long height = cur.next_int("height");
    const long maxval = cur.next_int("maxval");
    if (width < 1 || height < 1) detail::pgm_fail(cur.pos, "non-positive dimensions");
    if (width > 1 << 20 || height > 1 << 20) detail::pgm_fail(cur.pos, "dimensions out of range");
    if (maxval < 1 || maxval > 255) detail::pgm_fail(cur.pos, "maxval must be in [1, 255]");

    Image img(static_cast<int>(width), static_cast<int>(height));
    const size_t count = img.values.size();

    if (binary) {
        if (cur.eof()) detail::pgm_fail(cur.pos, "missing raster");
        const char sep = cur.peek();
        if (sep != ' ' && sep != '\t' && sep != '\r' && sep != '\n')
            detail::pgm_fail(cur.pos, "expected whitespace before raster");
        ++cur.pos;
        if (bytes.size() - cur.pos < count)
            detail::pgm_fail(bytes.size(), "truncated raster, expected " + std::to_string(count) +
                                               " bytes after header");
        for (size_t i = 0; i < count; ++i) {
            const unsigned char b = static_cast<unsigned char>(bytes[cur.pos + i]);
            if (b > maxval)
                detail::pgm_fail(cur.pos + i, "sample exceeds maxval");
            img.values[i] = b;
        }
    } else {
        for (size_t i = 0; i < count; ++i) {
            const long v = cur.next_int("sample");
            if (v > maxval) detail::pgm_fail(cur.pos, "sample exceeds maxval");
            img.values[i] = static_cast<double>(v);
        }
    }
    return img;
}

inline std::string encode_pgm(const Image& img) {
    if (img.width <= 0 || img.height <= 0)
        throw std::invalid_argument("encode_pgm: empty image");
    std::string out = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) +
                      "\n255\n";
    out.reserve(out.size() + img.values.size());
    for (const double v : img.values) {
        const double rounded = std::floor(v + 0.5);
        const double clamped = rounded < 0.0 ? 0.0 : (rounded > 255.0 ? 255.0 : rounded);
        out.push_back(static_cast<char>(static_cast<unsigned char>(clamped)));
    }
    return out;
}

inline Image read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path + " for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (!in.good() && !in.eof()) throw std::runtime_error("read failure on " + path);
    return decode_pgm(buf.str());
}

inline void write_pgm(const Image& img, const std::string& path) {
    const std::string bytes = encode_pgm(img);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failure on " + path);
}

}  // namespace fourierbf

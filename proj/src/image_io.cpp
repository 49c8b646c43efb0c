// Copyright 2026 The PAAS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "paas/image_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace paas {
namespace {

// Skips whitespace and '#' comment lines between PNM header tokens.
std::string next_token(std::istream& in) {
    std::string tok;
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (!std::isspace(c)) {
            break;
        }
        c = in.get();
    }
    while (c != EOF && !std::isspace(c)) {
        tok.push_back(static_cast<char>(c));
        c = in.get();
    }
    return tok;
}

int parse_int(std::istream& in, const std::string& what) {
    const std::string tok = next_token(in);
    if (tok.empty()) throw ParseError("truncated header: missing " + what);
    try {
        std::size_t pos = 0;
        const int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw ParseError("bad " + what + " token '" + tok + "'");
        return v;
    } catch (const std::logic_error&) {
        throw ParseError("bad " + what + " token '" + tok + "'");
    }
}

}  // namespace

void write_pgm(const std::string& path, const Plane& img, int bits) {
    if (bits != 8 && bits != 16) throw ParameterError("PGM bit depth must be 8 or 16");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);

    const int maxval = (1 << bits) - 1;
    out << "P5\n" << img.width << " " << img.height << "\n" << maxval << "\n";
    std::vector<unsigned char> row(static_cast<std::size_t>(img.width) * (bits / 8));
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            const double v = std::clamp(img.at(y, x), 0.0, 1.0);
            const auto q = static_cast<std::uint32_t>(std::lround(v * maxval));
            if (bits == 8) {
                row[x] = static_cast<unsigned char>(q);
            } else {
                row[2 * x] = static_cast<unsigned char>(q >> 8);  // big-endian
                row[2 * x + 1] = static_cast<unsigned char>(q & 0xFF);
            }
        }
        out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
    }
    if (!out) throw IoError("write failed: " + path);
}

Plane read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);

    if (next_token(in) != "P5") throw ParseError("not a binary PGM (P5): " + path);
    const int w = parse_int(in, "width");
    const int h = parse_int(in, "height");
    const int maxval = parse_int(in, "maxval");
    if (w <= 0 || h <= 0) throw ParseError("bad dimensions in " + path);
    if (maxval <= 0 || maxval > 65535) throw ParseError("bad maxval in " + path);
    // Exactly one whitespace byte separates the header from raster data.

    const int bytes = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> raster(static_cast<std::size_t>(w) * h * bytes);
    in.read(reinterpret_cast<char*>(raster.data()), static_cast<std::streamsize>(raster.size()));
    if (in.gcount() != static_cast<std::streamsize>(raster.size()))
        throw ParseError("truncated raster in " + path);

    Plane img(w, h);
    const double scale = 1.0 / maxval;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t i = (static_cast<std::size_t>(y) * w + x) * bytes;
            const std::uint32_t q = bytes == 1
                ? raster[i]
                : (static_cast<std::uint32_t>(raster[i]) << 8) | raster[i + 1];
            img.at(y, x) = q * scale;
        }
    }
    return img;
}

void write_pfm(const std::string& path, const Plane& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);

    out << "Pf\n" << img.width << " " << img.height << "\n-1.0\n";
    std::vector<float> row(static_cast<std::size_t>(img.width));
    // PFM stores rows bottom-to-top.
    for (int y = img.height - 1; y >= 0; --y) {
        for (int x = 0; x < img.width; ++x) row[x] = static_cast<float>(img.at(y, x));
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size() * sizeof(float)));
    }
    if (!out) throw IoError("write failed: " + path);
}

Plane read_pfm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);

    if (next_token(in) != "Pf") throw ParseError("not a grayscale PFM (Pf): " + path);
    const int w = parse_int(in, "width");
    const int h = parse_int(in, "height");
    const std::string scale_tok = next_token(in);
    if (scale_tok.empty()) throw ParseError("truncated header in " + path);
    const double scale = std::stod(scale_tok);
    if (w <= 0 || h <= 0) throw ParseError("bad dimensions in " + path);
    const bool little_endian = scale < 0;

    std::vector<unsigned char> raster(static_cast<std::size_t>(w) * h * sizeof(float));
    in.read(reinterpret_cast<char*>(raster.data()), static_cast<std::streamsize>(raster.size()));
    if (in.gcount() != static_cast<std::streamsize>(raster.size()))
        throw ParseError("truncated raster in " + path);

    Plane img(w, h);
    for (int y = 0; y < h; ++y) {
        const int src_y = h - 1 - y;  // stored bottom-to-top
        for (int x = 0; x < w; ++x) {
            unsigned char b[4];
            std::memcpy(b, &raster[(static_cast<std::size_t>(src_y) * w + x) * 4], 4);
            if (!little_endian) std::swap(b[0], b[3]), std::swap(b[1], b[2]);
            float f;
            std::memcpy(&f, b, 4);
            img.at(y, x) = f;
        }
    }
    return img;
}

}  // namespace paas

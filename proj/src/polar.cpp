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

#include "paas/polar.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace paas {

namespace {
constexpr std::array<int, 4> kAngles = {0, 45, 90, 135};
}

void MosaicPattern::validate() const {
    std::set<int> seen;
    for (const auto& row : angle)
        for (int a : row) seen.insert(a);
    if (seen != std::set<int>(kAngles.begin(), kAngles.end()))
        throw ParameterError("mosaic pattern must cover angles {0,45,90,135} exactly once");
}

std::array<int, 2> MosaicPattern::offset_of(int angle_deg) const {
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            if (angle[r][c] == angle_deg) return {r, c};
    throw ParameterError("angle not in pattern: " + std::to_string(angle_deg));
}

MosaicPattern MosaicPattern::parse(const std::string& text) {
    MosaicPattern p;
    std::istringstream in(text);
    std::string row_text;
    int r = 0;
    while (std::getline(in, row_text, ';')) {
        if (r >= 2) throw ParameterError("mosaic pattern needs exactly 2 rows: " + text);
        std::istringstream row(row_text);
        std::string cell;
        int c = 0;
        while (std::getline(row, cell, ',')) {
            if (c >= 2) throw ParameterError("mosaic pattern needs exactly 2 columns: " + text);
            try {
                p.angle[r][c] = std::stoi(cell);
            } catch (const std::logic_error&) {
                throw ParameterError("bad angle '" + cell + "' in pattern: " + text);
            }
            ++c;
        }
        if (c != 2) throw ParameterError("mosaic pattern needs exactly 2 columns: " + text);
        ++r;
    }
    if (r != 2) throw ParameterError("mosaic pattern needs exactly 2 rows: " + text);
    p.validate();
    return p;
}

std::string MosaicPattern::to_string() const {
    std::ostringstream out;
    out << angle[0][0] << "," << angle[0][1] << ";" << angle[1][0] << "," << angle[1][1];
    return out.str();
}

void MosaicFrame::validate() const {
    pattern.validate();
    if (plane.width < 2 || plane.height < 2 || plane.width % 2 != 0 || plane.height % 2 != 0)
        throw DimensionError("mosaic frame dimensions must be even and >= 2");
    for (double v : plane.data)
        if (!std::isfinite(v) || v < 0.0 || v > 1.0)
            throw DataError("mosaic values must be finite and in [0,1]");
}

void AngleImages::validate() const {
    if (!i0.same_size(i45) || !i0.same_size(i90) || !i0.same_size(i135))
        throw DimensionError("angle planes must share dimensions");
    for (const Plane* p : {&i0, &i45, &i90, &i135})
        for (double v : p->data)
            if (!std::isfinite(v) || v < 0.0) throw DataError("angle values must be finite and >= 0");
}

const Plane& AngleImages::by_angle(int angle_deg) const {
    switch (angle_deg) {
        case 0: return i0;
        case 45: return i45;
        case 90: return i90;
        case 135: return i135;
    }
    throw ParameterError("no such angle plane: " + std::to_string(angle_deg));
}

Plane& AngleImages::by_angle(int angle_deg) {
    return const_cast<Plane&>(static_cast<const AngleImages*>(this)->by_angle(angle_deg));
}

MosaicFrame mosaic_from_angles(const AngleImages& angles, const MosaicPattern& pattern) {
    pattern.validate();
    angles.validate();
    const Plane& ref = angles.i0;
    if (ref.width % 2 != 0 || ref.height % 2 != 0 || ref.width < 2 || ref.height < 2)
        throw DimensionError("mosaic requires even dimensions >= 2");

    MosaicFrame frame;
    frame.pattern = pattern;
    frame.plane = Plane(ref.width, ref.height);
    for (int y = 0; y < ref.height; ++y)
        for (int x = 0; x < ref.width; ++x)
            frame.plane.at(y, x) = angles.by_angle(pattern.angle[y % 2][x % 2]).at(y, x);
    return frame;
}

namespace {

// Bilinear reconstruction of one angle plane. Native samples of this angle
// sit on the lattice rows y ≡ oy (mod 2), cols x ≡ ox (mod 2). Missing
// columns are averages of the adjacent native columns, then missing rows
// averages of the adjacent native rows; at borders the single existing
// neighbor is replicated.
Plane demosaic_bilinear_one(const Plane& raw, int oy, int ox) {
    const int w = raw.width, h = raw.height;

    // Horizontal pass on native rows only.
    auto horiz = [&](int y, int x) -> double {
        if (x % 2 == ox) return raw.at(y, x);
        const int xl = x - 1, xr = x + 1;
        if (xl < 0) return raw.at(y, xr);
        if (xr >= w) return raw.at(y, xl);
        return 0.5 * (raw.at(y, xl) + raw.at(y, xr));
    };

    Plane out(w, h);
    for (int y = 0; y < h; ++y) {
        if (y % 2 == oy) {
            for (int x = 0; x < w; ++x) out.at(y, x) = horiz(y, x);
        } else {
            const int yu = y - 1, yd = y + 1;
            for (int x = 0; x < w; ++x) {
                if (yu < 0)
                    out.at(y, x) = horiz(yd, x);
                else if (yd >= h)
                    out.at(y, x) = horiz(yu, x);
                else
                    out.at(y, x) = 0.5 * (horiz(yu, x) + horiz(yd, x));
            }
        }
    }
    return out;
}

}  // namespace

AngleImages demosaic(const MosaicFrame& frame, DemosaicMethod method) {
    frame.validate();
    const Plane& raw = frame.plane;

    AngleImages out;
    for (int a : kAngles) {
        const auto [oy, ox] = frame.pattern.offset_of(a);
        Plane& dst = out.by_angle(a);
        if (method == DemosaicMethod::kNearest) {
            dst = Plane(raw.width, raw.height);
            for (int y = 0; y < raw.height; ++y)
                for (int x = 0; x < raw.width; ++x)
                    dst.at(y, x) = raw.at(2 * (y / 2) + oy, 2 * (x / 2) + ox);
        } else {
            dst = demosaic_bilinear_one(raw, oy, ox);
        }
    }
    return out;
}

StokesImage stokes(const AngleImages& angles) {
    angles.validate();
    const int w = angles.i0.width, h = angles.i0.height;
    StokesImage st{Plane(w, h), Plane(w, h), Plane(w, h)};
    for (std::size_t i = 0; i < st.s0.data.size(); ++i) {
        st.s0.data[i] = angles.i0.data[i] + angles.i90.data[i];
        st.q.data[i] = angles.i0.data[i] - angles.i90.data[i];
        st.u.data[i] = angles.i135.data[i] - angles.i45.data[i];
    }
    return st;
}

DolpImage dolp(const StokesImage& st, DolpMode mode, double eps) {
    if (eps <= 0.0) throw ParameterError("dolp eps must be positive");
    if (!st.s0.same_size(st.q) || !st.s0.same_size(st.u))
        throw DimensionError("stokes planes must share dimensions");

    DolpImage out{Plane(st.s0.width, st.s0.height), mode};
    for (std::size_t i = 0; i < out.values.data.size(); ++i) {
        const double s0 = st.s0.data[i];
        if (s0 < eps) {
            out.values.data[i] = 0.0;
            continue;
        }
        const double m = st.q.data[i] * st.q.data[i] + st.u.data[i] * st.u.data[i];
        out.values.data[i] =
            mode == DolpMode::kNormalized ? std::sqrt(m) / s0 : std::sqrt(m / s0);
    }
    return out;
}

}  // namespace paas

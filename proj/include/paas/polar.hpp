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

#ifndef PAAS_POLAR_HPP
#define PAAS_POLAR_HPP

#include <array>
#include <string>

#include "paas/image.hpp"

namespace paas {

// 2x2 super-pixel angle assignment of a polarization filter array.
// angle[r][c] gives the polarizer angle in degrees at super-pixel
// position (row r, col c); the four entries must cover {0,45,90,135}.
struct MosaicPattern {
    std::array<std::array<int, 2>, 2> angle{{{0, 45}, {90, 135}}};

    void validate() const;
    // Super-pixel (row, col) offset of the given angle.
    std::array<int, 2> offset_of(int angle_deg) const;

    // Parses "0,45;90,135" (rows separated by ';', columns by ',').
    static MosaicPattern parse(const std::string& text);
    std::string to_string() const;
};

// Raw single-plane PFA frame. Values in [0,1], even dimensions.
struct MosaicFrame {
    Plane plane;
    MosaicPattern pattern;

    void validate() const;
};

// The four full-resolution per-angle intensity planes.
struct AngleImages {
    Plane i0, i45, i90, i135;

    void validate() const;
    const Plane& by_angle(int angle_deg) const;
    Plane& by_angle(int angle_deg);
};

// Linear Stokes components: s0 = total intensity, q, u. Circular
// polarization is not modeled.
struct StokesImage {
    Plane s0, q, u;
};

enum class DolpMode {
    // sqrt(q^2+u^2)/s0, bounded in [0,1] for physical input.
    kNormalized,
    // sqrt((q^2+u^2)/s0), the intensity term inside the root.
    kPaperLiteral,
};

struct DolpImage {
    Plane values;
    DolpMode mode = DolpMode::kNormalized;
};

// Subsamples the four angle planes onto a single mosaic frame; the inverse
// of demosaicing at native sample sites. Dimensions must be even.
MosaicFrame mosaic_from_angles(const AngleImages& angles, const MosaicPattern& pattern);

enum class DemosaicMethod { kNearest, kBilinear };

// Reconstructs four full-resolution angle planes from a mosaic frame.
// Both methods preserve raw values exactly at each angle's native sites.
// kNearest replicates the sample of the containing super-pixel; kBilinear
// averages the nearest native samples along each axis, replicating at the
// borders.
AngleImages demosaic(const MosaicFrame& frame, DemosaicMethod method = DemosaicMethod::kBilinear);

// s0 = i0 + i90, q = i0 - i90, u = i135 - i45.
StokesImage stokes(const AngleImages& angles);

// Degree of linear polarization. Pixels with s0 < eps yield 0.
DolpImage dolp(const StokesImage& st, DolpMode mode = DolpMode::kNormalized, double eps = 1e-6);

}  // namespace paas

#endif  // PAAS_POLAR_HPP

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

#ifndef PAAS_IMAGE_HPP
#define PAAS_IMAGE_HPP

#include <vector>

#include "paas/error.hpp"

namespace paas {

// Single-channel image, row-major, double precision.
struct Plane {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    Plane() = default;
    Plane(int w, int h, double fill = 0.0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {
        if (w <= 0 || h <= 0) throw DimensionError("Plane dimensions must be positive");
    }

    double& at(int y, int x) { return data[static_cast<std::size_t>(y) * width + x]; }
    double at(int y, int x) const { return data[static_cast<std::size_t>(y) * width + x]; }

    bool same_size(const Plane& o) const { return width == o.width && height == o.height; }
};

struct Rect {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;

    bool inside(const Plane& p) const {
        return w > 0 && h > 0 && x >= 0 && y >= 0 && x + w <= p.width && y + h <= p.height;
    }
};

// Extracts a sub-plane. The rectangle must lie inside the image.
inline Plane crop(const Plane& p, const Rect& r) {
    if (!r.inside(p)) throw DimensionError("crop rectangle outside image");
    Plane out(r.w, r.h);
    for (int y = 0; y < r.h; ++y)
        for (int x = 0; x < r.w; ++x) out.at(y, x) = p.at(r.y + y, r.x + x);
    return out;
}

// Exact area-average resampling: each output pixel is the mean of the source
// region it covers, with fractional row/column overlap weights.
Plane resize_area(const Plane& src, int out_w, int out_h);

}  // namespace paas

#endif  // PAAS_IMAGE_HPP

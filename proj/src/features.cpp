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

#include "paas/features.hpp"

#include <cmath>

namespace paas {

StatTriple stat_triple(const Plane& image, const Rect& region) {
    if (!region.inside(image)) throw DimensionError("stat region outside image");

    const double n = static_cast<double>(region.w) * region.h;
    double sum = 0.0;
    for (int y = region.y; y < region.y + region.h; ++y)
        for (int x = region.x; x < region.x + region.w; ++x) sum += image.at(y, x);
    const double mean = sum / n;

    double m2 = 0.0, m4 = 0.0;
    for (int y = region.y; y < region.y + region.h; ++y)
        for (int x = region.x; x < region.x + region.w; ++x) {
            const double d = image.at(y, x) - mean;
            const double d2 = d * d;
            m2 += d2;
            m4 += d2 * d2;
        }
    m2 /= n;
    m4 /= n;

    if (m2 < 1e-18) throw DegenerateVarianceError("kurtosis undefined: region variance ~ 0");
    return {mean, std::sqrt(m2), m4 / (m2 * m2)};
}

FeatureVector lbp_histogram(const Plane& image, const Rect& region) {
    if (!region.inside(image)) throw DimensionError("lbp region outside image");
    if (region.w < 3 || region.h < 3) throw DimensionError("lbp region must be at least 3x3");

    // Clockwise ring starting at the top-left neighbor.
    static constexpr int kDy[8] = {-1, -1, -1, 0, 1, 1, 1, 0};
    static constexpr int kDx[8] = {-1, 0, 1, 1, 1, 0, -1, -1};

    FeatureVector fv;
    fv.descriptor = "lbp-256";
    fv.values.assign(256, 0.0);

    int count = 0;
    for (int y = region.y + 1; y < region.y + region.h - 1; ++y)
        for (int x = region.x + 1; x < region.x + region.w - 1; ++x) {
            const double c = image.at(y, x);
            unsigned code = 0;
            for (int k = 0; k < 8; ++k)
                if (image.at(y + kDy[k], x + kDx[k]) >= c) code |= 1u << (7 - k);
            fv.values[code] += 1.0;
            ++count;
        }
    for (double& v : fv.values) v /= count;
    return fv;
}

}  // namespace paas

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

#include "paas/image.hpp"

#include <algorithm>
#include <cmath>

namespace paas {

Plane resize_area(const Plane& src, int out_w, int out_h) {
    if (out_w <= 0 || out_h <= 0) throw DimensionError("resize target must be positive");
    if (out_w == src.width && out_h == src.height) return src;

    Plane out(out_w, out_h);
    const double sx = static_cast<double>(src.width) / out_w;
    const double sy = static_cast<double>(src.height) / out_h;

    for (int oy = 0; oy < out_h; ++oy) {
        const double y0 = oy * sy;
        const double y1 = (oy + 1) * sy;
        const int iy0 = static_cast<int>(std::floor(y0));
        const int iy1 = std::min(static_cast<int>(std::ceil(y1)), src.height);
        for (int ox = 0; ox < out_w; ++ox) {
            const double x0 = ox * sx;
            const double x1 = (ox + 1) * sx;
            const int ix0 = static_cast<int>(std::floor(x0));
            const int ix1 = std::min(static_cast<int>(std::ceil(x1)), src.width);

            double acc = 0.0;
            double area = 0.0;
            for (int y = iy0; y < iy1; ++y) {
                const double wy = std::min<double>(y + 1, y1) - std::max<double>(y, y0);
                if (wy <= 0.0) continue;
                for (int x = ix0; x < ix1; ++x) {
                    const double wx = std::min<double>(x + 1, x1) - std::max<double>(x, x0);
                    if (wx <= 0.0) continue;
                    acc += wy * wx * src.at(y, x);
                    area += wy * wx;
                }
            }
            out.at(oy, ox) = acc / area;
        }
    }
    return out;
}

}  // namespace paas

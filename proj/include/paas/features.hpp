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

#ifndef PAAS_FEATURES_HPP
#define PAAS_FEATURES_HPP

#include <string>
#include <vector>

#include "paas/image.hpp"

namespace paas {

struct StatTriple {
    double mean = 0.0;
    double std = 0.0;       // population, sqrt(m2)
    double kurtosis = 0.0;  // Pearson, m4/m2^2
};

struct FeatureVector {
    std::vector<double> values;
    std::string descriptor;  // stat-mean | stat-std | stat-kurtosis | lbp-256 | embedding-D
};

// Central-moment statistics over the region. Throws DegenerateVarianceError
// when m2 < 1e-18 (kurtosis undefined on constant regions).
StatTriple stat_triple(const Plane& image, const Rect& region);

// Normalized 256-bin histogram of 8-neighbor radius-1 LBP codes over the
// region interior. Bits clockwise from the top-left neighbor (MSB first),
// a bit is set iff neighbor >= center. Region must be at least 3x3.
FeatureVector lbp_histogram(const Plane& image, const Rect& region);

}  // namespace paas

#endif  // PAAS_FEATURES_HPP

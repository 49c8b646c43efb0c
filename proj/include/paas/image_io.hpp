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

#ifndef PAAS_IMAGE_IO_HPP
#define PAAS_IMAGE_IO_HPP

#include <string>

#include "paas/image.hpp"

namespace paas {

// Binary PGM (P5). Intensities in [0,1] are quantized to maxval levels on
// write and rescaled by 1/maxval on read. 16-bit samples are big-endian per
// the Netpbm convention.
void write_pgm(const std::string& path, const Plane& img, int bits = 16);
Plane read_pgm(const std::string& path);

// Grayscale PFM ("Pf"), 32-bit floats, little-endian (negative scale header),
// rows bottom-to-top.
void write_pfm(const std::string& path, const Plane& img);
Plane read_pfm(const std::string& path);

}  // namespace paas

#endif  // PAAS_IMAGE_IO_HPP

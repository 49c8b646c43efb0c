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

#ifndef PAAS_SYNTH_HPP
#define PAAS_SYNTH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "paas/image.hpp"
#include "paas/polar.hpp"
#include "paas/rng.hpp"

namespace paas {

enum class ThetaMode { kUniformRandom, kFixed };

// Synthetic material description: the polarization statistics of a class of
// presentation (genuine skin, print, screen replay, mask).
struct MaterialProfile {
    std::string name;
    std::string label;  // genuine | attack:print | attack:screen | attack:mask
    double rho_mean = 0.2;
    double rho_spread = 0.05;  // spatial variation of rho (contribution clamped to +/- 3 spreads)
    ThetaMode theta_mode = ThetaMode::kUniformRandom;
    double theta_deg = 0.0;  // used when theta_mode == kFixed
    double albedo_lo = 0.3;
    double albedo_hi = 0.6;
    double texture_scale = 8.0;  // smooth-noise correlation length, pixels
    double noise_sigma = 0.0;    // additive sensor noise std, intensity units

    void validate() const;
};

// Per-pixel ground-truth linear polarization state.
struct PolarizationField {
    Plane s0;     // total intensity in [0,1]
    Plane rho;    // degree of linear polarization in [0,1]
    Plane theta;  // polarization angle in [0,180) degrees
    Rect face_box;  // bounding box of the elliptical face region
};

struct ManifestRecord {
    std::string sample_id;
    std::string label;
    std::string material;
    std::string mosaic_path;
    std::string angle_paths[4];  // i0, i45, i90, i135
    std::string dolp_path;
    Rect crop;
    std::uint64_t seed = 0;
    std::string split;  // train | test
};

struct DatasetManifest {
    std::vector<ManifestRecord> records;
    std::string base_dir;  // paths in records are relative to this

    std::vector<const ManifestRecord*> split(const std::string& which) const;
};

// Smooth value noise in [0,1]: a seeded uniform lattice with spacing `scale`,
// bilinearly interpolated. Deterministic in (dims, scale, rng seed).
Plane value_noise(int width, int height, double scale, Rng& rng);

// Ground-truth scene for one sample: elliptical face of smooth albedo on a
// dark background, smooth rho around profile.rho_mean, theta per theta_mode.
// Identical (profile, dims, seed) give bit-identical fields.
PolarizationField make_field(const MaterialProfile& profile, int width, int height,
                             std::uint64_t seed);

// Malus-model rendering: I(a) = 0.5*s0*(1 + rho*cos(2*(a - theta))) per pixel
// for a in {0,45,90,135}, plus Gaussian noise, clipped to [0,1].
AngleImages render_angle_images(const PolarizationField& field, double noise_sigma,
                                std::uint64_t seed);

struct DatasetParams {
    int count_per_profile = 10;
    int width = 64;
    int height = 64;
    double split_ratio = 0.8;  // train fraction
    MosaicPattern pattern;
};

// Renders count_per_profile samples per profile through the mosaic sensor,
// writes mosaic/angle PGMs and the DOLP PFM per sample plus a JSONL
// manifest, and returns the manifest. Fully deterministic given the seed.
DatasetManifest generate_dataset(const std::vector<MaterialProfile>& profiles,
                                 const DatasetParams& params, const std::string& out_dir,
                                 std::uint64_t seed);

void write_manifest(const DatasetManifest& manifest, const std::string& path);
DatasetManifest read_manifest(const std::string& path);

// Profile pack (de)serialization; see docs for the JSON schema.
std::vector<MaterialProfile> profiles_from_json(const std::string& json_text);
std::string profiles_to_json(const std::vector<MaterialProfile>& profiles);

// The built-in packs: "default" (four materials of Table-style ordering) and
// "confusable" (genuine vs silicone mask with overlapping rho statistics).
std::vector<MaterialProfile> default_profile_pack();
std::vector<MaterialProfile> confusable_profile_pack();

}  // namespace paas

#endif  // PAAS_SYNTH_HPP

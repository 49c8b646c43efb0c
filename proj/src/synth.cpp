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

#include "paas/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include <json.hpp>

#include "paas/image_io.hpp"

namespace paas {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

void MaterialProfile::validate() const {
    if (name.empty()) throw ParameterError("profile name must not be empty");
    if (label != "genuine" && label != "attack:print" && label != "attack:screen" &&
        label != "attack:mask")
        throw ParameterError("bad profile label: " + label);
    if (rho_mean < 0.0 || rho_mean > 1.0) throw ParameterError("rho_mean must be in [0,1]");
    if (rho_spread < 0.0) throw ParameterError("rho_spread must be >= 0");
    if (albedo_lo > albedo_hi || albedo_lo < 0.0 || albedo_hi > 1.0)
        throw ParameterError("albedo range must satisfy 0 <= lo <= hi <= 1");
    if (texture_scale <= 0.0) throw ParameterError("texture_scale must be positive");
    if (noise_sigma < 0.0) throw ParameterError("noise_sigma must be >= 0");
}

std::vector<const ManifestRecord*> DatasetManifest::split(const std::string& which) const {
    std::vector<const ManifestRecord*> out;
    for (const auto& r : records)
        if (r.split == which) out.push_back(&r);
    return out;
}

Plane value_noise(int width, int height, double scale, Rng& rng) {
    if (width <= 0 || height <= 0) throw DimensionError("value_noise dims must be positive");
    if (scale <= 0.0) throw ParameterError("value_noise scale must be positive");

    const int nx = static_cast<int>(std::floor(width / scale)) + 2;
    const int ny = static_cast<int>(std::floor(height / scale)) + 2;
    std::vector<double> lattice(static_cast<std::size_t>(nx) * ny);
    for (double& v : lattice) v = rng.uniform();

    Plane out(width, height);
    for (int y = 0; y < height; ++y) {
        const double v = y / scale;
        const int iy = std::min(static_cast<int>(v), ny - 2);
        const double fy = v - iy;
        for (int x = 0; x < width; ++x) {
            const double u = x / scale;
            const int ix = std::min(static_cast<int>(u), nx - 2);
            const double fx = u - ix;
            const double a = lattice[static_cast<std::size_t>(iy) * nx + ix];
            const double b = lattice[static_cast<std::size_t>(iy) * nx + ix + 1];
            const double c = lattice[static_cast<std::size_t>(iy + 1) * nx + ix];
            const double d = lattice[static_cast<std::size_t>(iy + 1) * nx + ix + 1];
            out.at(y, x) = (1 - fy) * ((1 - fx) * a + fx * b) + fy * ((1 - fx) * c + fx * d);
        }
    }
    return out;
}

namespace {

// Centered smooth noise in [-3,3] (value noise rescaled); zero mean by
// construction of the uniform lattice.
Plane smooth_noise_signed(int width, int height, double scale, Rng& rng) {
    Plane n = value_noise(width, height, scale, rng);
    for (double& v : n.data) v = 3.0 * (2.0 * v - 1.0);
    return n;
}

constexpr double kBackgroundAlbedo = 0.05;

}  // namespace

PolarizationField make_field(const MaterialProfile& profile, int width, int height,
                             std::uint64_t seed) {
    profile.validate();
    if (width < 8 || height < 8 || width % 2 != 0 || height % 2 != 0)
        throw DimensionError("field dimensions must be even and >= 8");

    Rng albedo_rng(mix_seed(seed, 1));
    Rng rho_rng(mix_seed(seed, 2));
    Rng theta_rng(mix_seed(seed, 3));

    PolarizationField field;
    field.s0 = Plane(width, height);
    field.rho = Plane(width, height);
    field.theta = Plane(width, height);

    // Elliptical face region centered in the frame.
    const double cx = 0.5 * width, cy = 0.5 * height;
    const double rx = 0.35 * width, ry = 0.45 * height;
    field.face_box.x = std::max(0, static_cast<int>(std::floor(cx - rx)));
    field.face_box.y = std::max(0, static_cast<int>(std::floor(cy - ry)));
    field.face_box.w = std::min(width, static_cast<int>(std::ceil(cx + rx))) - field.face_box.x;
    field.face_box.h = std::min(height, static_cast<int>(std::ceil(cy + ry))) - field.face_box.y;

    const Plane albedo_noise = value_noise(width, height, profile.texture_scale, albedo_rng);
    const Plane rho_noise = smooth_noise_signed(width, height, profile.texture_scale, rho_rng);
    // The angle field varies on a longer length scale than the material
    // texture; a fast-turning theta would alias through the mosaic.
    const Plane theta_noise = value_noise(width, height, 3.0 * profile.texture_scale, theta_rng);

    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            const double ex = (x + 0.5 - cx) / rx;
            const double ey = (y + 0.5 - cy) / ry;
            // Soft ellipse edge (~3 px) so the rendered frames stay bandlimited
            // enough for the mosaic sensor.
            const double r = std::sqrt(ex * ex + ey * ey);
            const double d = (1.0 - r) * std::min(rx, ry);
            const double t = std::clamp(0.5 + d / 3.0, 0.0, 1.0);

            const double albedo =
                profile.albedo_lo + (profile.albedo_hi - profile.albedo_lo) * albedo_noise.at(y, x);
            field.s0.at(y, x) = kBackgroundAlbedo + t * (albedo - kBackgroundAlbedo);

            const double dev = std::clamp(profile.rho_spread * rho_noise.at(y, x),
                                          -3.0 * profile.rho_spread, 3.0 * profile.rho_spread);
            field.rho.at(y, x) = std::clamp(profile.rho_mean + dev, 0.0, 1.0);

            double th = profile.theta_mode == ThetaMode::kFixed
                            ? profile.theta_deg
                            : 180.0 * theta_noise.at(y, x);
            th = std::fmod(th, 180.0);
            if (th < 0.0) th += 180.0;
            field.theta.at(y, x) = th;
        }
    return field;
}

AngleImages render_angle_images(const PolarizationField& field, double noise_sigma,
                                std::uint64_t seed) {
    if (noise_sigma < 0.0) throw ParameterError("noise_sigma must be >= 0");
    const int w = field.s0.width, h = field.s0.height;
    if (!field.s0.same_size(field.rho) || !field.s0.same_size(field.theta))
        throw DimensionError("field planes must share dimensions");

    Rng noise_rng(mix_seed(seed, 4));
    constexpr double kDegToRad = std::numbers::pi / 180.0;
    constexpr int kAngles[4] = {0, 45, 90, 135};

    AngleImages out;
    for (int a : kAngles) out.by_angle(a) = Plane(w, h);

    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double s0 = field.s0.at(y, x);
            const double rho = field.rho.at(y, x);
            const double theta = field.theta.at(y, x);
            for (int a : kAngles) {
                double v = 0.5 * s0 * (1.0 + rho * std::cos(2.0 * kDegToRad * (a - theta)));
                if (noise_sigma > 0.0) v += noise_sigma * noise_rng.gaussian();
                out.by_angle(a).at(y, x) = std::clamp(v, 0.0, 1.0);
            }
        }
    return out;
}

namespace {

ThetaMode theta_mode_from_string(const std::string& s) {
    if (s == "uniform-random") return ThetaMode::kUniformRandom;
    if (s == "fixed") return ThetaMode::kFixed;
    throw ParameterError("bad theta_mode: " + s);
}

std::string theta_mode_to_string(ThetaMode m) {
    return m == ThetaMode::kUniformRandom ? "uniform-random" : "fixed";
}

MaterialProfile profile_from_json(const ordered_json& j) {
    MaterialProfile p;
    p.name = j.at("name").get<std::string>();
    p.label = j.at("label").get<std::string>();
    p.rho_mean = j.at("rho_mean").get<double>();
    p.rho_spread = j.at("rho_spread").get<double>();
    p.theta_mode = theta_mode_from_string(j.value("theta_mode", "uniform-random"));
    p.theta_deg = j.value("theta_deg", 0.0);
    const auto& alb = j.at("albedo_range");
    p.albedo_lo = alb.at(0).get<double>();
    p.albedo_hi = alb.at(1).get<double>();
    p.texture_scale = j.at("texture_scale").get<double>();
    p.noise_sigma = j.value("noise_sigma", 0.0);
    p.validate();
    return p;
}

ordered_json profile_to_json(const MaterialProfile& p) {
    ordered_json j;
    j["name"] = p.name;
    j["label"] = p.label;
    j["rho_mean"] = p.rho_mean;
    j["rho_spread"] = p.rho_spread;
    j["theta_mode"] = theta_mode_to_string(p.theta_mode);
    j["theta_deg"] = p.theta_deg;
    j["albedo_range"] = {p.albedo_lo, p.albedo_hi};
    j["texture_scale"] = p.texture_scale;
    j["noise_sigma"] = p.noise_sigma;
    return j;
}

}  // namespace

std::vector<MaterialProfile> profiles_from_json(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("bad profile pack JSON: ") + e.what());
    }
    std::vector<MaterialProfile> out;
    try {
        for (const auto& pj : j.at("profiles")) out.push_back(profile_from_json(pj));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad profile pack JSON: ") + e.what());
    }
    if (out.empty()) throw ParseError("profile pack has no profiles");
    return out;
}

std::string profiles_to_json(const std::vector<MaterialProfile>& profiles) {
    ordered_json j;
    j["profiles"] = ordered_json::array();
    for (const auto& p : profiles) j["profiles"].push_back(profile_to_json(p));
    return j.dump(2) + "\n";
}

std::vector<MaterialProfile> default_profile_pack() {
    std::vector<MaterialProfile> pack(4);
    pack[0] = {"genuine", "genuine", 0.15, 0.04, ThetaMode::kUniformRandom, 0.0, 0.30, 0.60, 12.0, 0.002};
    pack[1] = {"mask", "attack:mask", 0.25, 0.04, ThetaMode::kUniformRandom, 0.0, 0.30, 0.60, 10.0, 0.002};
    pack[2] = {"print", "attack:print", 0.45, 0.05, ThetaMode::kUniformRandom, 0.0, 0.30, 0.60, 10.0, 0.002};
    pack[3] = {"screen", "attack:screen", 0.90, 0.03, ThetaMode::kFixed, 30.0, 0.30, 0.60, 16.0, 0.002};
    return pack;
}

std::vector<MaterialProfile> confusable_profile_pack() {
    // Matched rho statistics and albedo; only the spatial correlation length
    // separates the classes, so scalar DOLP statistics carry little signal.
    std::vector<MaterialProfile> pack(2);
    pack[0] = {"genuine", "genuine", 0.20, 0.05, ThetaMode::kUniformRandom, 0.0, 0.30, 0.60, 12.0, 0.012};
    pack[1] = {"silicone-mask", "attack:mask", 0.20, 0.05, ThetaMode::kUniformRandom, 0.0, 0.30, 0.60, 5.0, 0.012};
    return pack;
}

namespace {

ordered_json record_to_json(const ManifestRecord& r) {
    ordered_json j;
    j["sample_id"] = r.sample_id;
    j["label"] = r.label;
    j["material"] = r.material;
    j["files"] = {{"mosaic", r.mosaic_path},
                  {"i0", r.angle_paths[0]},
                  {"i45", r.angle_paths[1]},
                  {"i90", r.angle_paths[2]},
                  {"i135", r.angle_paths[3]},
                  {"dolp", r.dolp_path}};
    j["crop"] = {{"x", r.crop.x}, {"y", r.crop.y}, {"w", r.crop.w}, {"h", r.crop.h}};
    j["seed"] = r.seed;
    j["split"] = r.split;
    return j;
}

ManifestRecord record_from_json(const ordered_json& j) {
    ManifestRecord r;
    r.sample_id = j.at("sample_id").get<std::string>();
    r.label = j.at("label").get<std::string>();
    r.material = j.at("material").get<std::string>();
    const auto& f = j.at("files");
    r.mosaic_path = f.at("mosaic").get<std::string>();
    r.angle_paths[0] = f.at("i0").get<std::string>();
    r.angle_paths[1] = f.at("i45").get<std::string>();
    r.angle_paths[2] = f.at("i90").get<std::string>();
    r.angle_paths[3] = f.at("i135").get<std::string>();
    r.dolp_path = f.at("dolp").get<std::string>();
    const auto& c = j.at("crop");
    r.crop = {c.at("x").get<int>(), c.at("y").get<int>(), c.at("w").get<int>(),
              c.at("h").get<int>()};
    r.seed = j.at("seed").get<std::uint64_t>();
    r.split = j.at("split").get<std::string>();
    return r;
}

}  // namespace

void write_manifest(const DatasetManifest& manifest, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open manifest for writing: " + path);
    for (const auto& r : manifest.records) out << record_to_json(r).dump() << "\n";
    if (!out) throw IoError("manifest write failed: " + path);
}

DatasetManifest read_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open manifest: " + path);

    DatasetManifest m;
    m.base_dir = fs::path(path).parent_path().string();
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            m.records.push_back(record_from_json(ordered_json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("bad manifest line " + std::to_string(lineno) + " in " + path + ": " +
                             e.what());
        }
    }
    return m;
}

DatasetManifest generate_dataset(const std::vector<MaterialProfile>& profiles,
                                 const DatasetParams& params, const std::string& out_dir,
                                 std::uint64_t seed) {
    if (profiles.empty()) throw ParameterError("need at least one profile");
    if (params.count_per_profile < 1) throw ParameterError("count_per_profile must be >= 1");
    if (params.split_ratio <= 0.0 || params.split_ratio >= 1.0)
        throw ParameterError("split_ratio must be in (0,1)");
    for (const auto& p : profiles) p.validate();
    params.pattern.validate();

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir + ": " + ec.message());

    DatasetManifest manifest;
    manifest.base_dir = out_dir;

    for (const auto& profile : profiles) {
        // Seeded choice of which sample indices go to the train split.
        const int n = params.count_per_profile;
        const int n_train =
            std::clamp(static_cast<int>(std::lround(params.split_ratio * n)), 0, n);
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        Rng split_rng(mix_seed(seed, hash_string(profile.name) ^ 0x5917ull));
        split_rng.shuffle(order);
        std::vector<bool> is_train(n, false);
        for (int i = 0; i < n_train; ++i) is_train[order[i]] = true;

        for (int i = 0; i < n; ++i) {
            ManifestRecord rec;
            {
                char idx[16];
                std::snprintf(idx, sizeof(idx), "%04d", i);
                rec.sample_id = profile.name + "_" + idx;
            }
            rec.label = profile.label;
            rec.material = profile.name;
            rec.split = is_train[i] ? "train" : "test";
            rec.seed = mix_seed(seed, hash_string(rec.sample_id));

            const PolarizationField field =
                make_field(profile, params.width, params.height, rec.seed);
            const AngleImages clean =
                render_angle_images(field, profile.noise_sigma, mix_seed(rec.seed, 7));
            const MosaicFrame frame = mosaic_from_angles(clean, params.pattern);
            const AngleImages rec_angles = demosaic(frame, DemosaicMethod::kBilinear);
            const DolpImage d = dolp(stokes(rec_angles));

            rec.mosaic_path = rec.sample_id + "_mosaic.pgm";
            rec.dolp_path = rec.sample_id + "_dolp.pfm";
            const char* suffix[4] = {"_i0.pgm", "_i45.pgm", "_i90.pgm", "_i135.pgm"};
            const int angles[4] = {0, 45, 90, 135};
            write_pgm((fs::path(out_dir) / rec.mosaic_path).string(), frame.plane, 16);
            for (int k = 0; k < 4; ++k) {
                rec.angle_paths[k] = rec.sample_id + suffix[k];
                write_pgm((fs::path(out_dir) / rec.angle_paths[k]).string(),
                          rec_angles.by_angle(angles[k]), 16);
            }
            write_pfm((fs::path(out_dir) / rec.dolp_path).string(), d.values);

            rec.crop = field.face_box;
            manifest.records.push_back(std::move(rec));
        }
    }

    write_manifest(manifest, (fs::path(out_dir) / "manifest.jsonl").string());
    return manifest;
}

}  // namespace paas

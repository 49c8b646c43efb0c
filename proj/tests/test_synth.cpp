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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <unistd.h>

#include "paas/synth.hpp"

using namespace paas;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("paas_synth_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

MaterialProfile flat_profile() {
    MaterialProfile p;
    p.name = "flat";
    p.label = "genuine";
    p.rho_mean = 0.3;
    p.rho_spread = 0.0;
    p.theta_mode = ThetaMode::kFixed;
    p.theta_deg = 0.0;
    p.albedo_lo = 0.5;
    p.albedo_hi = 0.5;
    p.texture_scale = 8.0;
    p.noise_sigma = 0.0;
    return p;
}

std::string file_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

double mean_over(const Plane& img, const Rect& box) {
    double sum = 0.0;
    for (int y = box.y; y < box.y + box.h; ++y)
        for (int x = box.x; x < box.x + box.w; ++x) sum += img.at(y, x);
    return sum / (static_cast<double>(box.w) * box.h);
}

}  // namespace

TEST_CASE("degenerate profile gives constant rho and masked constant albedo") {
    const PolarizationField f = make_field(flat_profile(), 32, 32, 5);
    for (double v : f.rho.data) CHECK(v == doctest::Approx(0.3).epsilon(1e-12));
    // Center of the ellipse: albedo 0.5; far corner: background.
    CHECK(f.s0.at(16, 16) == doctest::Approx(0.5));
    CHECK(f.s0.at(0, 0) == doctest::Approx(0.05));
    for (double v : f.theta.data) CHECK(v == 0.0);
}

TEST_CASE("make_field is deterministic") {
    MaterialProfile p = flat_profile();
    p.rho_spread = 0.05;
    p.albedo_lo = 0.3;
    p.albedo_hi = 0.7;
    p.theta_mode = ThetaMode::kUniformRandom;
    const PolarizationField a = make_field(p, 32, 32, 123);
    const PolarizationField b = make_field(p, 32, 32, 123);
    CHECK(a.s0.data == b.s0.data);
    CHECK(a.rho.data == b.rho.data);
    CHECK(a.theta.data == b.theta.data);
    const PolarizationField c = make_field(p, 32, 32, 124);
    CHECK(a.rho.data != c.rho.data);
}

TEST_CASE("rho sample mean stays near rho_mean") {
    MaterialProfile p = flat_profile();
    p.rho_mean = 0.4;
    p.rho_spread = 0.05;
    const PolarizationField f = make_field(p, 64, 64, 9);
    CHECK(mean_over(f.rho, f.face_box) == doctest::Approx(0.4).epsilon(0.05));
    CHECK(std::abs(mean_over(f.rho, f.face_box) - 0.4) <= 0.02);
    for (double v : f.rho.data) {
        CHECK(v >= 0.4 - 3 * 0.05 - 1e-12);
        CHECK(v <= 0.4 + 3 * 0.05 + 1e-12);
    }
}

TEST_CASE("make_field rejects bad dimensions") {
    CHECK_THROWS_AS(make_field(flat_profile(), 7, 32, 1), DimensionError);
    CHECK_THROWS_AS(make_field(flat_profile(), 32, 4, 1), DimensionError);
}

TEST_CASE("render: unpolarized field gives four equal planes at s0/2") {
    MaterialProfile p = flat_profile();
    p.rho_mean = 0.0;
    const PolarizationField f = make_field(p, 16, 16, 3);
    const AngleImages a = render_angle_images(f, 0.0, 1);
    for (std::size_t i = 0; i < a.i0.data.size(); ++i) {
        CHECK(a.i0.data[i] == doctest::Approx(0.5 * f.s0.data[i]).epsilon(1e-12));
        CHECK(a.i45.data[i] == doctest::Approx(a.i0.data[i]).epsilon(1e-12));
        CHECK(a.i90.data[i] == doctest::Approx(a.i0.data[i]).epsilon(1e-12));
        CHECK(a.i135.data[i] == doctest::Approx(a.i0.data[i]).epsilon(1e-12));
    }
}

TEST_CASE("render: fully polarized at theta=0") {
    PolarizationField f;
    f.s0 = Plane(8, 8, 1.0);
    f.rho = Plane(8, 8, 1.0);
    f.theta = Plane(8, 8, 0.0);
    const AngleImages a = render_angle_images(f, 0.0, 1);
    CHECK(a.i0.at(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a.i90.at(0, 0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(a.i45.at(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(a.i135.at(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("render: closed-form Malus values at rho=0.5 theta=30") {
    PolarizationField f;
    f.s0 = Plane(2, 2, 1.0);
    f.rho = Plane(2, 2, 0.5);
    f.theta = Plane(2, 2, 30.0);
    const AngleImages a = render_angle_images(f, 0.0, 1);
    CHECK(a.i0.at(0, 0) == doctest::Approx(0.625).epsilon(1e-8));
    CHECK(a.i45.at(0, 0) == doctest::Approx(0.71650635).epsilon(1e-7));
    CHECK(a.i90.at(0, 0) == doctest::Approx(0.375).epsilon(1e-8));
    CHECK(a.i135.at(0, 0) == doctest::Approx(0.28349365).epsilon(1e-7));
}

TEST_CASE("noise-free renders recover rho through stokes+dolp to 1e-12") {
    MaterialProfile p = flat_profile();
    p.rho_mean = 0.35;
    p.rho_spread = 0.05;
    p.albedo_lo = 0.3;
    p.albedo_hi = 0.7;
    p.theta_mode = ThetaMode::kUniformRandom;
    const PolarizationField f = make_field(p, 32, 32, 77);
    const AngleImages a = render_angle_images(f, 0.0, 1);
    const DolpImage d = dolp(stokes(a), DolpMode::kNormalized);
    for (std::size_t i = 0; i < d.values.data.size(); ++i)
        CHECK(std::abs(d.values.data[i] - f.rho.data[i]) <= 1e-12);
}

TEST_CASE("physicality: noise-free frames satisfy sqrt(q^2+u^2) <= s0") {
    MaterialProfile p = flat_profile();
    p.rho_mean = 0.8;
    p.rho_spread = 0.05;
    p.theta_mode = ThetaMode::kUniformRandom;
    const PolarizationField f = make_field(p, 32, 32, 13);
    const StokesImage st = stokes(render_angle_images(f, 0.0, 21));
    for (std::size_t i = 0; i < st.s0.data.size(); ++i) {
        const double lin = std::sqrt(st.q.data[i] * st.q.data[i] + st.u.data[i] * st.u.data[i]);
        CHECK(lin <= st.s0.data[i] + 1e-12);
    }
}

TEST_CASE("noisy renders stay clipped to [0,1]") {
    MaterialProfile p = flat_profile();
    p.noise_sigma = 0.2;
    const PolarizationField f = make_field(p, 16, 16, 2);
    const AngleImages a = render_angle_images(f, p.noise_sigma, 5);
    for (const Plane* pl : {&a.i0, &a.i45, &a.i90, &a.i135})
        for (double v : pl->data) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
}

TEST_CASE("mosaic + bilinear demosaic keeps mean DOLP error small on smooth fields") {
    MaterialProfile p = flat_profile();
    p.rho_mean = 0.4;
    p.rho_spread = 0.08;
    p.albedo_lo = 0.3;
    p.albedo_hi = 0.7;
    p.texture_scale = 8.0;
    p.theta_mode = ThetaMode::kUniformRandom;
    const PolarizationField f = make_field(p, 64, 64, 31);
    const AngleImages clean = render_angle_images(f, 0.0, 1);
    const AngleImages back = demosaic(mosaic_from_angles(clean, MosaicPattern{}));
    const DolpImage d = dolp(stokes(back));
    double err = 0.0;
    for (std::size_t i = 0; i < d.values.data.size(); ++i)
        err += std::abs(d.values.data[i] - f.rho.data[i]);
    err /= d.values.data.size();
    CHECK(err <= 0.02);
}

TEST_CASE("default pack orders mean DOLP as genuine < mask < print < screen") {
    std::map<std::string, double> means;
    for (const auto& p : default_profile_pack()) {
        const PolarizationField f = make_field(p, 64, 64, 55);
        const AngleImages a = render_angle_images(f, 0.0, 1);
        const DolpImage d = dolp(stokes(a));
        means[p.name] = mean_over(d.values, f.face_box);
    }
    CHECK(means["genuine"] < means["mask"]);
    CHECK(means["mask"] < means["print"]);
    CHECK(means["print"] < means["screen"]);
}

TEST_CASE("generate_dataset split arithmetic and bookkeeping") {
    TempDir tmp("split");
    DatasetParams params;
    params.count_per_profile = 10;
    params.width = 16;
    params.height = 16;
    params.split_ratio = 0.8;

    MaterialProfile g = flat_profile();
    const DatasetManifest m = generate_dataset({g}, params, tmp.path.string(), 3);
    CHECK(m.records.size() == 10);
    CHECK(m.split("train").size() == 8);
    CHECK(m.split("test").size() == 2);

    // Two profiles: unique ids, labels per profile.
    TempDir tmp2("two");
    MaterialProfile a = flat_profile();
    MaterialProfile b = flat_profile();
    b.name = "attack";
    b.label = "attack:print";
    params.count_per_profile = 5;
    const DatasetManifest m2 = generate_dataset({a, b}, params, tmp2.path.string(), 3);
    CHECK(m2.records.size() == 10);
    std::map<std::string, int> ids;
    for (const auto& r : m2.records) {
        ids[r.sample_id]++;
        CHECK((r.material == "flat" ? r.label == "genuine" : r.label == "attack:print"));
        for (const auto& rel :
             {r.mosaic_path, r.dolp_path, r.angle_paths[0], r.angle_paths[3]})
            CHECK(fs::exists(tmp2.path / rel));
    }
    for (const auto& [id, n] : ids) CHECK(n == 1);
}

TEST_CASE("generate_dataset is byte-identical under the same seed") {
    DatasetParams params;
    params.count_per_profile = 3;
    params.width = 16;
    params.height = 16;

    TempDir t1("d1"), t2("d2");
    generate_dataset({flat_profile()}, params, t1.path.string(), 42);
    generate_dataset({flat_profile()}, params, t2.path.string(), 42);

    for (const auto& entry : fs::directory_iterator(t1.path)) {
        const fs::path other = t2.path / entry.path().filename();
        REQUIRE(fs::exists(other));
        CHECK(file_bytes(entry.path()) == file_bytes(other));
    }
}

TEST_CASE("manifest JSONL round trip") {
    TempDir tmp("manifest");
    DatasetParams params;
    params.count_per_profile = 2;
    params.width = 16;
    params.height = 16;
    const DatasetManifest m = generate_dataset({flat_profile()}, params, tmp.path.string(), 8);
    const DatasetManifest back = read_manifest((tmp.path / "manifest.jsonl").string());
    REQUIRE(back.records.size() == m.records.size());
    for (std::size_t i = 0; i < m.records.size(); ++i) {
        CHECK(back.records[i].sample_id == m.records[i].sample_id);
        CHECK(back.records[i].seed == m.records[i].seed);
        CHECK(back.records[i].crop.w == m.records[i].crop.w);
        CHECK(back.records[i].split == m.records[i].split);
    }
}

TEST_CASE("profile pack JSON round trip and validation") {
    const auto pack = default_profile_pack();
    const auto back = profiles_from_json(profiles_to_json(pack));
    REQUIRE(back.size() == pack.size());
    for (std::size_t i = 0; i < pack.size(); ++i) {
        CHECK(back[i].name == pack[i].name);
        CHECK(back[i].rho_mean == pack[i].rho_mean);
        CHECK(back[i].texture_scale == pack[i].texture_scale);
    }
    CHECK_THROWS_AS(profiles_from_json("{not json"), ParseError);
    CHECK_THROWS_AS(profiles_from_json("{\"profiles\":[]}"), ParseError);
}

TEST_CASE("generate_dataset rejects unwritable output directories") {
    DatasetParams params;
    params.count_per_profile = 1;
    params.width = 16;
    params.height = 16;
    CHECK_THROWS_AS(generate_dataset({flat_profile()}, params, "/proc/paas_nope/x", 1), IoError);
}

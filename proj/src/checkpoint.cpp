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

#include "paas/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include <json.hpp>

namespace paas {

static_assert(std::endian::native == std::endian::little,
              "checkpoint blobs are written in host order and specified little-endian");

namespace {

constexpr char kMagic[8] = {'P', 'A', 'A', 'S', 'M', 'D', 'L', '\0'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
void put_u64(std::ostream& out, std::uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
std::uint32_t get_u32(std::istream& in, const std::string& path) {
    std::uint32_t v;
    if (!in.read(reinterpret_cast<char*>(&v), sizeof(v))) throw ParseError("truncated: " + path);
    return v;
}
std::uint64_t get_u64(std::istream& in, const std::string& path) {
    std::uint64_t v;
    if (!in.read(reinterpret_cast<char*>(&v), sizeof(v))) throw ParseError("truncated: " + path);
    return v;
}
void put_string(std::ostream& out, const std::string& s) {
    put_u64(out, s.size());
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}
std::string get_string(std::istream& in, const std::string& path) {
    const std::uint64_t len = get_u64(in, path);
    if (len > (1ull << 30)) throw ParseError("implausible block length in " + path);
    std::string s(len, '\0');
    if (!in.read(s.data(), static_cast<std::streamsize>(len)))
        throw ParseError("truncated: " + path);
    return s;
}

}  // namespace

void write_checkpoint(const std::string& path, const Checkpoint& ckpt) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out.write(kMagic, sizeof(kMagic));
    put_u32(out, kVersion);
    put_string(out, ckpt.architecture);
    put_string(out, ckpt.config);
    put_u64(out, ckpt.seed);
    put_u64(out, ckpt.params.size());
    out.write(reinterpret_cast<const char*>(ckpt.params.data()),
              static_cast<std::streamsize>(ckpt.params.size() * sizeof(double)));
    if (!out) throw IoError("write failed: " + path);
}

Checkpoint read_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);

    char magic[8];
    if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw ParseError("not a model checkpoint: " + path);
    const std::uint32_t version = get_u32(in, path);
    if (version != kVersion)
        throw ParseError("unsupported checkpoint version " + std::to_string(version) + ": " + path);

    Checkpoint ckpt;
    ckpt.architecture = get_string(in, path);
    ckpt.config = get_string(in, path);
    ckpt.seed = get_u64(in, path);
    const std::uint64_t n = get_u64(in, path);
    if (n > (1ull << 28)) throw ParseError("implausible parameter count in " + path);
    ckpt.params.resize(n);
    if (!in.read(reinterpret_cast<char*>(ckpt.params.data()),
                 static_cast<std::streamsize>(n * sizeof(double))))
        throw ParseError("truncated parameter blob: " + path);
    return ckpt;
}

void save_embedding_model(const std::string& path, const EmbeddingModel& model,
                          std::uint64_t seed, const std::string& config_json) {
    Checkpoint ckpt;
    ckpt.architecture = model.spec().to_json();
    ckpt.config = config_json;
    ckpt.seed = seed;
    ckpt.params = model.params();
    write_checkpoint(path, ckpt);
}

EmbeddingModel load_embedding_model(const std::string& path) {
    const Checkpoint ckpt = read_checkpoint(path);
    EmbeddingModel model(NetSpec::from_json(ckpt.architecture));
    if (ckpt.params.size() != model.param_count())
        throw ParseError("parameter blob does not match architecture: " + path);
    model.params() = ckpt.params;
    return model;
}

void save_svm_model(const std::string& path, const SvmModel& model, std::uint64_t seed) {
    const std::size_t dim = model.weights.size();
    if (model.scaler_mean.size() != dim || model.scaler_std.size() != dim)
        throw DimensionError("svm model scaler/weight dimension mismatch");

    nlohmann::ordered_json arch;
    arch["type"] = "linear-svm";
    arch["dim"] = dim;

    Checkpoint ckpt;
    ckpt.architecture = arch.dump();
    ckpt.seed = seed;
    // Layout: weights, bias, scaler means, scaler stds, lambda.
    ckpt.params = model.weights;
    ckpt.params.push_back(model.bias);
    ckpt.params.insert(ckpt.params.end(), model.scaler_mean.begin(), model.scaler_mean.end());
    ckpt.params.insert(ckpt.params.end(), model.scaler_std.begin(), model.scaler_std.end());
    ckpt.params.push_back(model.lambda);
    write_checkpoint(path, ckpt);
}

SvmModel load_svm_model(const std::string& path) {
    const Checkpoint ckpt = read_checkpoint(path);
    std::size_t dim = 0;
    try {
        const auto arch = nlohmann::json::parse(ckpt.architecture);
        if (arch.at("type").get<std::string>() != "linear-svm")
            throw ParseError("not an svm checkpoint: " + path);
        dim = arch.at("dim").get<std::size_t>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("bad svm architecture descriptor in " + path + ": " + e.what());
    }
    if (ckpt.params.size() != 3 * dim + 2)
        throw ParseError("svm parameter blob has wrong size: " + path);

    SvmModel model;
    auto it = ckpt.params.begin();
    model.weights.assign(it, it + dim);
    it += dim;
    model.bias = *it++;
    model.scaler_mean.assign(it, it + dim);
    it += dim;
    model.scaler_std.assign(it, it + dim);
    it += dim;
    model.lambda = *it;
    return model;
}

}  // namespace paas

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

#ifndef PAAS_CHECKPOINT_HPP
#define PAAS_CHECKPOINT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "paas/net.hpp"
#include "paas/svm.hpp"

namespace paas {

// Versioned binary model container:
//   magic "PAASMDL\0", u32 version, then three length-prefixed blocks:
//   architecture descriptor (JSON), config snapshot (JSON), and the
//   little-endian 64-bit float parameter blob; plus the training seed.
struct Checkpoint {
    std::string architecture;  // JSON
    std::string config;        // JSON snapshot, may be empty
    std::uint64_t seed = 0;
    std::vector<double> params;
};

void write_checkpoint(const std::string& path, const Checkpoint& ckpt);
Checkpoint read_checkpoint(const std::string& path);

void save_embedding_model(const std::string& path, const EmbeddingModel& model,
                          std::uint64_t seed, const std::string& config_json = "");
EmbeddingModel load_embedding_model(const std::string& path);

void save_svm_model(const std::string& path, const SvmModel& model, std::uint64_t seed);
SvmModel load_svm_model(const std::string& path);

}  // namespace paas

#endif  // PAAS_CHECKPOINT_HPP

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

#ifndef PAAS_NET_HPP
#define PAAS_NET_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "paas/error.hpp"

namespace paas {

// CHW tensor, double precision.
struct Tensor {
    int c = 0, h = 0, w = 0;
    std::vector<double> v;

    Tensor() = default;
    Tensor(int c_, int h_, int w_)
        : c(c_), h(h_), w(w_), v(static_cast<std::size_t>(c_) * h_ * w_, 0.0) {}

    double& at(int ci, int y, int x) {
        return v[(static_cast<std::size_t>(ci) * h + y) * w + x];
    }
    double at(int ci, int y, int x) const {
        return v[(static_cast<std::size_t>(ci) * h + y) * w + x];
    }
    std::size_t size() const { return v.size(); }
};

struct ConvStageSpec {
    int out_channels = 8;
    int stride = 2;
};

// Embedding network shape: 3x3/pad-1 conv stages with ReLU, global average
// pooling, then FC(hidden)+ReLU and FC(embedding_dim).
struct NetSpec {
    int input_side = 32;
    int input_channels = 1;
    std::vector<ConvStageSpec> convs = {{8, 2}, {16, 2}, {32, 2}, {64, 2}};
    int fc_hidden = 64;
    int embedding_dim = 32;

    void validate() const;
    std::string to_json() const;
    static NetSpec from_json(const std::string& text);
};

// Weight-shared encoder of the Siamese pipeline. Parameters live in one
// flat vector (conv weights+biases per stage, then the two FC layers) so
// the optimizer and checkpoints can treat the model as a point in R^n.
class EmbeddingModel {
public:
    // He-uniform fan-in weights, zero biases, seeded.
    EmbeddingModel(NetSpec spec, std::uint64_t init_seed);
    // All-zero parameters (tests, loading).
    explicit EmbeddingModel(NetSpec spec);

    const NetSpec& spec() const { return spec_; }
    std::vector<double>& params() { return params_; }
    const std::vector<double>& params() const { return params_; }
    std::size_t param_count() const { return params_.size(); }

    struct ForwardCache {
        Tensor input;
        std::vector<Tensor> conv_pre;   // pre-activation per stage
        std::vector<Tensor> conv_post;  // after ReLU
        std::vector<double> gap;
        std::vector<double> fc1_pre, fc1_post;
        std::vector<double> embedding;
    };

    std::vector<double> embed(const Tensor& x) const;
    void forward(const Tensor& x, ForwardCache& cache) const;

    // Accumulates d(loss)/d(params) into grad (same length as params) given
    // d(loss)/d(embedding). ReLU subgradient at 0 is 0.
    void backward(const ForwardCache& cache, const std::vector<double>& d_embedding,
                  std::vector<double>& grad) const;

private:
    NetSpec spec_;
    std::vector<double> params_;
};

double pair_distance(const std::vector<double>& e1, const std::vector<double>& e2);

// Eq.-style contrastive objective over a batch of (distance, same-class)
// observations: (1/2N) sum y*S + (1-y)*max(margin - S, 0), y=1 for
// same-class pairs.
struct DistanceLabel {
    double distance = 0.0;
    int same_class = 0;
};
double contrastive_loss(const std::vector<DistanceLabel>& batch, double margin);

}  // namespace paas

#endif  // PAAS_NET_HPP

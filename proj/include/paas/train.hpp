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

#ifndef PAAS_TRAIN_HPP
#define PAAS_TRAIN_HPP

#include <cstdint>
#include <vector>

#include "paas/image.hpp"
#include "paas/net.hpp"

namespace paas {

struct AugmentConfig {
    int resize_to = 36;
    int crop_to = 32;
    bool horizontal_flip = true;
};

struct TrainConfig {
    double margin = 1.0;
    double learning_rate = 1e-3;
    int epochs = 30;
    int batch_pairs = 16;
    std::uint64_t seed = 1;
    int input_side = 32;
    AugmentConfig augment;
    NetSpec net;

    void validate() const;
    std::string to_json() const;
    static TrainConfig from_json(const std::string& text);
};

// crop -> resize_to -> (training: seeded random crop_to window + horizontal
// flip; evaluation: centered window, no flip) -> area downsample to
// input_side. Returns a 1-channel tensor.
Tensor preprocess(const Plane& image, const Rect& crop_rect, const TrainConfig& config,
                  std::uint64_t seed, bool training);

struct PairSample {
    Tensor x1, x2;
    int same_class = 0;  // y = 1 iff same class
};

// Mean contrastive loss over the batch; accumulates exact analytic parameter
// gradients into grad. Subgradient 0 at the hinge kink and at distance 0.
double pair_batch_loss_gradients(const EmbeddingModel& model, const std::vector<PairSample>& batch,
                                 double margin, std::vector<double>& grad);

class Adam {
public:
    Adam(double lr, std::size_t n_params)
        : lr_(lr), m_(n_params, 0.0), v_(n_params, 0.0) {}

    void step(std::vector<double>& params, const std::vector<double>& grad);

private:
    double lr_;
    double beta1_ = 0.9, beta2_ = 0.999, eps_ = 1e-8;
    long t_ = 0;
    std::vector<double> m_, v_;
};

struct TrainSample {
    Plane image;
    Rect crop;
    bool genuine = false;
};

struct SiameseResult {
    EmbeddingModel model;
    std::vector<double> epoch_loss;
};

// Trains the encoder with Adam over balanced pair batches (half same-class).
// Deterministic given (samples, config). Throws DataError unless both
// classes are present.
SiameseResult train_siamese(const std::vector<TrainSample>& samples, const TrainConfig& config);

}  // namespace paas

#endif  // PAAS_TRAIN_HPP

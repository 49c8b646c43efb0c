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

#include "paas/train.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "paas/rng.hpp"

namespace paas {

void TrainConfig::validate() const {
    if (margin <= 0.0) throw ParameterError("margin must be positive");
    if (learning_rate <= 0.0) throw ParameterError("learning_rate must be positive");
    if (epochs < 0) throw ParameterError("epochs must be >= 0");
    if (batch_pairs < 1) throw ParameterError("batch_pairs must be >= 1");
    if (input_side < 4) throw ParameterError("input_side must be >= 4");
    if (augment.crop_to > augment.resize_to || augment.crop_to < 1)
        throw ParameterError("augment requires 1 <= crop_to <= resize_to");
    if (net.input_side != input_side)
        throw ParameterError("net.input_side must equal config.input_side");
    net.validate();
}

std::string TrainConfig::to_json() const {
    nlohmann::ordered_json j;
    j["margin"] = margin;
    j["learning_rate"] = learning_rate;
    j["epochs"] = epochs;
    j["batch_pairs"] = batch_pairs;
    j["seed"] = seed;
    j["input_side"] = input_side;
    j["augment"] = {{"resize_to", augment.resize_to},
                    {"crop_to", augment.crop_to},
                    {"horizontal_flip", augment.horizontal_flip}};
    j["net"] = nlohmann::ordered_json::parse(net.to_json());
    return j.dump();
}

TrainConfig TrainConfig::from_json(const std::string& text) {
    TrainConfig c;
    try {
        const auto j = nlohmann::ordered_json::parse(text);
        c.margin = j.at("margin").get<double>();
        c.learning_rate = j.at("learning_rate").get<double>();
        c.epochs = j.at("epochs").get<int>();
        c.batch_pairs = j.at("batch_pairs").get<int>();
        c.seed = j.at("seed").get<std::uint64_t>();
        c.input_side = j.at("input_side").get<int>();
        const auto& a = j.at("augment");
        c.augment.resize_to = a.at("resize_to").get<int>();
        c.augment.crop_to = a.at("crop_to").get<int>();
        c.augment.horizontal_flip = a.at("horizontal_flip").get<bool>();
        c.net = NetSpec::from_json(j.at("net").dump());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad train config JSON: ") + e.what());
    }
    c.validate();
    return c;
}

Tensor preprocess(const Plane& image, const Rect& crop_rect, const TrainConfig& config,
                  std::uint64_t seed, bool training) {
    if (!crop_rect.inside(image)) throw DimensionError("preprocess crop outside image");

    Plane p = crop(image, crop_rect);
    p = resize_area(p, config.augment.resize_to, config.augment.resize_to);

    const int slack = config.augment.resize_to - config.augment.crop_to;
    int ox = slack / 2, oy = slack / 2;
    bool flip = false;
    if (training) {
        Rng rng(mix_seed(seed, 11));
        ox = static_cast<int>(rng.below(slack + 1));
        oy = static_cast<int>(rng.below(slack + 1));
        flip = config.augment.horizontal_flip && rng.below(2) == 1;
    }
    p = crop(p, {ox, oy, config.augment.crop_to, config.augment.crop_to});
    if (flip) {
        for (int y = 0; y < p.height; ++y)
            for (int x = 0; x < p.width / 2; ++x) std::swap(p.at(y, x), p.at(y, p.width - 1 - x));
    }
    p = resize_area(p, config.input_side, config.input_side);

    Tensor t(1, p.height, p.width);
    t.v = std::move(p.data);
    return t;
}

double pair_batch_loss_gradients(const EmbeddingModel& model, const std::vector<PairSample>& batch,
                                 double margin, std::vector<double>& grad) {
    if (batch.empty()) throw ParameterError("empty pair batch");
    if (margin <= 0.0) throw ParameterError("margin must be positive");
    if (grad.size() != model.param_count()) grad.assign(model.param_count(), 0.0);

    const double inv_2n = 1.0 / (2.0 * static_cast<double>(batch.size()));
    double loss = 0.0;
    EmbeddingModel::ForwardCache c1, c2;
    for (const auto& pair : batch) {
        model.forward(pair.x1, c1);
        model.forward(pair.x2, c2);
        const double s = pair_distance(c1.embedding, c2.embedding);

        double d_s;  // d(loss)/d(distance)
        if (pair.same_class == 1) {
            loss += inv_2n * s;
            d_s = inv_2n;
        } else {
            loss += inv_2n * std::max(margin - s, 0.0);
            d_s = s < margin ? -inv_2n : 0.0;  // 0 at the kink s == margin
        }
        if (d_s == 0.0 || s == 0.0) continue;  // subgradient 0 at s == 0

        std::vector<double> d_e1(c1.embedding.size());
        std::vector<double> d_e2(c1.embedding.size());
        for (std::size_t i = 0; i < d_e1.size(); ++i) {
            const double g = d_s * (c1.embedding[i] - c2.embedding[i]) / s;
            d_e1[i] = g;
            d_e2[i] = -g;
        }
        model.backward(c1, d_e1, grad);
        model.backward(c2, d_e2, grad);
    }
    return loss;
}

void Adam::step(std::vector<double>& params, const std::vector<double>& grad) {
    if (params.size() != m_.size() || grad.size() != m_.size())
        throw DimensionError("Adam state size mismatch");
    ++t_;
    const double bc1 = 1.0 - std::pow(beta1_, t_);
    const double bc2 = 1.0 - std::pow(beta2_, t_);
    for (std::size_t i = 0; i < params.size(); ++i) {
        m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grad[i];
        v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grad[i] * grad[i];
        params[i] -= lr_ * (m_[i] / bc1) / (std::sqrt(v_[i] / bc2) + eps_);
    }
}

SiameseResult train_siamese(const std::vector<TrainSample>& samples, const TrainConfig& config) {
    config.validate();

    std::vector<std::size_t> genuine_idx, attack_idx;
    for (std::size_t i = 0; i < samples.size(); ++i)
        (samples[i].genuine ? genuine_idx : attack_idx).push_back(i);
    if (genuine_idx.empty() || attack_idx.empty())
        throw DataError("siamese training needs samples from both classes");

    SiameseResult result{EmbeddingModel(config.net, config.seed), {}};
    Adam opt(config.learning_rate, result.model.param_count());
    std::vector<double> grad(result.model.param_count(), 0.0);

    const int batches_per_epoch =
        std::max<int>(1, static_cast<int>(samples.size()) / config.batch_pairs);

    auto pick = [](Rng& rng, const std::vector<std::size_t>& pool) {
        return pool[rng.below(pool.size())];
    };
    auto pick_distinct = [](Rng& rng, const std::vector<std::size_t>& pool,
                            std::size_t first) {
        if (pool.size() < 2) return first;
        std::size_t second = pool[rng.below(pool.size() - 1)];
        if (second == first) second = pool[pool.size() - 1];
        return second;
    };

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        Rng rng(mix_seed(config.seed, 1000 + static_cast<std::uint64_t>(epoch)));
        double epoch_loss = 0.0;

        for (int batch_i = 0; batch_i < batches_per_epoch; ++batch_i) {
            std::vector<PairSample> batch(config.batch_pairs);
            for (int k = 0; k < config.batch_pairs; ++k) {
                std::size_t a, b;
                const bool same = k % 2 == 0;  // balanced: half same-class pairs
                if (same) {
                    const auto& pool = rng.below(2) == 0 ? genuine_idx : attack_idx;
                    a = pick(rng, pool);
                    b = pick_distinct(rng, pool, a);
                } else {
                    a = pick(rng, genuine_idx);
                    b = pick(rng, attack_idx);
                }
                batch[k].same_class = same ? 1 : 0;
                batch[k].x1 = preprocess(samples[a].image, samples[a].crop, config,
                                         rng.next_u64(), true);
                batch[k].x2 = preprocess(samples[b].image, samples[b].crop, config,
                                         rng.next_u64(), true);
            }
            std::fill(grad.begin(), grad.end(), 0.0);
            epoch_loss +=
                pair_batch_loss_gradients(result.model, batch, config.margin, grad);
            opt.step(result.model.params(), grad);
        }
        result.epoch_loss.push_back(epoch_loss / batches_per_epoch);
    }
    return result;
}

}  // namespace paas

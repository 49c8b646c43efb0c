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

#include "paas/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <thread>
#include <vector>

#include "paas/features.hpp"
#include "paas/image_io.hpp"

namespace paas {

namespace fs = std::filesystem;

Channel channel_from_string(const std::string& s) {
    if (s == "dolp") return Channel::kDolp;
    if (s == "gray" || s == "s0" || s == "s0-grayscale") return Channel::kS0Gray;
    throw ParameterError("unknown channel: " + s);
}

std::string channel_to_string(Channel c) { return c == Channel::kDolp ? "dolp" : "gray"; }

int worker_count() {
    const char* env = std::getenv("PAAS_THREADS");
    if (env == nullptr) return 1;
    const int n = std::atoi(env);
    return n >= 1 ? n : 1;
}

// Runs fn(i) for i in [0, n) on up to worker_count() threads. Output slots
// are preassigned, so results do not depend on scheduling.
template <typename Fn>
static void parallel_for(std::size_t n, Fn&& fn) {
    const int workers = std::min<int>(worker_count(), static_cast<int>(n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int w = 0; w < workers; ++w)
        threads.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    for (auto& t : threads) t.join();
}

Plane load_channel_plane(const ManifestRecord& record, const std::string& base_dir,
                         Channel channel) {
    const fs::path base(base_dir);
    if (channel == Channel::kDolp) return read_pfm((base / record.dolp_path).string());
    const Plane i0 = read_pgm((base / record.angle_paths[0]).string());
    const Plane i90 = read_pgm((base / record.angle_paths[2]).string());
    if (!i0.same_size(i90)) throw DimensionError("angle planes disagree for " + record.sample_id);
    Plane s0 = i0;
    // Half the total intensity, so the plane stays in [0,1] like the inputs.
    for (std::size_t i = 0; i < s0.data.size(); ++i)
        s0.data[i] = 0.5 * (i0.data[i] + i90.data[i]);
    return s0;
}

std::vector<TrainSample> load_train_samples(const DatasetManifest& manifest, Channel channel) {
    std::vector<TrainSample> out;
    for (const ManifestRecord* r : manifest.split("train")) {
        TrainSample s;
        s.image = load_channel_plane(*r, manifest.base_dir, channel);
        s.crop = r->crop;
        s.genuine = r->label == "genuine";
        out.push_back(std::move(s));
    }
    return out;
}

ScoreSet siamese_scores(const EmbeddingModel& model, const SvmModel& head,
                        const std::vector<const ManifestRecord*>& records,
                        const std::string& base_dir, Channel channel, const TrainConfig& config) {
    ScoreSet scores;
    scores.entries.resize(records.size());
    parallel_for(records.size(), [&](std::size_t i) {
        const ManifestRecord& r = *records[i];
        const Plane img = load_channel_plane(r, base_dir, channel);
        const Tensor x = preprocess(img, r.crop, config, 0, /*training=*/false);
        const std::vector<double> e = model.embed(x);
        scores.entries[i] = {r.sample_id, r.label == "genuine", decision(head, e)};
    });
    return scores;
}

MetricsRow evaluate_pipeline(const EmbeddingModel& model, const SvmModel& head,
                             const DatasetManifest& manifest, Channel channel,
                             const TrainConfig& config) {
    const auto test = manifest.split("test");
    if (test.empty()) throw DataError("manifest has no test split");
    const ScoreSet scores = siamese_scores(model, head, test, manifest.base_dir, channel, config);
    return metrics_from_scores(scores, channel_to_string(channel), "paas");
}

SvmModel train_svm_head(const EmbeddingModel& model, const DatasetManifest& manifest,
                        Channel channel, const TrainConfig& config, double lambda, int epochs,
                        std::uint64_t seed) {
    const auto train = manifest.split("train");
    if (train.empty()) throw DataError("manifest has no train split");

    std::vector<std::vector<double>> feats(train.size());
    parallel_for(train.size(), [&](std::size_t i) {
        const Plane img = load_channel_plane(*train[i], manifest.base_dir, channel);
        feats[i] = model.embed(preprocess(img, train[i]->crop, config, 0, /*training=*/false));
    });
    std::vector<int> labels;
    for (const ManifestRecord* r : train) labels.push_back(r->label == "genuine" ? 1 : -1);
    return train_svm(feats, labels, lambda, epochs, seed);
}

namespace {

double scalar_statistic(const Plane& img, const Rect& region, const std::string& statistic) {
    const StatTriple st = stat_triple(img, region);
    if (statistic == "mean") return st.mean;
    if (statistic == "std") return st.std;
    if (statistic == "kurtosis") return st.kurtosis;
    throw ParameterError("unknown statistic: " + statistic);
}

ScoreSet collect_scalar_scores(const std::vector<const ManifestRecord*>& records,
                               const std::string& base_dir, Channel channel,
                               const std::string& statistic, double sign) {
    ScoreSet scores;
    scores.entries.resize(records.size());
    parallel_for(records.size(), [&](std::size_t i) {
        const ManifestRecord& r = *records[i];
        const Plane img = load_channel_plane(r, base_dir, channel);
        scores.entries[i] = {r.sample_id, r.label == "genuine",
                             sign * scalar_statistic(img, r.crop, statistic)};
    });
    return scores;
}

}  // namespace

ScoreSet scalar_baseline_scores(const DatasetManifest& manifest, Channel channel,
                                const std::string& statistic) {
    const auto train = manifest.split("train");
    const auto test = manifest.split("test");
    if (train.empty() || test.empty()) throw DataError("manifest needs train and test splits");

    // Pick the orientation (higher = genuine) that works on the train split.
    const ScoreSet train_scores =
        collect_scalar_scores(train, manifest.base_dir, channel, statistic, +1.0);
    double sign = 1.0;
    {
        const double e_pos = eer(roc(train_scores));
        ScoreSet flipped = train_scores;
        for (auto& e : flipped.entries) e.score = -e.score;
        if (eer(roc(flipped)) < e_pos) sign = -1.0;
    }
    return collect_scalar_scores(test, manifest.base_dir, channel, statistic, sign);
}

ScoreSet lbp_baseline_scores(const DatasetManifest& manifest, Channel channel, double lambda,
                             int epochs, std::uint64_t seed) {
    const auto train = manifest.split("train");
    const auto test = manifest.split("test");
    if (train.empty() || test.empty()) throw DataError("manifest needs train and test splits");

    auto featurize = [&](const std::vector<const ManifestRecord*>& records) {
        std::vector<std::vector<double>> feats(records.size());
        parallel_for(records.size(), [&](std::size_t i) {
            const Plane img = load_channel_plane(*records[i], manifest.base_dir, channel);
            feats[i] = lbp_histogram(img, records[i]->crop).values;
        });
        return feats;
    };

    const auto train_feats = featurize(train);
    std::vector<int> train_labels;
    for (const ManifestRecord* r : train) train_labels.push_back(r->label == "genuine" ? 1 : -1);
    const SvmModel model = train_svm(train_feats, train_labels, lambda, epochs, seed);

    const auto test_feats = featurize(test);
    ScoreSet scores;
    for (std::size_t i = 0; i < test.size(); ++i)
        scores.entries.push_back(
            {test[i]->sample_id, test[i]->label == "genuine", decision(model, test_feats[i])});
    return scores;
}

}  // namespace paas

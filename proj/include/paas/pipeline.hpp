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

#ifndef PAAS_PIPELINE_HPP
#define PAAS_PIPELINE_HPP

#include <string>
#include <vector>

#include "paas/eval.hpp"
#include "paas/svm.hpp"
#include "paas/synth.hpp"
#include "paas/train.hpp"

namespace paas {

enum class Channel { kDolp, kS0Gray };

Channel channel_from_string(const std::string& s);
std::string channel_to_string(Channel c);

// Worker cap from PAAS_THREADS (defaults to 1 when unset or invalid).
int worker_count();

// Loads the named channel plane of a manifest record: the stored DOLP PFM,
// or the total intensity (i0+i90)/2 reconstructed from the angle PGMs.
Plane load_channel_plane(const ManifestRecord& record, const std::string& base_dir,
                         Channel channel);

std::vector<TrainSample> load_train_samples(const DatasetManifest& manifest, Channel channel);

// Embeds every record (evaluation-mode preprocessing) and scores it with the
// SVM head; deterministic regardless of worker count.
ScoreSet siamese_scores(const EmbeddingModel& model, const SvmModel& head,
                        const std::vector<const ManifestRecord*>& records,
                        const std::string& base_dir, Channel channel, const TrainConfig& config);

// Full learned-pipeline metrics on the manifest's test split.
MetricsRow evaluate_pipeline(const EmbeddingModel& model, const SvmModel& head,
                             const DatasetManifest& manifest, Channel channel,
                             const TrainConfig& config);

// Trains the linear classification head on eval-mode embeddings of the
// manifest's train split.
SvmModel train_svm_head(const EmbeddingModel& model, const DatasetManifest& manifest,
                        Channel channel, const TrainConfig& config, double lambda = 1e-3,
                        int epochs = 100, std::uint64_t seed = 1);

// Scalar statistic baselines (mean/std/kurtosis over the crop region of the
// channel image) as threshold classifiers. The sign making genuine score
// higher is chosen on the train split.
ScoreSet scalar_baseline_scores(const DatasetManifest& manifest, Channel channel,
                                const std::string& statistic);

// LBP-histogram features fed into a fresh linear SVM trained on the train
// split, scored on the test split.
ScoreSet lbp_baseline_scores(const DatasetManifest& manifest, Channel channel,
                             double lambda = 1e-3, int epochs = 100, std::uint64_t seed = 1);

}  // namespace paas

#endif  // PAAS_PIPELINE_HPP

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

#ifndef PAAS_EVAL_HPP
#define PAAS_EVAL_HPP

#include <string>
#include <vector>

namespace paas {

// Labeled decision scores; higher score = more genuine.
struct ScoreEntry {
    std::string sample_id;
    bool genuine = false;
    double score = 0.0;
};

struct ScoreSet {
    std::vector<ScoreEntry> entries;
};

// Empirical ROC. Points sorted by (fpr, tpr), starting at (0,0) and ending
// at (1,1); thresholds[i] is the score cutoff achieving points[i]
// (score >= threshold predicts genuine).
struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
};

struct RocCurve {
    std::vector<RocPoint> points;
    std::vector<double> thresholds;
};

// Descending sweep over the distinct score values. Genuine is the positive
// class. Throws DataError unless both classes are present.
RocCurve roc(const ScoreSet& scores);

// Equal error rate: FPR = FNR, linearly interpolated between the adjacent
// ROC points bracketing the crossing.
double eer(const RocCurve& curve);

// TPR at the largest achieved FPR <= target; linear interpolation when the
// curve strictly straddles the target.
double tpr_at_fpr(const RocCurve& curve, double fpr_target);

struct MetricsRow {
    std::string channel;
    std::string method;
    double eer = 0.0;
    double tpr_at_1e2 = 0.0;
    double tpr_at_1e3 = 0.0;
};

MetricsRow metrics_from_scores(const ScoreSet& scores, const std::string& channel,
                               const std::string& method);

}  // namespace paas

#endif  // PAAS_EVAL_HPP

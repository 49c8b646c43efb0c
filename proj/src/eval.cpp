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

#include "paas/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "paas/error.hpp"

namespace paas {

RocCurve roc(const ScoreSet& scores) {
    int n_pos = 0, n_neg = 0;
    for (const auto& e : scores.entries) {
        if (!std::isfinite(e.score)) throw DataError("non-finite score for " + e.sample_id);
        (e.genuine ? n_pos : n_neg)++;
    }
    if (n_pos == 0 || n_neg == 0) throw DataError("roc needs both genuine and attack scores");

    std::vector<const ScoreEntry*> sorted;
    sorted.reserve(scores.entries.size());
    for (const auto& e : scores.entries) sorted.push_back(&e);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const ScoreEntry* a, const ScoreEntry* b) { return a->score > b->score; });

    RocCurve curve;
    curve.points.push_back({0.0, 0.0});
    curve.thresholds.push_back(std::numeric_limits<double>::infinity());

    int tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        const double thresh = sorted[i]->score;
        // Consume every entry tied at this threshold before emitting a point.
        while (i < sorted.size() && sorted[i]->score == thresh) {
            (sorted[i]->genuine ? tp : fp)++;
            ++i;
        }
        curve.points.push_back({static_cast<double>(fp) / n_neg, static_cast<double>(tp) / n_pos});
        curve.thresholds.push_back(thresh);
    }
    return curve;
}

double eer(const RocCurve& curve) {
    if (curve.points.size() < 2) throw DataError("roc curve needs >= 2 points");
    // diff = FPR - FNR starts at -1 and ends at +1; find the sign change.
    for (std::size_t k = 1; k < curve.points.size(); ++k) {
        const auto& p0 = curve.points[k - 1];
        const auto& p1 = curve.points[k];
        const double d1 = p1.fpr - (1.0 - p1.tpr);
        if (d1 < 0.0) continue;
        const double d0 = p0.fpr - (1.0 - p0.tpr);
        const double denom = d1 - d0;
        const double alpha = denom > 0.0 ? -d0 / denom : 0.0;
        return std::clamp(p0.fpr + alpha * (p1.fpr - p0.fpr), 0.0, 1.0);
    }
    return 1.0;
}

double tpr_at_fpr(const RocCurve& curve, double fpr_target) {
    if (fpr_target < 0.0 || fpr_target > 1.0) throw ParameterError("fpr target must be in [0,1]");
    if (curve.points.size() < 2) throw DataError("roc curve needs >= 2 points");

    double best_tpr = 0.0;  // max TPR among points with fpr <= target
    double f1 = 0.0;
    std::size_t next = curve.points.size();
    for (std::size_t k = 0; k < curve.points.size(); ++k) {
        if (curve.points[k].fpr <= fpr_target) {
            best_tpr = std::max(best_tpr, curve.points[k].tpr);
            f1 = curve.points[k].fpr;
        } else {
            next = k;
            break;
        }
    }
    if (next == curve.points.size() || f1 == fpr_target) return best_tpr;
    // Strictly straddled: interpolate toward the first point past the target.
    const auto& p2 = curve.points[next];
    return best_tpr + (fpr_target - f1) / (p2.fpr - f1) * (p2.tpr - best_tpr);
}

MetricsRow metrics_from_scores(const ScoreSet& scores, const std::string& channel,
                               const std::string& method) {
    const RocCurve curve = roc(scores);
    return {channel, method, eer(curve), tpr_at_fpr(curve, 1e-2), tpr_at_fpr(curve, 1e-3)};
}

}  // namespace paas

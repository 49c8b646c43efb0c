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

#include "paas/svm.hpp"

#include <algorithm>
#include <cmath>

#include "paas/rng.hpp"

namespace paas {

std::vector<double> SvmModel::standardize(const std::vector<double>& x) const {
    if (x.size() != scaler_mean.size()) throw DimensionError("feature dimension mismatch");
    std::vector<double> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = (x[i] - scaler_mean[i]) / scaler_std[i];
    return z;
}

SvmModel train_svm(const std::vector<std::vector<double>>& features,
                   const std::vector<int>& labels, double lambda, int epochs,
                   std::uint64_t seed) {
    if (lambda <= 0.0) throw ParameterError("lambda must be positive");
    if (epochs < 1) throw ParameterError("epochs must be >= 1");
    if (features.size() != labels.size()) throw DimensionError("features/labels size mismatch");
    if (features.empty()) throw DataError("no training samples");

    const std::size_t dim = features[0].size();
    bool has_pos = false, has_neg = false;
    for (std::size_t i = 0; i < features.size(); ++i) {
        if (features[i].size() != dim) throw DimensionError("inconsistent feature dimensions");
        if (labels[i] == 1)
            has_pos = true;
        else if (labels[i] == -1)
            has_neg = true;
        else
            throw DataError("labels must be +1 or -1");
    }
    if (!has_pos || !has_neg) throw DataError("svm training needs both classes");

    SvmModel model;
    model.lambda = lambda;
    model.scaler_mean.assign(dim, 0.0);
    model.scaler_std.assign(dim, 1.0);

    const double n = static_cast<double>(features.size());
    for (std::size_t d = 0; d < dim; ++d) {
        double sum = 0.0;
        for (const auto& x : features) sum += x[d];
        model.scaler_mean[d] = sum / n;
        double var = 0.0;
        for (const auto& x : features) {
            const double dv = x[d] - model.scaler_mean[d];
            var += dv * dv;
        }
        const double sd = std::sqrt(var / n);
        if (sd > 1e-12) model.scaler_std[d] = sd;
    }

    std::vector<std::vector<double>> z(features.size());
    for (std::size_t i = 0; i < features.size(); ++i) z[i] = model.standardize(features[i]);

    std::vector<double> w(dim, 0.0);
    double b = 0.0;
    // Averaged second-half iterates; plain Pegasos endpoints oscillate.
    std::vector<double> w_avg(dim, 0.0);
    double b_avg = 0.0;
    long n_avg = 0;

    std::vector<std::size_t> order(features.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    long t = 0;
    const long total_steps = static_cast<long>(epochs) * static_cast<long>(features.size());
    for (int epoch = 0; epoch < epochs; ++epoch) {
        Rng rng(mix_seed(seed, 2000 + static_cast<std::uint64_t>(epoch)));
        rng.shuffle(order);
        for (std::size_t i : order) {
            ++t;
            const double eta = 1.0 / (lambda * static_cast<double>(t));
            const double y = labels[i];
            double dot = b;
            for (std::size_t d = 0; d < dim; ++d) dot += w[d] * z[i][d];
            const bool violates = y * dot < 1.0;

            const double shrink = 1.0 - eta * lambda;
            for (std::size_t d = 0; d < dim; ++d) {
                w[d] *= shrink;
                if (violates) w[d] += eta * y * z[i][d];
            }
            if (violates) b += eta * y;  // bias is not regularized

            if (t > total_steps / 2) {
                for (std::size_t d = 0; d < dim; ++d) w_avg[d] += w[d];
                b_avg += b;
                ++n_avg;
            }
        }
    }

    if (n_avg > 0) {
        for (std::size_t d = 0; d < dim; ++d) w[d] = w_avg[d] / n_avg;
        b = b_avg / n_avg;
    }
    model.weights = std::move(w);
    model.bias = b;
    return model;
}

double decision(const SvmModel& model, const std::vector<double>& x) {
    const std::vector<double> z = model.standardize(x);
    if (z.size() != model.weights.size()) throw DimensionError("weight dimension mismatch");
    double dot = model.bias;
    for (std::size_t d = 0; d < z.size(); ++d) dot += model.weights[d] * z[d];
    return dot;
}

double svm_objective(const SvmModel& model, const std::vector<std::vector<double>>& features,
                     const std::vector<int>& labels) {
    if (features.size() != labels.size() || features.empty())
        throw DataError("bad objective inputs");
    double reg = 0.0;
    for (double wd : model.weights) reg += wd * wd;
    reg *= 0.5 * model.lambda;

    double hinge = 0.0;
    for (std::size_t i = 0; i < features.size(); ++i)
        hinge += std::max(0.0, 1.0 - labels[i] * decision(model, features[i]));
    return reg + hinge / static_cast<double>(features.size());
}

}  // namespace paas

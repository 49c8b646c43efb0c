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

#ifndef PAAS_SVM_HPP
#define PAAS_SVM_HPP

#include <cstdint>
#include <vector>

#include "paas/error.hpp"

namespace paas {

// Linear SVM with per-dimension standardization fitted on the training set.
// Dimensions with ~zero variance pass through unscaled.
struct SvmModel {
    std::vector<double> weights;
    double bias = 0.0;
    std::vector<double> scaler_mean;
    std::vector<double> scaler_std;  // 1.0 for degenerate dimensions
    double lambda = 1e-3;

    std::vector<double> standardize(const std::vector<double>& x) const;
};

// Minimizes lambda/2*||w||^2 + (1/n) sum max(0, 1 - y_i*(w.x_i + b)) by
// seeded stochastic subgradient with step 1/(lambda*t); the returned model
// averages the iterates of the second half of the run. Labels are +1
// (genuine) / -1 (attack). Deterministic given (data, lambda, epochs, seed).
SvmModel train_svm(const std::vector<std::vector<double>>& features,
                   const std::vector<int>& labels, double lambda = 1e-3, int epochs = 100,
                   std::uint64_t seed = 1);

// w . standardize(x) + b. Sign is the predicted class; the raw value is the
// ROC score (higher = more genuine).
double decision(const SvmModel& model, const std::vector<double>& x);

// Regularized hinge objective of the model on standardized data (tests and
// diagnostics).
double svm_objective(const SvmModel& model, const std::vector<std::vector<double>>& features,
                     const std::vector<int>& labels);

}  // namespace paas

#endif  // PAAS_SVM_HPP

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "paas/rng.hpp"
#include "paas/svm.hpp"

using namespace paas;

namespace {

// Dense (w1, w2, b) grid search of the standardized hinge objective.
double grid_best_objective(const SvmModel& trained, const std::vector<std::vector<double>>& x,
                           const std::vector<int>& y) {
    double best = 1e18;
    SvmModel probe = trained;  // reuse the scaler so both sides share the space
    for (double w1 = -4.0; w1 <= 4.0; w1 += 0.05)
        for (double w2 = -4.0; w2 <= 4.0; w2 += 0.05)
            for (double b = -2.0; b <= 2.0; b += 0.05) {
                probe.weights = {w1, w2};
                probe.bias = b;
                best = std::min(best, svm_objective(probe, x, y));
            }
    return best;
}

std::pair<std::vector<std::vector<double>>, std::vector<int>> separable_2d(Rng& rng, int n) {
    std::vector<std::vector<double>> x;
    std::vector<int> y;
    for (int i = 0; i < n; ++i) {
        const bool pos = i % 2 == 0;
        const double cx = pos ? 2.0 : -2.0;
        x.push_back({cx + rng.uniform(-0.5, 0.5), rng.uniform(-1.0, 1.0)});
        y.push_back(pos ? 1 : -1);
    }
    return {x, y};
}

}  // namespace

TEST_CASE("separable 1-D pair gets the signs right") {
    const std::vector<std::vector<double>> x = {{2.0}, {-2.0}};
    const std::vector<int> y = {1, -1};
    const SvmModel m = train_svm(x, y, 0.01, 200, 1);
    CHECK(decision(m, {2.0}) > 0.0);
    CHECK(decision(m, {-2.0}) < 0.0);
}

TEST_CASE("duplicating every sample leaves the sign pattern unchanged") {
    Rng rng(3);
    auto [x, y] = separable_2d(rng, 8);
    const SvmModel base = train_svm(x, y, 0.01, 300, 7);

    auto x2 = x;
    auto y2 = y;
    x2.insert(x2.end(), x.begin(), x.end());
    y2.insert(y2.end(), y.begin(), y.end());
    const SvmModel doubled = train_svm(x2, y2, 0.01, 300, 7);

    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(std::signbit(decision(base, x[i])) == std::signbit(decision(doubled, x[i])));
}

TEST_CASE("trained objective is within 1% of a dense grid optimum") {
    Rng rng(5);
    auto [x, y] = separable_2d(rng, 8);
    const SvmModel m = train_svm(x, y, 0.05, 2000, 11);
    const double trained = svm_objective(m, x, y);
    const double best = grid_best_objective(m, x, y);
    CHECK(trained <= best * 1.01 + 1e-9);
}

TEST_CASE("decision equals bias at the training mean and is b when w=0") {
    Rng rng(9);
    auto [x, y] = separable_2d(rng, 10);
    SvmModel m = train_svm(x, y, 0.01, 100, 3);

    std::vector<double> mean(2, 0.0);
    for (const auto& xi : x)
        for (int d = 0; d < 2; ++d) mean[d] += xi[d] / x.size();
    CHECK(decision(m, mean) == doctest::Approx(m.bias).epsilon(1e-9));

    m.weights = {0.0, 0.0};
    for (const auto& xi : x) CHECK(decision(m, xi) == m.bias);
}

TEST_CASE("decision matches an independent dot-product recomputation") {
    Rng rng(13);
    SvmModel m;
    m.weights.resize(16);
    m.scaler_mean.resize(16);
    m.scaler_std.resize(16);
    for (int d = 0; d < 16; ++d) {
        m.weights[d] = rng.uniform(-1, 1);
        m.scaler_mean[d] = rng.uniform(-1, 1);
        m.scaler_std[d] = rng.uniform(0.5, 2.0);
    }
    m.bias = rng.uniform(-1, 1);
    std::vector<double> x(16);
    for (double& v : x) v = rng.uniform(-2, 2);

    double expect = m.bias;
    for (int d = 0; d < 16; ++d)
        expect += m.weights[d] * (x[d] - m.scaler_mean[d]) / m.scaler_std[d];
    CHECK(decision(m, x) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("uniform feature rescaling does not change decisions") {
    Rng rng(17);
    auto [x, y] = separable_2d(rng, 12);
    const SvmModel base = train_svm(x, y, 0.01, 300, 5);

    auto scaled = x;
    for (auto& xi : scaled)
        for (double& v : xi) v *= 37.5;
    const SvmModel rescaled = train_svm(scaled, y, 0.01, 300, 5);

    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(decision(base, x[i]) == doctest::Approx(decision(rescaled, scaled[i])).epsilon(1e-9));
}

TEST_CASE("objective trends downward over epochs on separable data") {
    Rng rng(21);
    auto [x, y] = separable_2d(rng, 10);
    double prev = 1e18;
    for (int epochs : {5, 20, 80, 320}) {
        const SvmModel m = train_svm(x, y, 0.05, epochs, 9);
        const double obj = svm_objective(m, x, y);
        CHECK(obj <= prev * 1.05 + 1e-12);  // nonincreasing within 5% noise
        prev = obj;
    }
}

TEST_CASE("training is deterministic") {
    Rng rng(23);
    auto [x, y] = separable_2d(rng, 10);
    const SvmModel a = train_svm(x, y, 0.01, 100, 31);
    const SvmModel b = train_svm(x, y, 0.01, 100, 31);
    CHECK(a.weights == b.weights);
    CHECK(a.bias == b.bias);
}

TEST_CASE("degenerate dimensions pass through unscaled") {
    const std::vector<std::vector<double>> x = {{1.0, 5.0}, {-1.0, 5.0}, {2.0, 5.0}, {-2.0, 5.0}};
    const std::vector<int> y = {1, -1, 1, -1};
    const SvmModel m = train_svm(x, y, 0.01, 100, 1);
    CHECK(m.scaler_std[1] == 1.0);
}

TEST_CASE("error paths") {
    CHECK_THROWS_AS(train_svm({{1.0}}, {1}, 0.01, 10, 1), DataError);          // one class
    CHECK_THROWS_AS(train_svm({{1.0}, {2.0}}, {1, 2}, 0.01, 10, 1), DataError);  // bad label
    CHECK_THROWS_AS(train_svm({{1.0}, {-1.0}}, {1, -1}, -1.0, 10, 1), ParameterError);
    SvmModel m = train_svm({{1.0}, {-1.0}}, {1, -1}, 0.01, 10, 1);
    CHECK_THROWS_AS(decision(m, {1.0, 2.0}), DimensionError);
}

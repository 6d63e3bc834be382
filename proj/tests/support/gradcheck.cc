// Copyright 2026 The codemix Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gradcheck.h"

#include <algorithm>
#include <cmath>

namespace codemix::synth {

DenseParameters random_parameters(Rng& rng, std::uint32_t hash_dim, double scale) {
  DenseParameters p(hash_dim);
  for (double& w : p.weights) w = (2.0 * rng.uniform_real() - 1.0) * scale;
  for (double& b : p.bias) b = (2.0 * rng.uniform_real() - 1.0) * scale;
  return p;
}

std::vector<Example> random_batch(Rng& rng, std::uint32_t hash_dim,
                                  std::size_t size) {
  std::vector<std::uint32_t> pool;
  for (int i = 0; i < 24; ++i) pool.push_back(static_cast<std::uint32_t>(rng.uniform(hash_dim)));
  std::vector<Example> batch(size);
  for (Example& e : batch) {
    const std::size_t n = 1 + rng.uniform(12);
    for (std::size_t i = 0; i < n; ++i) e.features.push_back(pool[rng.uniform(pool.size())]);
    e.label = kAllLabels[rng.uniform(kNumLabels)];
  }
  return batch;
}

namespace {

double relative_error(double a, double n, double floor) {
  return std::abs(a - n) / std::max({std::abs(a), std::abs(n), floor});
}

}  // namespace

GradCheckResult check_gradient(const DenseParameters& params,
                               const std::vector<Example>& batch, double l2,
                               double step, double floor) {
  const LossGradient analytic = loss_and_gradient(params, batch, l2);
  DenseParameters probe = params;
  auto loss_at = [&]() { return loss_and_gradient(probe, batch, l2).loss; };
  GradCheckResult result;
  auto check = [&](double& coordinate, double grad) {
    const double saved = coordinate;
    coordinate = saved + step;
    const double up = loss_at();
    coordinate = saved - step;
    const double down = loss_at();
    coordinate = saved;
    const double numeric = (up - down) / (2.0 * step);
    result.max_relative_error =
        std::max(result.max_relative_error, relative_error(grad, numeric, floor));
    ++result.coordinates;
  };
  for (const auto& [row, grad] : analytic.rows) {
    for (std::size_t k = 0; k < kNumLabels; ++k) check(probe.weight(row, k), grad[k]);
  }
  for (std::size_t k = 0; k < kNumLabels; ++k) check(probe.bias[k], analytic.bias[k]);
  return result;
}

}  // namespace codemix::synth

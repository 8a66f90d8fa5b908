//
// Copyright 2026 The DPSketch Authors
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
//

#include "dpsketch/dp.hpp"

#include <cmath>
#include <stdexcept>

namespace dpsketch {

PrivacyBudget::PrivacyBudget(double r) : rho(r) {
  if (!(r >= 0)) {  // rejects NaN and negative values
    throw std::invalid_argument("rho must be non-negative");
  }
}

double L2Sensitivity(int rows) {
  if (rows < 1) {
    throw std::invalid_argument("rows must be >= 1");
  }
  return std::sqrt(2.0 * rows);
}

double CalibrateSigma(int rows, const PrivacyBudget& budget) {
  if (rows < 1) {
    throw std::invalid_argument("rows must be >= 1");
  }
  if (!(budget.rho > 0)) {
    throw std::invalid_argument("noise calibration requires rho > 0");
  }
  if (std::isinf(budget.rho)) return 0.0;
  return std::sqrt(static_cast<double>(rows) / budget.rho);
}

double NoiseBoundE(int rows, int cols, double beta,
                   const PrivacyBudget& budget) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("rows and cols must be >= 1");
  }
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("beta must lie in (0, 1)");
  }
  const double sigma = CalibrateSigma(rows, budget);
  return sigma *
         std::sqrt(2.0 * std::log(4.0 * rows * static_cast<double>(cols) /
                                  beta));
}

double ZcdpToDp(const PrivacyBudget& budget, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  return budget.rho + 2.0 * std::sqrt(budget.rho * std::log(1.0 / delta));
}

double SplitBudget(const PrivacyBudget& budget, int parts) {
  if (parts < 1) {
    throw std::invalid_argument("parts must be >= 1");
  }
  return budget.rho / parts;
}

NoiseProfile NoiseProfile::For(const SketchParams& params,
                               const PrivacyBudget& budget) {
  NoiseProfile profile;
  profile.sigma = CalibrateSigma(params.rows, budget);
  profile.shift_e = params.variant == SketchVariant::kCountMin
                        ? NoiseBoundE(params.rows, params.cols, params.beta,
                                      budget)
                        : 0.0;
  profile.rows = params.rows;
  profile.cols = params.cols;
  profile.beta = params.beta;
  return profile;
}

double GaussianSampler::NextUniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double GaussianSampler::NextUnit() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * NextUniform() - 1.0;
    v = 2.0 * NextUniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

double GaussianSampler::Sample(double mean, double sigma) {
  if (sigma < 0 || std::isnan(sigma)) {
    throw std::invalid_argument("sigma must be >= 0");
  }
  if (sigma == 0) return mean;
  return mean + sigma * NextUnit();
}

}  // namespace dpsketch

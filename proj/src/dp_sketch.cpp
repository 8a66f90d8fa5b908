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

#include "dpsketch/dp_sketch.hpp"

#include <stdexcept>

#include "dpsketch/hashing.hpp"

namespace dpsketch {

namespace {
constexpr uint64_t kNoiseRowTag = 0x6e6f697365'726f77ULL;
}

std::vector<double> GenerateInitNoise(const NoiseProfile& profile,
                                      uint64_t noise_seed) {
  std::vector<double> noise(static_cast<size_t>(profile.rows) * profile.cols);
#pragma omp parallel for schedule(static)
  for (int r = 0; r < profile.rows; ++r) {
    GaussianSampler sampler(DeriveSeed(noise_seed, r, kNoiseRowTag));
    double* row = noise.data() + static_cast<size_t>(r) * profile.cols;
    for (int c = 0; c < profile.cols; ++c) {
      row[c] = sampler.Sample(profile.shift_e, profile.sigma);
    }
  }
  return noise;
}

CounterMatrix NewPrivate(const SketchParams& params,
                         const PrivacyBudget& budget, uint64_t master_seed,
                         uint64_t noise_seed) {
  if (!(budget.rho > 0)) {
    throw std::invalid_argument("private initialization requires rho > 0");
  }
  return NewPrivateWithProfile(params, NoiseProfile::For(params, budget),
                               budget.rho, master_seed, noise_seed);
}

CounterMatrix NewPrivateWithProfile(const SketchParams& params,
                                    const NoiseProfile& profile, double rho,
                                    uint64_t master_seed,
                                    uint64_t noise_seed) {
  if (profile.rows != params.rows || profile.cols != params.cols) {
    throw std::invalid_argument("noise profile does not match sketch shape");
  }
  return CounterMatrix(params, master_seed,
                       GenerateInitNoise(profile, noise_seed), rho);
}

ErrorBound PointwiseErrorBound(const SketchParams& params,
                               const PrivacyBudget& budget, double n) {
  if (n < 0) {
    throw std::invalid_argument("stream size must be >= 0");
  }
  const double e =
      NoiseBoundE(params.rows, params.cols, params.beta, budget);
  const double hash_error = params.gamma * n;
  if (params.variant == SketchVariant::kCountMin) {
    return ErrorBound{0.0, hash_error + 2.0 * e};
  }
  return ErrorBound{-(hash_error + e), hash_error + e};
}

}  // namespace dpsketch

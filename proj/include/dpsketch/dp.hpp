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

#ifndef DPSKETCH_DP_HPP_
#define DPSKETCH_DP_HPP_

#include <cstdint>
#include <random>

#include "dpsketch/params.hpp"

namespace dpsketch {

// zCDP budget. Accounting is native zCDP; (epsilon, delta)-DP is a derived
// view via ZcdpToDp. rho = 0 is allowed only for budget arithmetic (any
// private construction requires rho > 0); rho = +infinity denotes the
// degenerate noise-free mechanism (sigma = 0), useful for limit tests.
struct PrivacyBudget {
  double rho = 0;

  explicit PrivacyBudget(double r);
};

// l2 distance between the counter matrices of two neighboring databases
// (update/replace neighbors): one item changes one counter per row by 1 in
// each of two databases, so Delta_2 = sqrt(2d).
double L2Sensitivity(int rows);

// Gaussian noise level making one counter-matrix release rho-zCDP:
// sigma^2 = Delta_2^2 / (2 rho) = d / rho.
double CalibrateSigma(int rows, const PrivacyBudget& budget);

// High-probability uniform bound on all d*w initialization noises:
// E = sigma * sqrt(2 ln(4 d w / beta)); with probability >= 1 - beta/2
// every |N(0, sigma^2)| draw lies within E. Also the deterministic shift
// added to private Count-Min counters.
double NoiseBoundE(int rows, int cols, double beta,
                   const PrivacyBudget& budget);

// rho-zCDP implies (rho + 2 sqrt(rho ln(1/delta)), delta)-DP.
double ZcdpToDp(const PrivacyBudget& budget, double delta);

// Additive composition: an even split of rho over `parts` releases.
double SplitBudget(const PrivacyBudget& budget, int parts);

// Everything the private initializer needs: noise level, Count-Min shift,
// and the shape they were calibrated for.
struct NoiseProfile {
  double sigma = 0;
  double shift_e = 0;  // 0 for CountSketch
  int rows = 0;
  int cols = 0;
  double beta = 0;

  static NoiseProfile For(const SketchParams& params,
                          const PrivacyBudget& budget);
};

// Deterministic, seed-reproducible Gaussian source: Marsaglia polar
// transform over mt19937_64 uniforms, so sequences are identical across
// platforms for a given seed. Scaling by sigma happens after the unit
// draw, which keeps draws at different noise levels but equal seeds
// perfectly paired. Not thread-safe; use one sampler per thread.
class GaussianSampler {
 public:
  explicit GaussianSampler(uint64_t seed) : engine_(seed) {}

  // sigma = 0 returns `mean` exactly and consumes no randomness.
  double Sample(double mean, double sigma);

 private:
  double NextUnit();
  double NextUniform();  // in [0, 1) with 53-bit resolution

  std::mt19937_64 engine_;
  double spare_ = 0;
  bool has_spare_ = false;
};

}  // namespace dpsketch

#endif  // DPSKETCH_DP_HPP_

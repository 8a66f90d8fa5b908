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

#ifndef DPSKETCH_DP_SKETCH_HPP_
#define DPSKETCH_DP_SKETCH_HPP_

#include <cstdint>
#include <vector>

#include "dpsketch/dp.hpp"
#include "dpsketch/sketch.hpp"

namespace dpsketch {

// Row-major d*w initialization noise for a private sketch: each cell is an
// independent draw from N(shift_e, sigma^2). Rows are generated from
// per-row derived seeds, so the result is identical whether rows are
// filled serially or in parallel.
std::vector<double> GenerateInitNoise(const NoiseProfile& profile,
                                      uint64_t noise_seed);

// Private initialization: counters start at N(0, sigma^2) (CountSketch) or
// E + N(0, sigma^2) (Count-Min) instead of zero. Update and query are the
// unmodified CounterMatrix operations; the release stays rho-zCDP however
// many queries are answered. The hashing seed and the noise seed are
// independent inputs so a private sketch can be compared cell-by-cell
// against a non-private twin built from the same master_seed.
CounterMatrix NewPrivate(const SketchParams& params,
                         const PrivacyBudget& budget, uint64_t master_seed,
                         uint64_t noise_seed);

// Same, but with an explicit noise profile. This is the seam where a
// different zCDP noise distribution (e.g. a discrete Gaussian) or a
// degenerate sigma = 0 profile can be injected; `rho` is what the budget
// ledger records.
CounterMatrix NewPrivateWithProfile(const SketchParams& params,
                                    const NoiseProfile& profile, double rho,
                                    uint64_t master_seed, uint64_t noise_seed);

struct ErrorBound {
  double lower = 0;
  double upper = 0;
};

// High-probability two-sided bound on f_hat(x) - f(x) after a stream of
// size n: (0, gamma n + 2E) for private Count-Min, +-(gamma n + E) for
// private CountSketch.
ErrorBound PointwiseErrorBound(const SketchParams& params,
                               const PrivacyBudget& budget, double n);

}  // namespace dpsketch

#endif  // DPSKETCH_DP_SKETCH_HPP_

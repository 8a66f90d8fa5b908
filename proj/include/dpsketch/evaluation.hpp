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

#ifndef DPSKETCH_EVALUATION_HPP_
#define DPSKETCH_EVALUATION_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

#include "dpsketch/dp.hpp"
#include "dpsketch/sketch.hpp"
#include "dpsketch/stream.hpp"

namespace dpsketch {

// Brute-force ground truth for a stream: exact net counts and the exact
// rank function. The metric functions below all evaluate against this.
struct ExactSummary {
  std::unordered_map<uint64_t, int64_t> freq;  // nonzero net counts
  int64_t total = 0;                           // N, sum of net counts
  std::vector<uint64_t> sorted_items;          // positive net count, ascending

  // Rank support: every nonzero-net item ascending, with cumulative nets.
  std::vector<uint64_t> rank_items;
  std::vector<int64_t> rank_cumulative;
};

ExactSummary ExactCounts(std::span<const StreamOp> stream);

// R(x) = sum of net counts over items <= x.
int64_t ExactRank(const ExactSummary& summary, uint64_t x);

using EstimateFn = std::function<double(uint64_t)>;
using RankFn = std::function<double(uint64_t)>;

// Average relative error over the positive-count items Psi:
// (1/|Psi|) sum |f(e) - est(e)| / f(e). Psi must be nonempty.
double Are(const EstimateFn& estimate, const ExactSummary& summary);
// Same with estimates[i] aligned to summary.sorted_items[i].
double Are(std::span<const double> estimates, const ExactSummary& summary);

// F1 of the estimated top-k item set against the exact top-k, both drawn
// from Psi with ties broken toward the smaller item id.
double F1TopK(const EstimateFn& estimate, const ExactSummary& summary, int k);
double F1TopK(std::span<const double> estimates, const ExactSummary& summary,
              int k);

// Mean |R_hat(x_i) - R(x_i)| over the m evenly spaced quantile items
// x_i at phi_i = i/(m+1), i = 1..m (m = 2 probes the 33rd and 67th
// percentile items).
double AvgRankError(const RankFn& estimated_rank, const ExactSummary& summary,
                    int m);

struct AdversarialCheckResult {
  int requested_trials = 0;
  int successful_trials = 0;
  int skipped_trials = 0;
  double sigma = 0;
  double median_abs_deviation = 0;
  std::vector<double> deviations;  // one per successful trial
};

// Worst-case construction for the private CountSketch: per trial, finds
// items y_i that collide with a target x in exactly one row each, with
// signs arranged so that half the rows read far above and half far below
// x's own counter; the clean median row then exposes one initialization
// noise value directly, so |f_hat(x) - f_tilde(x)| is distributed as
// |N(0, sigma^2)|. Trials whose collider search exhausts the universe are
// skipped and counted.
AdversarialCheckResult AdversarialLowerBoundCheck(const SketchParams& params,
                                                  const PrivacyBudget& budget,
                                                  int trials,
                                                  uint64_t universe,
                                                  uint64_t seed);

}  // namespace dpsketch

#endif  // DPSKETCH_EVALUATION_HPP_

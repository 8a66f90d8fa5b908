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

#include "dpsketch/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dpsketch/dp_sketch.hpp"
#include "dpsketch/hashing.hpp"

namespace dpsketch {

ExactSummary ExactCounts(std::span<const StreamOp> stream) {
  ExactSummary summary;
  summary.freq.reserve(stream.size());
  for (const StreamOp& op : stream) {
    if (op.value != 1 && op.value != -1) {
      throw std::invalid_argument("StreamOp value must be -1 or +1");
    }
    summary.total += op.value;
    const auto [it, inserted] = summary.freq.try_emplace(op.item, op.value);
    if (!inserted) {
      it->second += op.value;
      if (it->second == 0) summary.freq.erase(it);
    }
  }
  summary.rank_items.reserve(summary.freq.size());
  for (const auto& [item, net] : summary.freq) {
    summary.rank_items.push_back(item);
    if (net > 0) summary.sorted_items.push_back(item);
  }
  std::sort(summary.rank_items.begin(), summary.rank_items.end());
  std::sort(summary.sorted_items.begin(), summary.sorted_items.end());
  summary.rank_cumulative.reserve(summary.rank_items.size());
  int64_t running = 0;
  for (const uint64_t item : summary.rank_items) {
    running += summary.freq.at(item);
    summary.rank_cumulative.push_back(running);
  }
  return summary;
}

int64_t ExactRank(const ExactSummary& summary, uint64_t x) {
  const auto it = std::upper_bound(summary.rank_items.begin(),
                                   summary.rank_items.end(), x);
  if (it == summary.rank_items.begin()) return 0;
  return summary.rank_cumulative[it - summary.rank_items.begin() - 1];
}

double Are(std::span<const double> estimates, const ExactSummary& summary) {
  if (summary.sorted_items.empty()) {
    throw std::invalid_argument("ARE needs at least one positive-count item");
  }
  if (estimates.size() != summary.sorted_items.size()) {
    throw std::invalid_argument("ARE: estimate count mismatch");
  }
  double sum = 0.0;
  for (size_t i = 0; i < estimates.size(); ++i) {
    const double f = static_cast<double>(
        summary.freq.at(summary.sorted_items[i]));
    sum += std::abs(f - estimates[i]) / f;
  }
  return sum / static_cast<double>(estimates.size());
}

double Are(const EstimateFn& estimate, const ExactSummary& summary) {
  std::vector<double> estimates(summary.sorted_items.size());
  for (size_t i = 0; i < estimates.size(); ++i) {
    estimates[i] = estimate(summary.sorted_items[i]);
  }
  return Are(estimates, summary);
}

namespace {

// Indices of the k largest values, ties toward the smaller item id.
std::vector<uint64_t> TopKItems(std::span<const uint64_t> items,
                                std::span<const double> values, int k) {
  std::vector<size_t> order(items.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (values[a] != values[b]) return values[a] > values[b];
    return items[a] < items[b];
  });
  std::vector<uint64_t> top;
  top.reserve(k);
  for (int i = 0; i < k; ++i) top.push_back(items[order[i]]);
  return top;
}

}  // namespace

double F1TopK(std::span<const double> estimates, const ExactSummary& summary,
              int k) {
  if (k < 1) {
    throw std::invalid_argument("k must be >= 1");
  }
  if (static_cast<size_t>(k) > summary.sorted_items.size()) {
    throw std::invalid_argument("k exceeds the number of distinct items");
  }
  if (estimates.size() != summary.sorted_items.size()) {
    throw std::invalid_argument("F1TopK: estimate count mismatch");
  }
  std::vector<double> exact(summary.sorted_items.size());
  for (size_t i = 0; i < exact.size(); ++i) {
    exact[i] = static_cast<double>(summary.freq.at(summary.sorted_items[i]));
  }
  const auto predicted = TopKItems(summary.sorted_items, estimates, k);
  const auto truth = TopKItems(summary.sorted_items, exact, k);
  std::vector<uint64_t> a = predicted, b = truth;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<uint64_t> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(common));
  // |predicted| == |truth| == k, so precision == recall == |common| / k.
  return static_cast<double>(common.size()) / k;
}

double F1TopK(const EstimateFn& estimate, const ExactSummary& summary, int k) {
  std::vector<double> estimates(summary.sorted_items.size());
  for (size_t i = 0; i < estimates.size(); ++i) {
    estimates[i] = estimate(summary.sorted_items[i]);
  }
  return F1TopK(estimates, summary, k);
}

double AvgRankError(const RankFn& estimated_rank, const ExactSummary& summary,
                    int m) {
  if (m < 1) {
    throw std::invalid_argument("m must be >= 1");
  }
  if (summary.total < 1) {
    throw std::invalid_argument("rank error needs a positive total count");
  }
  double sum = 0.0;
  for (int i = 1; i <= m; ++i) {
    const double phi = static_cast<double>(i) / (m + 1);
    const double target = phi * static_cast<double>(summary.total);
    // Exact phi-quantile item: smallest item whose exact rank reaches the
    // target.
    const auto it = std::lower_bound(summary.rank_cumulative.begin(),
                                     summary.rank_cumulative.end(),
                                     static_cast<int64_t>(std::ceil(target)));
    const size_t idx = it == summary.rank_cumulative.end()
                           ? summary.rank_cumulative.size() - 1
                           : static_cast<size_t>(
                                 it - summary.rank_cumulative.begin());
    const uint64_t item = summary.rank_items[idx];
    const double exact = static_cast<double>(summary.rank_cumulative[idx]);
    sum += std::abs(estimated_rank(item) - exact);
  }
  return sum / m;
}

AdversarialCheckResult AdversarialLowerBoundCheck(const SketchParams& params,
                                                  const PrivacyBudget& budget,
                                                  int trials,
                                                  uint64_t universe,
                                                  uint64_t seed) {
  if (params.variant != SketchVariant::kCountSketch) {
    throw std::invalid_argument(
        "the adversarial construction targets CountSketch");
  }
  if (trials < 1) {
    throw std::invalid_argument("trials must be >= 1");
  }
  constexpr uint64_t kTrialHashTag = 0x61647648ULL;
  constexpr uint64_t kTrialNoiseTag = 0x6164764eULL;
  constexpr int64_t kTargetCount = 1000;    // n_x
  constexpr int64_t kColliderCount = 10000; // n_y, far above the noise bound

  const int d = params.rows;
  const auto cols = static_cast<uint32_t>(params.cols);
  const int attempts = 2 * trials;
  std::vector<double> deviations(attempts,
                                 std::numeric_limits<double>::quiet_NaN());

#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < attempts; ++t) {
    const uint64_t master_seed = DeriveSeed(seed, t, kTrialHashTag);
    const uint64_t noise_seed = DeriveSeed(seed, t, kTrialNoiseTag);
    std::vector<RowHash> hashes;
    hashes.reserve(d);
    for (int r = 0; r < d; ++r) hashes.emplace_back(master_seed, r);

    const uint64_t x = Mix64(master_seed) % universe;
    std::vector<uint32_t> x_cells(d);
    std::vector<int> x_signs(d);
    for (int r = 0; r < d; ++r) {
      x_cells[r] = hashes[r].Index(x, cols);
      x_signs[r] = hashes[r].Sign(x);
    }

    // One collider per row except the last; the first half share x's sign
    // in their row, the rest oppose it, leaving the clean last row as the
    // median entry.
    std::vector<uint64_t> colliders(d - 1, 0);
    std::vector<bool> found(d - 1, false);
    int remaining = d - 1;
    for (uint64_t y = 0; y < universe && remaining > 0; ++y) {
      if (y == x) continue;
      int collide_row = -1;
      bool clean = true;
      for (int r = 0; r < d; ++r) {
        if (hashes[r].Index(y, cols) == x_cells[r]) {
          if (collide_row >= 0) {
            clean = false;
            break;
          }
          collide_row = r;
        }
      }
      if (!clean || collide_row < 0 || collide_row >= d - 1 ||
          found[collide_row]) {
        continue;
      }
      const bool want_same_sign = collide_row < (d - 1) / 2;
      const bool same_sign =
          hashes[collide_row].Sign(y) == x_signs[collide_row];
      if (same_sign != want_same_sign) continue;
      colliders[collide_row] = y;
      found[collide_row] = true;
      --remaining;
    }
    if (remaining > 0) continue;  // skipped trial

    Stream stream;
    stream.reserve(kTargetCount + (d - 1) * kColliderCount);
    for (int64_t i = 0; i < kTargetCount; ++i) {
      stream.push_back(StreamOp{x, +1});
    }
    for (const uint64_t y : colliders) {
      for (int64_t i = 0; i < kColliderCount; ++i) {
        stream.push_back(StreamOp{y, +1});
      }
    }

    CounterMatrix nonprivate = CounterMatrix::NewNonPrivate(params,
                                                            master_seed);
    nonprivate.UpdateStreamSerial(stream);
    const double f_tilde = nonprivate.Query(x);
    const CounterMatrix private_sketch =
        Merge(NewPrivate(params, budget, master_seed, noise_seed),
              nonprivate);
    deviations[t] = std::abs(private_sketch.Query(x) - f_tilde);
  }

  AdversarialCheckResult result;
  result.requested_trials = trials;
  result.sigma = CalibrateSigma(d, budget);
  for (int t = 0; t < attempts &&
                  result.successful_trials < trials; ++t) {
    if (std::isnan(deviations[t])) {
      ++result.skipped_trials;
      continue;
    }
    result.deviations.push_back(deviations[t]);
    ++result.successful_trials;
  }
  if (!result.deviations.empty()) {
    std::vector<double> sorted = result.deviations;
    const auto mid = sorted.begin() + sorted.size() / 2;
    std::nth_element(sorted.begin(), mid, sorted.end());
    double median = *mid;
    if (sorted.size() % 2 == 0) {
      const auto lower = std::max_element(sorted.begin(), mid);
      median = (median + *lower) / 2.0;
    }
    result.median_abs_deviation = median;
  }
  return result;
}

}  // namespace dpsketch

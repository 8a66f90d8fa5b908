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

#include "dpsketch/dyadic.hpp"

#include <cmath>
#include <stdexcept>

#include "dpsketch/dp.hpp"
#include "dpsketch/dp_sketch.hpp"
#include "dpsketch/hashing.hpp"

namespace dpsketch {

namespace {

constexpr uint64_t kLevelHashTag = 0x6c76'68617368ULL;
constexpr uint64_t kLevelNoiseTag = 0x6c76'6e6f6973ULL;

int OddCeil(double x) {
  int v = static_cast<int>(std::ceil(x));
  if (v % 2 == 0) ++v;
  return v;
}

}  // namespace

DyadicParams DyadicParams::Derive(int universe_bits, double gamma,
                                  SketchVariant variant, double rho,
                                  std::optional<int> level_rows,
                                  std::optional<int> level_cols,
                                  std::optional<double> level_beta) {
  if (universe_bits < 1 || universe_bits > 62) {
    throw std::invalid_argument("universe_bits must lie in [1, 62]");
  }
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("gamma must lie in (0, 1)");
  }
  if (rho < 0 || std::isnan(rho)) {
    throw std::invalid_argument("rho must be >= 0");
  }
  if (rho > 0 && variant != SketchVariant::kCountSketch) {
    throw std::invalid_argument(
        "private dyadic sketches require the CountSketch variant");
  }
  DyadicParams p;
  p.universe_bits = universe_bits;
  p.variant = variant;
  p.gamma = gamma;
  p.rho = rho;
  const double levels = universe_bits;
  p.level_rows =
      level_rows.value_or(std::max(3, OddCeil(std::log(levels / gamma))));
  p.level_cols = level_cols.value_or(static_cast<int>(
      std::ceil(std::sqrt(levels * p.level_rows) / gamma)));
  p.level_beta = level_beta.value_or(gamma / levels);
  if (p.level_rows < 1 || p.level_cols < 1) {
    throw std::invalid_argument("level shape must be >= 1");
  }
  if (variant == SketchVariant::kCountSketch && p.level_rows % 2 == 0) {
    throw std::invalid_argument("CountSketch levels need an odd row count");
  }
  if (!(p.level_beta > 0.0 && p.level_beta < 1.0)) {
    throw std::invalid_argument("level_beta must lie in (0, 1)");
  }
  return p;
}

DyadicSketch DyadicSketch::New(const DyadicParams& params,
                               uint64_t master_seed, uint64_t noise_seed) {
  DyadicSketch qs;
  qs.params_ = params;
  if (params.universe_bits < 1) {
    throw std::invalid_argument("universe_bits must be >= 1");
  }
  const SketchParams level_params = SketchParams::Explicit(
      params.level_rows, params.level_cols, params.variant, params.level_beta);
  qs.levels_.reserve(params.levels());
  for (int j = 0; j < params.levels(); ++j) {
    const uint64_t level_seed = DeriveSeed(master_seed, j, kLevelHashTag);
    if (params.is_private()) {
      qs.levels_.push_back(
          NewPrivate(level_params, PrivacyBudget(params.rho_per_level()),
                     level_seed, DeriveSeed(noise_seed, j, kLevelNoiseTag)));
    } else {
      qs.levels_.push_back(
          CounterMatrix::NewNonPrivate(level_params, level_seed));
    }
  }
  return qs;
}

DyadicSketch DyadicSketch::NewExact(int universe_bits) {
  if (universe_bits < 1 || universe_bits > 62) {
    throw std::invalid_argument("universe_bits must lie in [1, 62]");
  }
  DyadicSketch qs;
  qs.params_.universe_bits = universe_bits;
  qs.params_.gamma = 0.5;  // unused by exact counters
  qs.exact_ = true;
  qs.exact_levels_.resize(universe_bits);
  return qs;
}

void DyadicSketch::Update(const StreamOp& op) {
  if (op.item >= params_.universe()) {
    throw std::invalid_argument("item outside the dyadic universe");
  }
  if (exact_) {
    for (int j = 0; j < params_.levels(); ++j) {
      exact_levels_[j][op.item >> j] += op.value;
    }
    return;
  }
  for (int j = 0; j < params_.levels(); ++j) {
    levels_[j].Update(StreamOp{op.item >> j, op.value});
  }
}

void DyadicSketch::UpdateStream(std::span<const StreamOp> ops) {
  const uint64_t universe = params_.universe();
  for (const StreamOp& op : ops) {
    if (op.item >= universe) {
      throw std::invalid_argument("item outside the dyadic universe");
    }
    if (op.value != 1 && op.value != -1) {
      throw std::invalid_argument("StreamOp value must be -1 or +1");
    }
  }
  const int levels = params_.levels();
  if (exact_) {
#pragma omp parallel for schedule(static)
    for (int j = 0; j < levels; ++j) {
      auto& counter = exact_levels_[j];
      for (const StreamOp& op : ops) {
        counter[op.item >> j] += op.value;
      }
    }
    return;
  }
  const int rows = params_.level_rows;
#pragma omp parallel for schedule(static) collapse(2)
  for (int j = 0; j < levels; ++j) {
    for (int r = 0; r < rows; ++r) {
      levels_[j].ApplyRow(r, ops, j);
    }
  }
}

void DyadicSketch::UpdateStreamSerial(std::span<const StreamOp> ops) {
  for (const StreamOp& op : ops) {
    Update(op);
  }
}

double DyadicSketch::LevelQuery(int level, uint64_t node) const {
  if (exact_) {
    const auto& counter = exact_levels_[level];
    const auto it = counter.find(node);
    return it == counter.end() ? 0.0 : static_cast<double>(it->second);
  }
  return levels_[level].Query(node);
}

double DyadicSketch::PrefixCount(uint64_t x) const {
  const uint64_t universe = params_.universe();
  if (x > universe) {
    throw std::invalid_argument("prefix bound outside [0, universe]");
  }
  const int levels = params_.levels();
  // [0, universe) is the one prefix that is not a union of left siblings:
  // it is the two top-level nodes.
  if (x == universe) {
    return LevelQuery(levels - 1, 0) + LevelQuery(levels - 1, 1);
  }
  double result = 0.0;
  uint64_t cur = x;
  for (int j = 0; j < levels && cur != 0; ++j) {
    if (cur & 1) {
      result += LevelQuery(j, cur - 1);
    }
    cur >>= 1;
  }
  return result;
}

double DyadicSketch::Rank(uint64_t x) const {
  if (x >= params_.universe()) {
    throw std::invalid_argument("rank argument outside the universe");
  }
  return PrefixCount(x + 1);
}

uint64_t DyadicSketch::QuantileQuery(double phi, double n) const {
  if (!(n > 0)) {
    throw std::invalid_argument("quantile queries need n > 0");
  }
  if (!(phi > 0.0 && phi <= 1.0)) {
    throw std::invalid_argument("phi must lie in (0, 1]");
  }
  const double target = phi * n;
  uint64_t lo = 0;
  uint64_t hi = params_.universe() - 1;
  while (lo < hi) {
    const uint64_t mid = lo + (hi - lo) / 2;
    if (Rank(mid) >= target) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

double DyadicSketch::rho() const {
  double total = 0.0;
  for (const CounterMatrix& level : levels_) {
    total += level.rho();
  }
  return total;
}

double QuantileErrorBoundRaw(double levels, double gamma, double level_cols,
                             double level_noise_bound, double n) {
  return std::sqrt(levels * std::log(levels / gamma)) *
         (n / level_cols + level_noise_bound);
}

double QuantileErrorBound(const DyadicParams& params, double n) {
  const double level_e =
      params.is_private()
          ? NoiseBoundE(params.level_rows, params.level_cols,
                        params.level_beta,
                        PrivacyBudget(params.rho_per_level()))
          : 0.0;
  return QuantileErrorBoundRaw(params.levels(), params.gamma,
                               params.level_cols, level_e, n);
}

}  // namespace dpsketch

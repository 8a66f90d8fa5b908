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

#ifndef DPSKETCH_DYADIC_HPP_
#define DPSKETCH_DYADIC_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "dpsketch/sketch.hpp"

namespace dpsketch {

// Shape of a dyadic quantile sketch over the power-of-two universe
// [0, 2^universe_bits): one linear sketch per level j = 0..B-1, where level
// j counts the dyadic intervals [k 2^j, (k+1) 2^j). A private instance
// splits rho evenly over the levels (additive zCDP composition), giving
// per-level noise sigma_q = sqrt(level_rows * levels / rho).
struct DyadicParams {
  int universe_bits = 0;  // B; the sketch keeps L = B levels
  SketchVariant variant = SketchVariant::kCountSketch;
  double gamma = 0;
  int level_rows = 0;      // d_q
  int level_cols = 0;      // w_q
  double level_beta = 0;   // failure probability per level noise bound
  double rho = 0;          // total zCDP budget; 0 means non-private

  // Defaults: d_q = max(3, odd-ceil(ln(L/gamma))), w_q =
  // ceil(sqrt(L d_q)/gamma), level_beta = gamma/L; each is overridable.
  // A private instance (rho > 0) must use CountSketch levels: the paper's
  // construction relies on unbiased level estimates, and a per-level
  // Count-Min shift would bias ranks by a level-dependent amount.
  static DyadicParams Derive(int universe_bits, double gamma,
                             SketchVariant variant, double rho = 0.0,
                             std::optional<int> level_rows = std::nullopt,
                             std::optional<int> level_cols = std::nullopt,
                             std::optional<double> level_beta = std::nullopt);

  int levels() const { return universe_bits; }
  uint64_t universe() const { return uint64_t{1} << universe_bits; }
  bool is_private() const { return rho > 0; }
  double rho_per_level() const { return rho / levels(); }

  friend bool operator==(const DyadicParams&, const DyadicParams&) = default;
};

// DCM/DCS: a stack of per-level linear sketches answering prefix, rank and
// quantile queries. An exact-counter instance (NewExact) replaces every
// level with an exact hash-map counter and serves as the oracle that the
// sketched ranks are tested against.
class DyadicSketch {
 public:
  static DyadicSketch New(const DyadicParams& params, uint64_t master_seed,
                          uint64_t noise_seed = 0);
  static DyadicSketch NewExact(int universe_bits);

  // Feeds op to every level at key floor(item / 2^j). Items must lie in
  // the universe.
  void Update(const StreamOp& op);

  // Batch update, parallelized over (level, row) pairs; bit-identical to
  // the serial path.
  void UpdateStream(std::span<const StreamOp> ops);
  void UpdateStreamSerial(std::span<const StreamOp> ops);

  // Estimated number of stream items with id < x, for x in [0, universe].
  // Sums one left-sibling query per level over the dyadic decomposition of
  // [0, x).
  double PrefixCount(uint64_t x) const;

  // Estimated R(x) = #{items with id <= x}, for x in [0, universe).
  double Rank(uint64_t x) const;

  // Smallest x whose estimated rank reaches phi * n, by binary search.
  // With exact counters ranks are monotone and this is the exact quantile;
  // with sketched (possibly non-monotone) ranks it returns the first
  // crossing along the search path.
  uint64_t QuantileQuery(double phi, double n) const;

  const DyadicParams& params() const { return params_; }
  bool exact_mode() const { return exact_; }
  // Total zCDP consumed at construction (sum of the level ledgers).
  double rho() const;

  const CounterMatrix& level(int j) const { return levels_.at(j); }

 private:
  DyadicSketch() = default;

  double LevelQuery(int level, uint64_t node) const;

  DyadicParams params_;
  std::vector<CounterMatrix> levels_;
  std::vector<std::unordered_map<uint64_t, int64_t>> exact_levels_;
  bool exact_ = false;
};

// Eq.-style rank error bound sqrt(L ln(L/gamma)) * (n / w + E_level); the
// private term E_level is the per-level noise bound at budget rho/L.
double QuantileErrorBound(const DyadicParams& params, double n);

// Same closed form on raw values, for callers probing the algebra.
double QuantileErrorBoundRaw(double levels, double gamma, double level_cols,
                             double level_noise_bound, double n);

}  // namespace dpsketch

#endif  // DPSKETCH_DYADIC_HPP_

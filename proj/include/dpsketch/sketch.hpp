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

#ifndef DPSKETCH_SKETCH_HPP_
#define DPSKETCH_SKETCH_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "dpsketch/hashing.hpp"
#include "dpsketch/params.hpp"
#include "dpsketch/stream.hpp"

namespace dpsketch {

// A d x w counter matrix with per-row hash functions: the shared state of
// Count-Min and CountSketch. Updates add +-1 per row; queries take the min
// (Count-Min) or the sign-corrected median (CountSketch) over rows.
//
// The stream contribution and the one-time initialization noise of a
// private sketch are stored separately and summed on read. Update
// increments therefore stay exact integer arithmetic (|count| < 2^53), so
// counter state is independent of update order and merge grouping, and a
// private sketch differs from its non-private twin by exactly the noise.
//
// Concurrency: one mutating actor per instance; any number of threads may
// query a sketch that is no longer being updated.
class CounterMatrix {
 public:
  static CounterMatrix NewNonPrivate(const SketchParams& params,
                                     uint64_t master_seed);

  // Used by the private initializer; `noise` is row-major d*w and already
  // contains any Count-Min shift. `rho` is recorded in the budget ledger.
  CounterMatrix(const SketchParams& params, uint64_t master_seed,
                std::vector<double> noise, double rho);

  // Algorithm step: one counter per row moves by op.value * g_r(op.item).
  void Update(const StreamOp& op);

  // Batch update, parallelized across rows (each row's counters are touched
  // only by its own hash function, so rows are independent). Bit-identical
  // to UpdateStreamSerial.
  void UpdateStream(std::span<const StreamOp> ops);

  // Serial reference: ops outer, rows inner, exactly the update recurrence.
  void UpdateStreamSerial(std::span<const StreamOp> ops);

  // Single-row kernel: applies all ops to row `row`, hashing each item
  // right-shifted by `key_shift` bits. Building block for the parallel
  // kernels here and in the dyadic sketch.
  void ApplyRow(int row, std::span<const StreamOp> ops, int key_shift);

  // Estimated frequency of `item`; read-only.
  double Query(uint64_t item) const;

  // Batch query, parallelized across items.
  void QueryMany(std::span<const uint64_t> items, std::span<double> out) const;

  // Stored counter value: stream contribution plus initialization noise.
  double ValueAt(int row, int col) const {
    const double c = counts_[static_cast<size_t>(row) * params_.cols + col];
    return noise_.empty()
               ? c
               : c + noise_[static_cast<size_t>(row) * params_.cols + col];
  }

  // Stream contribution alone (an exact integer).
  double CountAt(int row, int col) const {
    return counts_[static_cast<size_t>(row) * params_.cols + col];
  }

  double NoiseAt(int row, int col) const {
    return noise_.empty()
               ? 0.0
               : noise_[static_cast<size_t>(row) * params_.cols + col];
  }

  const SketchParams& params() const { return params_; }
  uint64_t master_seed() const { return master_seed_; }
  bool is_private() const { return !noise_.empty(); }
  // zCDP consumed at construction; never changes afterwards.
  double rho() const { return rho_; }
  int rows() const { return params_.rows; }
  int cols() const { return params_.cols; }

  const RowHash& row_hash(int row) const { return row_hashes_[row]; }

  // Counter-wise sum of two sketches over the same params and master seed.
  // At most one side may be private (its noise and budget carry over);
  // merging two private sketches is rejected, use ForceMergePrivate.
  friend CounterMatrix Merge(const CounterMatrix& a, const CounterMatrix& b);

  // Merges two private sketches; noise adds and the ledger reports the
  // composed budget rho_a + rho_b.
  friend CounterMatrix ForceMergePrivate(const CounterMatrix& a,
                                         const CounterMatrix& b);

 private:
  int SignFor(int row, uint64_t item) const {
    return params_.variant == SketchVariant::kCountMin
               ? 1
               : row_hashes_[row].Sign(item);
  }

  SketchParams params_;
  uint64_t master_seed_;
  std::vector<RowHash> row_hashes_;
  std::vector<double> counts_;  // row-major, exact integers
  std::vector<double> noise_;   // empty for non-private sketches
  double rho_ = 0.0;
};

}  // namespace dpsketch

#endif  // DPSKETCH_SKETCH_HPP_

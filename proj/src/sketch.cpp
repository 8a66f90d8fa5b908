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

#include "dpsketch/sketch.hpp"

#include <algorithm>
#include <stdexcept>

namespace dpsketch {

namespace {

std::vector<RowHash> MakeRowHashes(const SketchParams& params,
                                   uint64_t master_seed) {
  std::vector<RowHash> hashes;
  hashes.reserve(params.rows);
  for (int r = 0; r < params.rows; ++r) {
    hashes.emplace_back(master_seed, static_cast<uint32_t>(r));
  }
  return hashes;
}

void CheckOpValue(const StreamOp& op) {
  if (op.value != 1 && op.value != -1) {
    throw std::invalid_argument("StreamOp value must be -1 or +1");
  }
}

}  // namespace

CounterMatrix CounterMatrix::NewNonPrivate(const SketchParams& params,
                                           uint64_t master_seed) {
  return CounterMatrix(params, master_seed, {}, 0.0);
}

CounterMatrix::CounterMatrix(const SketchParams& params, uint64_t master_seed,
                             std::vector<double> noise, double rho)
    : params_(params),
      master_seed_(master_seed),
      row_hashes_(MakeRowHashes(params, master_seed)),
      counts_(static_cast<size_t>(params.rows) * params.cols, 0.0),
      noise_(std::move(noise)),
      rho_(rho) {
  if (params_.rows < 1 || params_.cols < 1) {
    throw std::invalid_argument("CounterMatrix needs rows, cols >= 1");
  }
  if (params_.variant == SketchVariant::kCountSketch &&
      params_.rows % 2 == 0) {
    throw std::invalid_argument("CountSketch requires an odd row count");
  }
  if (!noise_.empty() && noise_.size() != counts_.size()) {
    throw std::invalid_argument("noise array does not match sketch shape");
  }
}

void CounterMatrix::Update(const StreamOp& op) {
  CheckOpValue(op);
  const auto cols = static_cast<uint32_t>(params_.cols);
  for (int r = 0; r < params_.rows; ++r) {
    const uint32_t c = row_hashes_[r].Index(op.item, cols);
    counts_[static_cast<size_t>(r) * cols + c] += op.value * SignFor(r, op.item);
  }
}

void CounterMatrix::ApplyRow(int row, std::span<const StreamOp> ops,
                             int key_shift) {
  const auto cols = static_cast<uint32_t>(params_.cols);
  double* counters = counts_.data() + static_cast<size_t>(row) * cols;
  const RowHash& hash = row_hashes_[row];
  if (params_.variant == SketchVariant::kCountMin) {
    for (const StreamOp& op : ops) {
      counters[hash.Index(op.item >> key_shift, cols)] += op.value;
    }
  } else {
    for (const StreamOp& op : ops) {
      const uint64_t key = op.item >> key_shift;
      counters[hash.Index(key, cols)] += op.value * hash.Sign(key);
    }
  }
}

void CounterMatrix::UpdateStream(std::span<const StreamOp> ops) {
  for (const StreamOp& op : ops) CheckOpValue(op);
#pragma omp parallel for schedule(static)
  for (int r = 0; r < params_.rows; ++r) {
    ApplyRow(r, ops, 0);
  }
}

void CounterMatrix::UpdateStreamSerial(std::span<const StreamOp> ops) {
  for (const StreamOp& op : ops) {
    Update(op);
  }
}

double CounterMatrix::Query(uint64_t item) const {
  const auto cols = static_cast<uint32_t>(params_.cols);
  if (params_.variant == SketchVariant::kCountMin) {
    double best = ValueAt(0, row_hashes_[0].Index(item, cols));
    for (int r = 1; r < params_.rows; ++r) {
      best = std::min(best, ValueAt(r, row_hashes_[r].Index(item, cols)));
    }
    return best;
  }
  double arr[64];
  std::vector<double> heap_arr;
  double* vals = arr;
  if (params_.rows > 64) {
    heap_arr.resize(params_.rows);
    vals = heap_arr.data();
  }
  for (int r = 0; r < params_.rows; ++r) {
    const RowHash& hash = row_hashes_[r];
    vals[r] = hash.Sign(item) * ValueAt(r, hash.Index(item, cols));
  }
  double* mid = vals + params_.rows / 2;
  std::nth_element(vals, mid, vals + params_.rows);
  return *mid;  // rows is odd for CountSketch
}

void CounterMatrix::QueryMany(std::span<const uint64_t> items,
                              std::span<double> out) const {
  if (items.size() != out.size()) {
    throw std::invalid_argument("QueryMany: items and out sizes differ");
  }
  const auto n = static_cast<int64_t>(items.size());
#pragma omp parallel for schedule(static)
  for (int64_t i = 0; i < n; ++i) {
    out[i] = Query(items[i]);
  }
}

namespace {

void CheckMergeable(const CounterMatrix& a, const CounterMatrix& b) {
  if (!(a.params() == b.params())) {
    throw std::invalid_argument("Merge: sketch params differ");
  }
  if (a.master_seed() != b.master_seed()) {
    throw std::invalid_argument("Merge: hash seeds differ");
  }
}

}  // namespace

CounterMatrix Merge(const CounterMatrix& a, const CounterMatrix& b) {
  CheckMergeable(a, b);
  if (a.is_private() && b.is_private()) {
    throw std::invalid_argument(
        "Merge: both inputs are private; use ForceMergePrivate");
  }
  const CounterMatrix& noisy = a.is_private() ? a : b;
  CounterMatrix out(a.params(), a.master_seed(), noisy.noise_,
                    a.rho() + b.rho());
  for (size_t i = 0; i < out.counts_.size(); ++i) {
    out.counts_[i] = a.counts_[i] + b.counts_[i];
  }
  return out;
}

CounterMatrix ForceMergePrivate(const CounterMatrix& a,
                                const CounterMatrix& b) {
  CheckMergeable(a, b);
  if (!a.is_private() || !b.is_private()) {
    throw std::invalid_argument("ForceMergePrivate: both inputs must be private");
  }
  std::vector<double> noise(a.noise_.size());
  for (size_t i = 0; i < noise.size(); ++i) {
    noise[i] = a.noise_[i] + b.noise_[i];
  }
  CounterMatrix out(a.params(), a.master_seed(), std::move(noise),
                    a.rho() + b.rho());
  for (size_t i = 0; i < out.counts_.size(); ++i) {
    out.counts_[i] = a.counts_[i] + b.counts_[i];
  }
  return out;
}

}  // namespace dpsketch

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

#ifndef DPSKETCH_PARAMS_HPP_
#define DPSKETCH_PARAMS_HPP_

#include <cstdint>

namespace dpsketch {

enum class SketchVariant { kCountMin, kCountSketch };

const char* VariantName(SketchVariant v);

// Number of rows implied by failure probability beta: ceil(ln(2/beta)),
// rounded up to the next odd integer for CountSketch so the median of a
// row array is always a single element.
int RowsForBeta(double beta, SketchVariant variant);

// Shape and accuracy parameters of one counter matrix. All closed-form
// derivations use the natural logarithm.
struct SketchParams {
  double gamma = 0;  // relative accuracy target, in (0, 1)
  double beta = 0;   // failure probability, in (0, 1)
  SketchVariant variant = SketchVariant::kCountMin;
  int rows = 0;  // d
  int cols = 0;  // w

  // d = ceil(ln(2/beta)) (odd for CountSketch), w = ceil(1/gamma).
  static SketchParams FromAccuracy(double gamma, double beta,
                                   SketchVariant variant);

  // Fixes the total counter footprint instead of gamma: d is derived from
  // beta first, then w = floor(space_kb * 1024 / (8 * d)). The effective
  // accuracy becomes gamma = 1/w.
  static SketchParams FromSpaceBudget(double space_kb, double beta,
                                      SketchVariant variant);

  // Explicit shape, for callers that control d and w directly. gamma is
  // recorded as 1/cols.
  static SketchParams Explicit(int rows, int cols, SketchVariant variant,
                               double beta);

  double SpaceKb() const { return static_cast<double>(rows) * cols * 8 / 1024.0; }

  friend bool operator==(const SketchParams&, const SketchParams&) = default;
};

}  // namespace dpsketch

#endif  // DPSKETCH_PARAMS_HPP_

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

#include "dpsketch/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dpsketch {

namespace {

void CheckUnitInterval(double value, const char* name) {
  if (!(value > 0.0 && value < 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in (0, 1)");
  }
}

}  // namespace

const char* VariantName(SketchVariant v) {
  return v == SketchVariant::kCountMin ? "cm" : "cs";
}

int RowsForBeta(double beta, SketchVariant variant) {
  CheckUnitInterval(beta, "beta");
  int d = static_cast<int>(std::ceil(std::log(2.0 / beta)));
  if (d < 1) d = 1;
  if (variant == SketchVariant::kCountSketch && d % 2 == 0) ++d;
  return d;
}

SketchParams SketchParams::FromAccuracy(double gamma, double beta,
                                        SketchVariant variant) {
  CheckUnitInterval(gamma, "gamma");
  const int rows = RowsForBeta(beta, variant);
  const int cols = static_cast<int>(std::ceil(1.0 / gamma));
  return SketchParams{gamma, beta, variant, rows, cols};
}

SketchParams SketchParams::FromSpaceBudget(double space_kb, double beta,
                                           SketchVariant variant) {
  if (!(space_kb > 0)) {
    throw std::invalid_argument("space_kb must be positive");
  }
  const int rows = RowsForBeta(beta, variant);
  const int cols =
      static_cast<int>(std::floor(space_kb * 1024.0 / (8.0 * rows)));
  if (cols < 1) {
    throw std::invalid_argument("space budget too small for one column");
  }
  return SketchParams{1.0 / cols, beta, variant, rows, cols};
}

SketchParams SketchParams::Explicit(int rows, int cols, SketchVariant variant,
                                    double beta) {
  CheckUnitInterval(beta, "beta");
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("rows and cols must be >= 1");
  }
  if (variant == SketchVariant::kCountSketch && rows % 2 == 0) {
    throw std::invalid_argument("CountSketch requires an odd row count");
  }
  return SketchParams{1.0 / cols, beta, variant, rows, cols};
}

}  // namespace dpsketch

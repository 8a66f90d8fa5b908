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

#ifndef DPSKETCH_EXPERIMENT_HPP_
#define DPSKETCH_EXPERIMENT_HPP_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "dpsketch/params.hpp"
#include "dpsketch/workload.hpp"

namespace dpsketch {

// One experiment sweep. Every cell of a run shares the per-repeat stream,
// hash and noise seeds (derived from `seed` and the repeat index), so
// private/non-private and different-rho cells are seed-paired comparisons.
struct ExperimentConfig {
  StreamSource dataset = StreamSource::kZipf;
  std::string file_path;
  int64_t n = 100000;
  int universe_bits = 16;
  double zipf_s = 1.1;
  double p_del = 0.0;
  double gamma = 0.01;
  double beta = 0.01;
  std::vector<double> rhos = {0.1, 1.0, 10.0};  // private cells; a
                                                // non-private baseline is
                                                // always emitted
  double delta = 1e-6;
  std::vector<double> space_kbs = {9.2, 18.4, 36.8, 73.6, 147.3};
  std::vector<SketchVariant> variants = {SketchVariant::kCountMin,
                                         SketchVariant::kCountSketch};
  int top_k = 10;
  int max_m = 10;   // quantile sweep probes m = 1..max_m
  int repeats = 5;
  uint64_t seed = 42;
  bool exact_mode = false;  // quantile runs use exact-counter levels
};

// Long-format result row; metrics are averaged over the repeats.
struct CsvRow {
  std::string experiment;
  std::string variant;
  bool is_private = false;
  double rho = 0;  // ignored when !is_private (printed as "none")
  double beta = 0;
  double gamma = 0;
  double space_kb = 0;
  int universe_bits = 0;
  int64_t n = 0;
  int repeats = 0;
  uint64_t seed = 0;
  std::string metric;
  double value = 0;
};

// Frequency estimation ARE per (variant, space budget, rho | none).
std::vector<CsvRow> RunFrequency(const ExperimentConfig& config);

// Top-k F1 per (variant, space budget, rho | none).
std::vector<CsvRow> RunTopk(const ExperimentConfig& config);

// Dyadic sketch average rank error per (rho | none, m = 1..max_m).
std::vector<CsvRow> RunQuantile(const ExperimentConfig& config);

// Derived quantities (d, w, sigma, E, Delta_2, epsilon(delta)) per
// (variant, rho).
std::vector<CsvRow> RunCalibrate(const ExperimentConfig& config);

// Deterministic CSV serialization: byte-identical for identical inputs.
std::string ToCsv(const std::vector<CsvRow>& rows);
void WriteCsv(const std::vector<CsvRow>& rows, std::ostream& out);

// Per-repeat derived seeds, shared across all cells of a run.
struct RepeatSeeds {
  uint64_t stream;
  uint64_t hash;
  uint64_t noise;
};
RepeatSeeds SeedsForRepeat(uint64_t seed, int repeat);

// The workload a config describes, for one repeat.
Stream MakeStream(const ExperimentConfig& config, int repeat);

}  // namespace dpsketch

#endif  // DPSKETCH_EXPERIMENT_HPP_

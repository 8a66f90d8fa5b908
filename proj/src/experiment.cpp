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

#include "dpsketch/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "dpsketch/dp.hpp"
#include "dpsketch/dp_sketch.hpp"
#include "dpsketch/dyadic.hpp"
#include "dpsketch/evaluation.hpp"
#include "dpsketch/hashing.hpp"
#include "dpsketch/sketch.hpp"

namespace dpsketch {

namespace {

constexpr uint64_t kStreamSeedTag = 0x73747265616dULL;
constexpr uint64_t kHashSeedTag = 0x68617368ULL;
constexpr uint64_t kNoiseSeedTag = 0x6e6f697365ULL;
constexpr uint64_t kDeleteSeedTag = 0x64656cULL;

void ValidateConfig(const ExperimentConfig& config) {
  if (config.repeats < 1) {
    throw std::invalid_argument("repeats must be >= 1");
  }
  if (config.dataset == StreamSource::kZipf && config.n < 1) {
    throw std::invalid_argument("n must be >= 1");
  }
  if (config.dataset == StreamSource::kFile && config.file_path.empty()) {
    throw std::invalid_argument("file dataset needs --file");
  }
  if (config.universe_bits < 1 || config.universe_bits > 62) {
    throw std::invalid_argument("universe_bits must lie in [1, 62]");
  }
  if (!(config.zipf_s > 0)) {
    throw std::invalid_argument("zipf_s must be > 0");
  }
  if (!(config.p_del >= 0 && config.p_del < 0.5)) {
    throw std::invalid_argument("p_del must lie in [0, 0.5)");
  }
  for (const double rho : config.rhos) {
    if (!(rho > 0)) {
      throw std::invalid_argument("every rho must be positive");
    }
  }
}

double MeanOf(const std::vector<double>& values) {
  double sum = 0.0;
  for (const double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

std::string FormatDouble(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", v);
  return buffer;
}

struct RepeatData {
  Stream stream;
  ExactSummary summary;
};

std::vector<RepeatData> PrepareRepeats(const ExperimentConfig& config) {
  std::vector<RepeatData> repeats(config.repeats);
  if (config.dataset == StreamSource::kFile) {
    // One read; repeats only differ in the deletion shuffle.
    const Stream base = LoadStream(config.file_path, config.universe_bits);
    for (int rep = 0; rep < config.repeats; ++rep) {
      repeats[rep].stream =
          config.p_del > 0
              ? WithDeletions(base, config.p_del,
                              DeriveSeed(config.seed, rep, kDeleteSeedTag))
              : base;
      repeats[rep].summary = ExactCounts(repeats[rep].stream);
    }
    return repeats;
  }
#pragma omp parallel for schedule(dynamic)
  for (int rep = 0; rep < config.repeats; ++rep) {
    repeats[rep].stream = MakeStream(config, rep);
    repeats[rep].summary = ExactCounts(repeats[rep].stream);
  }
  return repeats;
}

// Estimates for every positive-count item of `summary`.
std::vector<double> SketchEstimates(const CounterMatrix& sketch,
                                    const ExactSummary& summary) {
  std::vector<double> estimates(summary.sorted_items.size());
  sketch.QueryMany(summary.sorted_items, estimates);
  return estimates;
}

using CellMetric = double (*)(std::span<const double>, const ExactSummary&,
                              int);

// Shared sweep for the frequency and top-k experiments: per (variant,
// space, rho-or-none) cell, the metric is averaged over seed-paired
// repeats.
std::vector<CsvRow> RunPointQuerySweep(const ExperimentConfig& config,
                                       const std::string& experiment,
                                       const std::string& metric_name,
                                       CellMetric metric, int metric_arg) {
  ValidateConfig(config);
  if (config.space_kbs.empty()) {
    throw std::invalid_argument("need at least one space budget");
  }
  const std::vector<RepeatData> repeats = PrepareRepeats(config);
  for (const RepeatData& data : repeats) {
    if (data.summary.sorted_items.empty()) {
      throw std::invalid_argument("stream has no positive-count items");
    }
    if (metric_arg > 0 && static_cast<size_t>(metric_arg) >
                              data.summary.sorted_items.size()) {
      throw std::invalid_argument("k exceeds the number of distinct items");
    }
  }

  std::vector<CsvRow> rows;
  CsvRow base;
  base.experiment = experiment;
  base.beta = config.beta;
  base.universe_bits = config.universe_bits;
  base.n = config.n;
  base.repeats = config.repeats;
  base.seed = config.seed;
  base.metric = metric_name;

  for (const SketchVariant variant : config.variants) {
    for (const double space_kb : config.space_kbs) {
      const SketchParams params =
          SketchParams::FromSpaceBudget(space_kb, config.beta, variant);
      const size_t cells = 1 + config.rhos.size();
      std::vector<std::vector<double>> cell_values(
          cells, std::vector<double>(config.repeats));
#pragma omp parallel for schedule(dynamic)
      for (int rep = 0; rep < config.repeats; ++rep) {
        const RepeatSeeds seeds = SeedsForRepeat(config.seed, rep);
        CounterMatrix nonprivate =
            CounterMatrix::NewNonPrivate(params, seeds.hash);
        nonprivate.UpdateStream(repeats[rep].stream);
        cell_values[0][rep] =
            metric(SketchEstimates(nonprivate, repeats[rep].summary),
                   repeats[rep].summary, metric_arg);
        for (size_t i = 0; i < config.rhos.size(); ++i) {
          const CounterMatrix private_sketch =
              Merge(NewPrivate(params, PrivacyBudget(config.rhos[i]),
                               seeds.hash, seeds.noise),
                    nonprivate);
          cell_values[1 + i][rep] =
              metric(SketchEstimates(private_sketch, repeats[rep].summary),
                     repeats[rep].summary, metric_arg);
        }
      }
      CsvRow row = base;
      row.variant = VariantName(variant);
      row.gamma = params.gamma;
      row.space_kb = space_kb;
      row.is_private = false;
      row.value = MeanOf(cell_values[0]);
      rows.push_back(row);
      for (size_t i = 0; i < config.rhos.size(); ++i) {
        row.is_private = true;
        row.rho = config.rhos[i];
        row.value = MeanOf(cell_values[1 + i]);
        rows.push_back(row);
      }
    }
  }
  return rows;
}

double AreMetric(std::span<const double> estimates,
                 const ExactSummary& summary, int) {
  return Are(estimates, summary);
}

double F1Metric(std::span<const double> estimates,
                const ExactSummary& summary, int k) {
  return F1TopK(estimates, summary, k);
}

}  // namespace

RepeatSeeds SeedsForRepeat(uint64_t seed, int repeat) {
  return RepeatSeeds{DeriveSeed(seed, repeat, kStreamSeedTag),
                     DeriveSeed(seed, repeat, kHashSeedTag),
                     DeriveSeed(seed, repeat, kNoiseSeedTag)};
}

Stream MakeStream(const ExperimentConfig& config, int repeat) {
  const RepeatSeeds seeds = SeedsForRepeat(config.seed, repeat);
  Stream stream;
  if (config.dataset == StreamSource::kZipf) {
    StreamSpec spec;
    spec.source = StreamSource::kZipf;
    spec.n = config.n;
    spec.universe_bits = config.universe_bits;
    spec.zipf_s = config.zipf_s;
    spec.seed = seeds.stream;
    stream = GenZipf(spec);
  } else {
    stream = LoadStream(config.file_path, config.universe_bits);
  }
  if (config.p_del > 0) {
    stream = WithDeletions(
        stream, config.p_del,
        DeriveSeed(config.seed, repeat, kDeleteSeedTag));
  }
  return stream;
}

std::vector<CsvRow> RunFrequency(const ExperimentConfig& config) {
  return RunPointQuerySweep(config, "frequency", "are", AreMetric, 0);
}

std::vector<CsvRow> RunTopk(const ExperimentConfig& config) {
  if (config.top_k < 1) {
    throw std::invalid_argument("k must be >= 1");
  }
  return RunPointQuerySweep(config, "topk",
                            "f1_k" + std::to_string(config.top_k), F1Metric,
                            config.top_k);
}

std::vector<CsvRow> RunQuantile(const ExperimentConfig& config) {
  ValidateConfig(config);
  if (config.max_m < 1) {
    throw std::invalid_argument("m must be >= 1");
  }
  const std::vector<RepeatData> repeats = PrepareRepeats(config);
  for (const RepeatData& data : repeats) {
    if (data.summary.total < 1) {
      throw std::invalid_argument("rank error needs a positive total count");
    }
  }

  CsvRow base;
  base.experiment = "quantile";
  base.beta = config.beta;
  base.gamma = config.gamma;
  base.universe_bits = config.universe_bits;
  base.n = config.n;
  base.repeats = config.repeats;
  base.seed = config.seed;

  std::vector<CsvRow> rows;
  // Cells: the exact-counter oracle short-circuits everything else; a
  // sketched run sweeps the non-private baseline plus each rho (DCS only;
  // a private dyadic Count-Min is undefined).
  struct Cell {
    bool exact = false;
    bool is_private = false;
    double rho = 0;
    SketchVariant variant = SketchVariant::kCountSketch;
  };
  std::vector<Cell> cells;
  if (config.exact_mode) {
    cells.push_back(Cell{true, false, 0, SketchVariant::kCountSketch});
  } else {
    for (const SketchVariant variant : config.variants) {
      cells.push_back(Cell{false, false, 0, variant});
    }
    for (const double rho : config.rhos) {
      cells.push_back(Cell{false, true, rho, SketchVariant::kCountSketch});
    }
  }

  for (const Cell& cell : cells) {
    DyadicParams dyadic_params;
    if (!cell.exact) {
      dyadic_params =
          DyadicParams::Derive(config.universe_bits, config.gamma,
                               cell.variant, cell.is_private ? cell.rho : 0.0);
    }
    // errors[m-1][rep]
    std::vector<std::vector<double>> errors(
        config.max_m, std::vector<double>(config.repeats));
#pragma omp parallel for schedule(dynamic)
    for (int rep = 0; rep < config.repeats; ++rep) {
      const RepeatSeeds seeds = SeedsForRepeat(config.seed, rep);
      DyadicSketch sketch =
          cell.exact ? DyadicSketch::NewExact(config.universe_bits)
                     : DyadicSketch::New(dyadic_params, seeds.hash,
                                         seeds.noise);
      sketch.UpdateStream(repeats[rep].stream);
      const auto rank_fn = [&sketch](uint64_t x) { return sketch.Rank(x); };
      for (int m = 1; m <= config.max_m; ++m) {
        errors[m - 1][rep] =
            AvgRankError(rank_fn, repeats[rep].summary, m);
      }
    }
    CsvRow row = base;
    row.variant = cell.exact ? "exact" : VariantName(cell.variant);
    row.is_private = cell.is_private;
    row.rho = cell.rho;
    row.space_kb = cell.exact ? 0.0
                              : static_cast<double>(dyadic_params.levels()) *
                                    dyadic_params.level_rows *
                                    dyadic_params.level_cols * 8 / 1024.0;
    for (int m = 1; m <= config.max_m; ++m) {
      row.metric = "rank_error_m" + std::to_string(m);
      row.value = MeanOf(errors[m - 1]);
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<CsvRow> RunCalibrate(const ExperimentConfig& config) {
  if (!(config.delta > 0 && config.delta < 1)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  CsvRow base;
  base.experiment = "calibrate";
  base.beta = config.beta;
  base.gamma = config.gamma;
  base.universe_bits = config.universe_bits;
  base.n = config.n;
  base.repeats = config.repeats;
  base.seed = config.seed;

  std::vector<CsvRow> rows;
  for (const SketchVariant variant : config.variants) {
    const SketchParams params =
        SketchParams::FromAccuracy(config.gamma, config.beta, variant);
    for (const double rho : config.rhos) {
      const PrivacyBudget budget(rho);
      CsvRow row = base;
      row.variant = VariantName(variant);
      row.is_private = true;
      row.rho = rho;
      row.space_kb = params.SpaceKb();
      const std::pair<const char*, double> metrics[] = {
          {"rows", static_cast<double>(params.rows)},
          {"cols", static_cast<double>(params.cols)},
          {"sigma", CalibrateSigma(params.rows, budget)},
          {"noise_bound_e",
           NoiseBoundE(params.rows, params.cols, params.beta, budget)},
          {"l2_sensitivity", L2Sensitivity(params.rows)},
          {"epsilon", ZcdpToDp(budget, config.delta)},
      };
      for (const auto& [name, value] : metrics) {
        row.metric = name;
        row.value = value;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

void WriteCsv(const std::vector<CsvRow>& rows, std::ostream& out) {
  out << "experiment,variant,private,rho,beta,gamma,space_kb,universe_bits,"
         "n,repeats,seed,metric,value\n";
  for (const CsvRow& row : rows) {
    out << row.experiment << ',' << row.variant << ','
        << (row.is_private ? 1 : 0) << ','
        << (row.is_private ? FormatDouble(row.rho) : std::string("none"))
        << ',' << FormatDouble(row.beta) << ',' << FormatDouble(row.gamma)
        << ',' << FormatDouble(row.space_kb) << ',' << row.universe_bits
        << ',' << row.n << ',' << row.repeats << ',' << row.seed << ','
        << row.metric << ',' << FormatDouble(row.value) << '\n';
  }
}

std::string ToCsv(const std::vector<CsvRow>& rows) {
  std::ostringstream out;
  WriteCsv(rows, out);
  return out.str();
}

}  // namespace dpsketch

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

// Experiment harness: builds sketches, replays workloads, and emits one
// long-format CSV row per (cell, metric). Identical flags and seed produce
// byte-identical output.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dpsketch/experiment.hpp"

namespace {

using dpsketch::CsvRow;
using dpsketch::ExperimentConfig;
using dpsketch::SketchVariant;
using dpsketch::StreamSource;

struct CliOptions {
  ExperimentConfig config;
  std::string dataset = "zipf";
  std::vector<std::string> variants;
  std::string output;
};

void AddCommonFlags(CLI::App* cmd, CliOptions* opts) {
  cmd->add_option("--dataset", opts->dataset, "Workload source")
      ->check(CLI::IsMember({"zipf", "file"}))
      ->capture_default_str();
  cmd->add_option("--file", opts->config.file_path,
                  "Stream file for --dataset file (lines of '<id>,<+1|-1>')");
  cmd->add_option("--n", opts->config.n, "Stream length for zipf workloads")
      ->capture_default_str();
  cmd->add_option("--universe-bits", opts->config.universe_bits,
                  "Universe size exponent (ids < 2^bits)")
      ->capture_default_str();
  cmd->add_option("--zipf-s", opts->config.zipf_s, "Zipf skew exponent")
      ->capture_default_str();
  cmd->add_option("--p-del", opts->config.p_del,
                  "Fraction of ops that are deletes, in [0, 0.5)")
      ->capture_default_str();
  cmd->add_option("--gamma", opts->config.gamma, "Relative accuracy target")
      ->capture_default_str();
  cmd->add_option("--beta", opts->config.beta, "Failure probability")
      ->capture_default_str();
  cmd->add_option("--rho", opts->config.rhos,
                  "zCDP budgets (repeatable); a non-private baseline is "
                  "always included")
      ->capture_default_str();
  cmd->add_option("--delta", opts->config.delta,
                  "delta for (epsilon, delta) reporting")
      ->capture_default_str();
  cmd->add_option("--space-kb", opts->config.space_kbs,
                  "Sketch space budgets in KB (repeatable)")
      ->capture_default_str();
  cmd->add_option("--k", opts->config.top_k, "Top-k size")
      ->capture_default_str();
  cmd->add_option("--m", opts->config.max_m,
                  "Quantile sweep probes m = 1..this")
      ->capture_default_str();
  cmd->add_option("--repeats", opts->config.repeats, "Independent runs")
      ->capture_default_str();
  cmd->add_option("--seed", opts->config.seed, "Master seed")
      ->capture_default_str();
  cmd->add_option("--variant", opts->variants,
                  "Sketch variants (repeatable): cm, cs; default both")
      ->check(CLI::IsMember({"cm", "cs"}));
  cmd->add_option("--output", opts->output, "CSV path (default stdout)");
  cmd->add_flag("--exact-mode", opts->config.exact_mode,
                "Quantile runs use exact per-level counters (oracle mode)");
}

int FinishRun(const CliOptions& opts, const std::vector<CsvRow>& rows) {
  if (opts.output.empty()) {
    dpsketch::WriteCsv(rows, std::cout);
    return 0;
  }
  std::ofstream out(opts.output, std::ios::binary);
  if (!out) {
    std::cerr << "cannot open output file: " << opts.output << "\n";
    return 1;
  }
  dpsketch::WriteCsv(rows, out);
  return 0;
}

ExperimentConfig ResolveConfig(const CliOptions& opts) {
  ExperimentConfig config = opts.config;
  config.dataset =
      opts.dataset == "file" ? StreamSource::kFile : StreamSource::kZipf;
  if (!opts.variants.empty()) {
    config.variants.clear();
    for (const std::string& name : opts.variants) {
      config.variants.push_back(name == "cm" ? SketchVariant::kCountMin
                                             : SketchVariant::kCountSketch);
    }
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Differentially private linear and dyadic quantile sketches: "
      "frequency, top-k and quantile experiment runner"};
  app.require_subcommand(1);

  CliOptions opts;
  CLI::App* frequency = app.add_subcommand(
      "frequency", "Frequency-estimation ARE sweep over space and rho");
  CLI::App* topk =
      app.add_subcommand("topk", "Top-k F1 sweep over space and rho");
  CLI::App* quantile = app.add_subcommand(
      "quantile", "Dyadic sketch average rank error sweep over rho and m");
  CLI::App* calibrate = app.add_subcommand(
      "calibrate", "Print derived (d, w, sigma, E, Delta_2, epsilon)");
  for (CLI::App* cmd : {frequency, topk, quantile, calibrate}) {
    AddCommonFlags(cmd, &opts);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const ExperimentConfig config = ResolveConfig(opts);
    std::vector<CsvRow> rows;
    if (frequency->parsed()) {
      rows = dpsketch::RunFrequency(config);
    } else if (topk->parsed()) {
      rows = dpsketch::RunTopk(config);
    } else if (quantile->parsed()) {
      rows = dpsketch::RunQuantile(config);
    } else {
      rows = dpsketch::RunCalibrate(config);
    }
    return FinishRun(opts, rows);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

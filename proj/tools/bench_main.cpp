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

// Throughput comparison of the serial reference kernels against the
// OpenMP-parallel ones, after asserting that both produce bit-identical
// state.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dpsketch/dp_sketch.hpp"
#include "dpsketch/dyadic.hpp"
#include "dpsketch/evaluation.hpp"
#include "dpsketch/sketch.hpp"
#include "dpsketch/workload.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double MillisSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

void Report(const char* name, double serial_ms, double parallel_ms,
            double work_items) {
  std::printf("%-28s %10.1f ms %10.1f ms %7.2fx %12.1f Mops/s\n", name,
              serial_ms, parallel_ms, serial_ms / parallel_ms,
              work_items / parallel_ms / 1e3);
}

void RequireEqual(bool ok, const char* what) {
  if (!ok) {
    std::fprintf(stderr, "parallel/serial mismatch in %s\n", what);
    std::exit(1);
  }
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (OpenMP disabled)\n");
#endif
  std::printf("%-28s %13s %13s %8s %14s\n", "kernel", "serial", "parallel",
              "speedup", "throughput");

  dpsketch::StreamSpec spec;
  spec.n = 2'000'000;
  spec.universe_bits = 20;
  spec.zipf_s = 1.1;
  spec.seed = 7;
  const dpsketch::Stream stream = dpsketch::GenZipf(spec);

  // Linear sketch batch update, d rows in parallel.
  {
    const auto params = dpsketch::SketchParams::Explicit(
        9, 1 << 14, dpsketch::SketchVariant::kCountSketch, 0.01);
    auto serial = dpsketch::CounterMatrix::NewNonPrivate(params, 1);
    auto parallel = dpsketch::CounterMatrix::NewNonPrivate(params, 1);
    auto t0 = Clock::now();
    serial.UpdateStreamSerial(stream);
    const double serial_ms = MillisSince(t0);
    t0 = Clock::now();
    parallel.UpdateStream(stream);
    const double parallel_ms = MillisSince(t0);
    bool equal = true;
    for (int r = 0; r < params.rows && equal; ++r) {
      for (int c = 0; c < params.cols; ++c) {
        if (serial.ValueAt(r, c) != parallel.ValueAt(r, c)) {
          equal = false;
          break;
        }
      }
    }
    RequireEqual(equal, "CounterMatrix::UpdateStream");
    Report("sketch update (d=9)", serial_ms, parallel_ms,
           static_cast<double>(spec.n) * params.rows);

    // Point queries over every distinct item, items in parallel.
    const auto summary = dpsketch::ExactCounts(stream);
    std::vector<double> out_serial(summary.sorted_items.size());
    std::vector<double> out_parallel(summary.sorted_items.size());
    t0 = Clock::now();
    for (size_t i = 0; i < summary.sorted_items.size(); ++i) {
      out_serial[i] = parallel.Query(summary.sorted_items[i]);
    }
    const double query_serial_ms = MillisSince(t0);
    t0 = Clock::now();
    parallel.QueryMany(summary.sorted_items, out_parallel);
    const double query_parallel_ms = MillisSince(t0);
    RequireEqual(out_serial == out_parallel, "CounterMatrix::QueryMany");
    Report("sketch query", query_serial_ms, query_parallel_ms,
           static_cast<double>(summary.sorted_items.size()));
  }

  // Dyadic update, (level, row) pairs in parallel.
  {
    const auto params = dpsketch::DyadicParams::Derive(
        20, 0.01, dpsketch::SketchVariant::kCountSketch);
    auto serial = dpsketch::DyadicSketch::New(params, 1);
    auto parallel = dpsketch::DyadicSketch::New(params, 1);
    const std::span<const dpsketch::StreamOp> ops(stream.data(), 200'000);
    auto t0 = Clock::now();
    serial.UpdateStreamSerial(ops);
    const double serial_ms = MillisSince(t0);
    t0 = Clock::now();
    parallel.UpdateStream(ops);
    const double parallel_ms = MillisSince(t0);
    bool equal = true;
    for (int j = 0; j < params.levels() && equal; ++j) {
      for (int r = 0; r < params.level_rows && equal; ++r) {
        for (int c = 0; c < params.level_cols; ++c) {
          if (serial.level(j).ValueAt(r, c) !=
              parallel.level(j).ValueAt(r, c)) {
            equal = false;
            break;
          }
        }
      }
    }
    RequireEqual(equal, "DyadicSketch::UpdateStream");
    Report("dyadic update (L=20, d=9)", serial_ms, parallel_ms,
           static_cast<double>(ops.size()) * params.levels() *
               params.level_rows);
  }

  // Private initialization, rows in parallel. Running the same call with
  // one thread doubles as a check that the noise is thread-count
  // invariant.
  {
    const auto params = dpsketch::SketchParams::Explicit(
        64, 1 << 16, dpsketch::SketchVariant::kCountMin, 0.01);
    const auto profile =
        dpsketch::NoiseProfile::For(params, dpsketch::PrivacyBudget(1.0));
#ifdef _OPENMP
    const int max_threads = omp_get_max_threads();
    omp_set_num_threads(1);
#endif
    auto t0 = Clock::now();
    const auto serial_noise = dpsketch::GenerateInitNoise(profile, 99);
    const double serial_ms = MillisSince(t0);
#ifdef _OPENMP
    omp_set_num_threads(max_threads);
#endif
    t0 = Clock::now();
    const auto noise = dpsketch::GenerateInitNoise(profile, 99);
    const double parallel_ms = MillisSince(t0);
    RequireEqual(noise == serial_noise, "GenerateInitNoise");
    Report("private init (4.2M cells)", serial_ms, parallel_ms,
           static_cast<double>(noise.size()));
  }

  return 0;
}

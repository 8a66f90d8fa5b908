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

#ifndef DPSKETCH_WORKLOAD_HPP_
#define DPSKETCH_WORKLOAD_HPP_

#include <cstdint>
#include <random>
#include <string>

#include "dpsketch/stream.hpp"

namespace dpsketch {

enum class StreamSource { kZipf, kFile };

struct StreamSpec {
  StreamSource source = StreamSource::kZipf;
  int64_t n = 0;          // stream length (inserts)
  int universe_bits = 16; // generated ids < 2^universe_bits
  double zipf_s = 1.1;    // skew exponent, > 0
  double p_del = 0.0;     // deletion fraction of the final op count, [0, 0.5)
  uint64_t seed = 0;
};

// Zipf sampler over ranks {1..num_elements} with mass proportional to
// rank^-s, by rejection-inversion; O(1) memory and time per draw for any
// universe size. Deterministic for a fixed seed.
class ZipfSampler {
 public:
  ZipfSampler(uint64_t num_elements, double exponent);

  // Rank in [1, num_elements].
  uint64_t Sample(std::mt19937_64& rng) const;

 private:
  double H(double x) const;
  double HIntegral(double x) const;
  double HIntegralInverse(double x) const;

  uint64_t num_elements_;
  double exponent_;
  double h_integral_x1_;
  double h_integral_num_elements_;
  double threshold_;
};

// n insert ops; item id = sampled rank - 1, so id k is the (k+1)-th most
// likely item.
Stream GenZipf(const StreamSpec& spec);

// Reads `<unsigned-decimal-id>,<+1|-1>` per line; '#' starts a comment and
// blank lines are skipped. Throws with the offending line number on parse
// errors or ids outside [0, 2^universe_bits).
Stream LoadStream(const std::string& path, int universe_bits = 64);

// Replaces an insert-only stream with a strict-turnstile stream: deletes of
// previously inserted, not-yet-deleted occurrences are interleaved so that
// roughly a p_del fraction of all ops are deletes and every prefix keeps
// non-negative net counts.
Stream WithDeletions(const Stream& inserts, double p_del, uint64_t seed);

}  // namespace dpsketch

#endif  // DPSKETCH_WORKLOAD_HPP_

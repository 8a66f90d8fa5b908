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

#ifndef DPSKETCH_HASHING_HPP_
#define DPSKETCH_HASHING_HPP_

#include <cstdint>
#include <stdexcept>

namespace dpsketch {

// splitmix64 finalizer; bijective on 64-bit words with full avalanche.
constexpr uint64_t Mix64(uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Derives a stream of decorrelated seeds from a base seed; used wherever a
// module needs several independent random sources (per row, per level, per
// repeat) from one user-supplied seed.
constexpr uint64_t DeriveSeed(uint64_t base, uint64_t lane, uint64_t tag) {
  return Mix64(base ^ Mix64(lane * 0x9e3779b97f4a7c15ULL + tag));
}

// Identifies one row's hash functions under a master seed.
struct HashSeed {
  uint64_t master_seed = 0;
  uint32_t row = 0;
};

// One sketch row's index hash h_r and sign hash g_r, with per-(seed, row,
// family) keys precomputed. The two families carry distinct tags so the
// index and sign outputs stay statistically independent of each other and
// across rows; quality is enforced by chi-squared tests, not by a k-wise
// independence proof.
class RowHash {
 public:
  RowHash(uint64_t master_seed, uint32_t row)
      : index_key_(DeriveSeed(master_seed, row, kIndexFamilyTag)),
        index_key2_(Mix64(index_key_ ^ kIndexFamilyTag)),
        sign_key_(DeriveSeed(master_seed, row, kSignFamilyTag)),
        sign_key2_(Mix64(sign_key_ ^ kSignFamilyTag)) {}

  // Column index in [0, width); multiply-shift reduction of the mixed word,
  // so the bucket bias is below 2^-64 regardless of width.
  uint32_t Index(uint64_t item, uint32_t width) const {
    const uint64_t m = Mix64(Mix64(item + index_key_) ^ index_key2_);
    return static_cast<uint32_t>(
        (static_cast<unsigned __int128>(m) * width) >> 64);
  }

  // Sign in {-1, +1} from an independently keyed mix.
  int Sign(uint64_t item) const {
    const uint64_t m = Mix64(Mix64(item + sign_key_) ^ sign_key2_);
    return (m >> 63) ? +1 : -1;
  }

 private:
  static constexpr uint64_t kIndexFamilyTag = 0x68617368'696e6478ULL;
  static constexpr uint64_t kSignFamilyTag = 0x68617368'7369676eULL;

  uint64_t index_key_;
  uint64_t index_key2_;
  uint64_t sign_key_;
  uint64_t sign_key2_;
};

inline uint32_t HashIndex(const HashSeed& seed, uint64_t item,
                          uint32_t width) {
  if (width == 0) {
    throw std::invalid_argument("HashIndex: width must be >= 1");
  }
  return RowHash(seed.master_seed, seed.row).Index(item, width);
}

inline int HashSign(const HashSeed& seed, uint64_t item) {
  return RowHash(seed.master_seed, seed.row).Sign(item);
}

}  // namespace dpsketch

#endif  // DPSKETCH_HASHING_HPP_

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

#include "dpsketch/workload.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace dpsketch {

namespace {

double NextUniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased-enough bounded draw without platform-dependent distributions.
uint64_t NextBounded(std::mt19937_64& rng, uint64_t bound) {
  return static_cast<uint64_t>(
      (static_cast<unsigned __int128>(rng()) * bound) >> 64);
}

double Helper1(double x) {
  // log1p(x)/x, stable near zero.
  return std::abs(x) > 1e-8 ? std::log1p(x) / x : 1.0 - x / 2.0 + x * x / 3.0;
}

double Helper2(double x) {
  // expm1(x)/x, stable near zero.
  return std::abs(x) > 1e-8 ? std::expm1(x) / x : 1.0 + x / 2.0 + x * x / 6.0;
}

}  // namespace

ZipfSampler::ZipfSampler(uint64_t num_elements, double exponent)
    : num_elements_(num_elements), exponent_(exponent) {
  if (num_elements < 1) {
    throw std::invalid_argument("ZipfSampler needs at least one element");
  }
  if (!(exponent > 0)) {
    throw std::invalid_argument("Zipf exponent must be > 0");
  }
  h_integral_x1_ = HIntegral(1.5) - 1.0;
  h_integral_num_elements_ =
      HIntegral(static_cast<double>(num_elements) + 0.5);
  threshold_ = 2.0 - HIntegralInverse(HIntegral(2.5) - H(2.0));
}

double ZipfSampler::H(double x) const {
  return std::exp(-exponent_ * std::log(x));
}

double ZipfSampler::HIntegral(double x) const {
  const double log_x = std::log(x);
  return Helper2((1.0 - exponent_) * log_x) * log_x;
}

double ZipfSampler::HIntegralInverse(double x) const {
  double t = x * (1.0 - exponent_);
  if (t < -1.0) t = -1.0;  // guard against rounding below the pole
  return std::exp(Helper1(t) * x);
}

uint64_t ZipfSampler::Sample(std::mt19937_64& rng) const {
  for (;;) {
    const double u = h_integral_num_elements_ +
                     NextUniform(rng) *
                         (h_integral_x1_ - h_integral_num_elements_);
    const double x = HIntegralInverse(u);
    uint64_t k = x + 0.5 < 1.0 ? 1 : static_cast<uint64_t>(x + 0.5);
    if (k > num_elements_) k = num_elements_;
    if (static_cast<double>(k) - x <= threshold_ ||
        u >= HIntegral(static_cast<double>(k) + 0.5) - H(static_cast<double>(k))) {
      return k;
    }
  }
}

Stream GenZipf(const StreamSpec& spec) {
  if (spec.n < 1) {
    throw std::invalid_argument("stream length must be >= 1");
  }
  if (spec.universe_bits < 1 || spec.universe_bits > 63) {
    throw std::invalid_argument("universe_bits must lie in [1, 63]");
  }
  const uint64_t universe = uint64_t{1} << spec.universe_bits;
  const ZipfSampler sampler(universe, spec.zipf_s);
  std::mt19937_64 rng(spec.seed);
  Stream stream;
  stream.reserve(spec.n);
  for (int64_t i = 0; i < spec.n; ++i) {
    stream.push_back(StreamOp{sampler.Sample(rng) - 1, +1});
  }
  return stream;
}

Stream LoadStream(const std::string& path, int universe_bits) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open stream file: " + path);
  }
  const bool bounded = universe_bits < 64;
  const uint64_t universe = bounded ? (uint64_t{1} << universe_bits) : 0;
  Stream stream;
  std::string line;
  int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    const std::string where = path + ":" + std::to_string(line_no);
    if (comma == std::string::npos) {
      throw std::runtime_error(where + ": expected '<id>,<+1|-1>'");
    }
    const std::string id_part = line.substr(0, comma);
    const std::string value_part = line.substr(comma + 1);
    uint64_t item = 0;
    try {
      size_t used = 0;
      item = std::stoull(id_part, &used);
      if (used != id_part.size()) throw std::invalid_argument(id_part);
    } catch (const std::exception&) {
      throw std::runtime_error(where + ": bad item id '" + id_part + "'");
    }
    int value = 0;
    if (value_part == "+1") {
      value = +1;
    } else if (value_part == "-1") {
      value = -1;
    } else {
      throw std::runtime_error(where + ": value must be +1 or -1, got '" +
                               value_part + "'");
    }
    if (bounded && item >= universe) {
      throw std::runtime_error(where + ": item " + std::to_string(item) +
                               " outside universe of size 2^" +
                               std::to_string(universe_bits));
    }
    stream.push_back(StreamOp{item, value});
  }
  return stream;
}

Stream WithDeletions(const Stream& inserts, double p_del, uint64_t seed) {
  if (!(p_del >= 0.0 && p_del < 0.5)) {
    throw std::invalid_argument("p_del must lie in [0, 0.5)");
  }
  for (const StreamOp& op : inserts) {
    if (op.value != +1) {
      throw std::invalid_argument("WithDeletions input must be insert-only");
    }
  }
  if (p_del == 0.0) return inserts;

  const int64_t n = static_cast<int64_t>(inserts.size());
  const int64_t deletes = std::llround(n * p_del / (1.0 - p_del));
  std::mt19937_64 rng(seed);
  Stream out;
  out.reserve(n + deletes);
  std::vector<uint64_t> live;
  live.reserve(n);
  int64_t next_insert = 0;
  int64_t deletes_left = deletes;
  while (next_insert < n || deletes_left > 0) {
    const int64_t inserts_left = n - next_insert;
    const bool can_delete = deletes_left > 0 && !live.empty();
    bool do_delete = false;
    if (inserts_left == 0) {
      do_delete = true;
    } else if (can_delete) {
      const double p = static_cast<double>(deletes_left) /
                       static_cast<double>(deletes_left + inserts_left);
      do_delete = NextUniform(rng) < p;
    }
    if (do_delete) {
      const uint64_t idx = NextBounded(rng, live.size());
      out.push_back(StreamOp{live[idx], -1});
      live[idx] = live.back();
      live.pop_back();
      --deletes_left;
    } else {
      const uint64_t item = inserts[next_insert].item;
      out.push_back(StreamOp{item, +1});
      live.push_back(item);
      ++next_insert;
    }
  }
  return out;
}

}  // namespace dpsketch

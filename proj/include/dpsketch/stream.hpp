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

#ifndef DPSKETCH_STREAM_HPP_
#define DPSKETCH_STREAM_HPP_

#include <cstdint>
#include <vector>

namespace dpsketch {

// One turnstile event: insert (+1) or delete (-1) of a universe item.
struct StreamOp {
  uint64_t item = 0;
  int value = +1;  // must be -1 or +1

  friend bool operator==(const StreamOp&, const StreamOp&) = default;
};

using Stream = std::vector<StreamOp>;

}  // namespace dpsketch

#endif  // DPSKETCH_STREAM_HPP_

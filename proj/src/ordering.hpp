// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

namespace drauction::detail {

inline constexpr double kThresholdTieTol = 1e-12;

/// Indices sorted ascending by threshold. Runs of thresholds whose
/// consecutive gaps are within kThresholdTieTol count as ties and are ordered
/// by id, which keeps the order total and deterministic.
template <typename ThresholdOf, typename IdOf>
std::vector<std::size_t> threshold_order(std::size_t n, ThresholdOf threshold, IdOf id) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (threshold(a) != threshold(b)) return threshold(a) < threshold(b);
    return id(a) < id(b);
  });
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && threshold(order[end]) - threshold(order[end - 1]) <= kThresholdTieTol) ++end;
    if (end - start > 1) {
      std::sort(order.begin() + start, order.begin() + end,
                [&](std::size_t a, std::size_t b) { return id(a) < id(b); });
    }
    start = end;
  }
  return order;
}

}  // namespace drauction::detail

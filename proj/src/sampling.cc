// Copyright 2026 The tsaug Authors.
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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "tsaug/augment.h"
#include "tsaug/errors.h"

namespace tsaug {
namespace {

// Uniform in [0, range) by rejection, so results do not depend on the
// standard library's distribution implementation.
std::uint64_t Bounded(std::mt19937_64& rng, std::uint64_t range) {
  const std::uint64_t threshold = (0 - range) % range;
  while (true) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % range;
  }
}

}  // namespace

std::vector<std::size_t> SelectIndices(std::size_t n, double fraction,
                                       std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw ConfigError("fraction must lie in [0, 1]");
  }
  // The epsilon absorbs binary rounding such as 0.29 * 100 = 28.999...
  auto k = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 1e-9));
  k = std::min(k, n);
  if (k == 0) return {};

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(Bounded(rng, n - i));
    std::swap(perm[i], perm[j]);
  }
  perm.resize(k);
  std::sort(perm.begin(), perm.end());
  return perm;
}

}  // namespace tsaug

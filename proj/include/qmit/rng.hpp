// Copyright 2026 The qmit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "qmit/types.hpp"

namespace qmit {

// Deterministic random stream with a portable output sequence.
//
// The engine is std::mt19937_64, whose word sequence is fully pinned by the
// C++ standard. The real-valued transforms are written out by hand because
// the standard library's distribution adaptors are implementation-defined;
// with these, equal seeds give byte-identical downstream results on any
// conforming platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform double in [0, 1) built from the top 53 bits of one engine word.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). The O(n / 2^53) rounding bias of the scaled
  // uniform is irrelevant at the sample counts used here and keeps the
  // mapping platform-independent (no rejection loop).
  int uniform_int(int n) {
    const int k = static_cast<int>(uniform() * static_cast<double>(n));
    return k < n ? k : n - 1;
  }

  // One standard normal via Box-Muller. Consumes exactly two uniforms per
  // call; nothing is cached, so the draw order stays easy to reason about.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

 private:
  std::mt19937_64 eng_;
};

// Stateless 64-bit mixer (splitmix64 finalizer). Used to derive independent
// sub-stream seeds from a user seed plus a stream tag.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace qmit

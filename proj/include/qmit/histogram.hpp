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

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include <Eigen/Dense>

#include "qmit/rng.hpp"
#include "qmit/types.hpp"

namespace qmit {

// Exact outcome distribution over n_bits-bit strings. probs[i] is the
// probability of the bitstring whose leftmost character is the most
// significant bit of i.
struct ProbTable {
  int n_bits = 0;
  Eigen::VectorXd probs;

  static ProbTable zeros(int n_bits);
  // Checks nonnegativity (within slack) and unit total.
  void validate(double slack = 1e-9) const;
  double prob_of(const std::string& bits) const;
};

// Shot counts over bitstrings; keys all have the same length n_bits.
struct Histogram {
  int n_bits = 0;
  std::uint64_t shots = 0;
  std::map<std::string, std::uint64_t> counts;

  std::string to_json() const;
  static Histogram from_json(const std::string& text);
};

// Probability of bit `bit` being 0 / 1 under the table.
std::array<double, 2> marginal(const ProbTable& table, int bit);

// Draws `shots` samples by inverse-CDF over the table's index order, one
// uniform per shot, consuming the RNG stream in shot order.
Histogram sample(const ProbTable& table, std::uint64_t shots,
                 std::uint64_t seed);

// Empirical distribution counts/shots as a ProbTable.
ProbTable normalized(const Histogram& hist);

}  // namespace qmit

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

#include "qmit/histogram.hpp"

#include <cmath>
#include <stdexcept>

#include "qmit/state.hpp"
#include "vendor/json.hpp"

namespace qmit {

ProbTable ProbTable::zeros(int n_bits) {
  if (n_bits < 1 || n_bits > kMaxQubits) {
    throw std::invalid_argument("bit count must be in [1, " +
                                std::to_string(kMaxQubits) + "]");
  }
  ProbTable t;
  t.n_bits = n_bits;
  t.probs = Eigen::VectorXd::Zero(1L << n_bits);
  return t;
}

void ProbTable::validate(double slack) const {
  if (probs.size() != (1L << n_bits)) {
    throw std::runtime_error("probability table has wrong size");
  }
  double total = 0.0;
  for (long i = 0; i < probs.size(); ++i) {
    if (probs[i] < -slack) {
      throw std::runtime_error("negative probability in table");
    }
    total += probs[i];
  }
  if (std::abs(total - 1.0) > slack) {
    throw std::runtime_error("probability table does not sum to 1");
  }
}

double ProbTable::prob_of(const std::string& bits) const {
  if (static_cast<int>(bits.size()) != n_bits) {
    throw std::invalid_argument("bitstring length does not match the table");
  }
  return probs[static_cast<long>(index_of_bitstring(bits))];
}

std::array<double, 2> marginal(const ProbTable& table, int bit) {
  if (bit < 0 || bit >= table.n_bits) {
    throw std::invalid_argument("marginal bit out of range");
  }
  std::array<double, 2> out = {0.0, 0.0};
  for (long i = 0; i < table.probs.size(); ++i) {
    out[bit_of(static_cast<size_t>(i), bit, table.n_bits)] += table.probs[i];
  }
  return out;
}

Histogram sample(const ProbTable& table, std::uint64_t shots,
                 std::uint64_t seed) {
  table.validate();
  Histogram h;
  h.n_bits = table.n_bits;
  h.shots = shots;
  Rng rng(seed);
  const long dim = table.probs.size();
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform();
    double acc = 0.0;
    long pick = dim - 1;  // guard against round-off at the top end
    for (long i = 0; i < dim; ++i) {
      acc += table.probs[i];
      if (u < acc) {
        pick = i;
        break;
      }
    }
    ++h.counts[bitstring_of(static_cast<size_t>(pick), table.n_bits)];
  }
  return h;
}

ProbTable normalized(const Histogram& hist) {
  if (hist.shots == 0) {
    throw std::invalid_argument("cannot normalize an empty histogram");
  }
  ProbTable t = ProbTable::zeros(hist.n_bits);
  for (const auto& [bits, count] : hist.counts) {
    t.probs[static_cast<long>(index_of_bitstring(bits))] +=
        static_cast<double>(count) / static_cast<double>(hist.shots);
  }
  return t;
}

std::string Histogram::to_json() const {
  nlohmann::ordered_json j;
  j["shots"] = shots;
  nlohmann::ordered_json c = nlohmann::ordered_json::object();
  for (const auto& [bits, count] : counts) c[bits] = count;
  j["counts"] = c;
  return j.dump(2) + "\n";
}

Histogram Histogram::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("histogram JSON parse error: ") +
                                e.what());
  }
  if (!j.is_object() || !j.contains("shots") || !j.contains("counts") ||
      !j["counts"].is_object()) {
    throw std::invalid_argument(
        "histogram JSON must be {\"shots\": N, \"counts\": {...}}");
  }
  Histogram h;
  h.shots = j["shots"].get<std::uint64_t>();
  std::uint64_t total = 0;
  int n_bits = -1;
  for (const auto& [bits, count] : j["counts"].items()) {
    if (bits.empty() ||
        bits.find_first_not_of("01") != std::string::npos) {
      throw std::invalid_argument("histogram key is not a bitstring: " + bits);
    }
    if (n_bits < 0) {
      n_bits = static_cast<int>(bits.size());
    } else if (static_cast<int>(bits.size()) != n_bits) {
      throw std::invalid_argument("histogram keys have mixed lengths");
    }
    const std::uint64_t c = count.get<std::uint64_t>();
    h.counts[bits] = c;
    total += c;
  }
  if (n_bits < 0) {
    throw std::invalid_argument("histogram has no counts");
  }
  if (total != h.shots) {
    throw std::invalid_argument("histogram counts do not sum to shots");
  }
  h.n_bits = n_bits;
  return h;
}

}  // namespace qmit

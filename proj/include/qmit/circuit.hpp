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

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qmit/channel.hpp"
#include "qmit/types.hpp"

namespace qmit {

// One named (or inline-matrix) unitary op. Inline matrices are used by
// generated passes with non-standard unitaries; they cannot be serialized
// to the text format.
struct GateOp {
  std::string name;                 // empty for inline-matrix gates
  std::vector<int> targets;
  std::vector<double> params;
  std::optional<Matrix> matrix;
};

// One named channel op (an explicit noise site inside the circuit).
// Names: DEPOLARIZING(eta) | PAULI(px, py, pz) | XFLIP(p) | YFLIP(p) |
// ZFLIP(p), all single-qubit.
struct ChannelOp {
  std::string name;
  std::vector<int> targets;
  std::vector<double> params;
};

// Marks the designated noise insertion point (at most one per circuit).
// Ops may follow it: the collective twirl pass wraps this marker with its
// conjugating gate layers.
struct NoiseSiteOp {};

using Op = std::variant<GateOp, ChannelOp, NoiseSiteOp>;

Channel channel_from_name(const std::string& name,
                          const std::vector<double>& params);

// Straight-line circuit: ops in program order, then one terminal measurement
// of a strictly increasing list of qubits. Printed outcome bit i corresponds
// to measured qubit measured()[i]; qubit 0 is the leftmost printed bit.
class Circuit {
 public:
  explicit Circuit(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  const std::vector<Op>& ops() const { return ops_; }
  const std::vector<int>& measured() const { return measured_; }
  bool has_measurement() const { return !measured_.empty(); }
  bool has_noise_site() const;

  Circuit& gate(const std::string& name, std::vector<int> targets,
                std::vector<double> params = {});
  Circuit& gate_inline(Matrix u, std::vector<int> targets);
  Circuit& channel(const std::string& name, std::vector<int> targets,
                   std::vector<double> params = {});
  Circuit& noise_site();
  Circuit& measure(std::vector<int> targets);

  // Appends another circuit's ops (same qubit count, no measurement taken
  // over). Used to compose passes.
  Circuit& append(const Circuit& other);

  // Text round-trip. Grammar (one statement per line, '#' comments):
  //   QUBITS <n>              (optional; else inferred from max index + 1)
  //   GATE <name> <targets...> [params...]
  //   CHANNEL <name> <targets...> [params...]
  //   NOISESITE
  //   MEASURE <targets...>    (terminal)
  std::string to_text() const;
  static Circuit from_text(const std::string& text);

 private:
  void check_no_measurement() const;
  void check_targets(const std::vector<int>& targets) const;

  int n_qubits_;
  std::vector<Op> ops_;
  std::vector<int> measured_;
};

}  // namespace qmit

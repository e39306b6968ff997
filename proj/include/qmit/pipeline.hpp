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
#include <vector>

#include "qmit/mitigation.hpp"
#include "qmit/simulate.hpp"

namespace qmit {

// One single-qubit noise term: weight w on conjugation by the given Pauli
// axis ('X', 'Y' or 'Z'), 1 - w on identity; axis 'D' instead selects the
// depolarizing channel of strength w.
struct NoiseSpec {
  int qubit = 0;
  char axis = 'X';
  double weight = 0.0;

  Channel channel() const;
};

// Per-qubit channel map from a spec list; duplicate qubits rejected.
std::map<int, Channel> noise_channels(const std::vector<NoiseSpec>& specs);

struct PipelineInput {
  Circuit circuit;
  std::vector<NoiseSpec> noise;
  // Where the noise channels act; kStateNoise and kDetectorNoise give
  // identical distributions for these channels (duality), but collective
  // twirling is only possible on the state side.
  NoiseMode placement = NoiseMode::kStateNoise;
  MitigationConfig mitigation;
  std::uint64_t shots = 0;  // 0: exact only
  std::uint64_t seed = 0;

  explicit PipelineInput(Circuit circ) : circuit(std::move(circ)) {}
};

// The four-condition comparison: ideal, noisy, noisy+twirl, and
// noisy+twirl+correction. Sampled variants are present when shots > 0;
// their sub-streams are derived from the seed per condition, so adding or
// removing one condition cannot shift another's samples.
struct PipelineReport {
  ProbTable ideal;
  ProbTable noisy;
  ProbTable twirled;
  QuasiDistribution corrected;
  double tv_clip_loss = 0.0;

  std::optional<Histogram> ideal_hist;
  std::optional<Histogram> noisy_hist;
  std::optional<Histogram> twirled_hist;
  std::optional<QuasiDistribution> corrected_sampled;
  double tv_clip_loss_sampled = 0.0;
};

PipelineReport mitigate_pipeline(const PipelineInput& in);

// Internal-consistency checks on an assembled report (tables valid, quasi
// weights sum to 1 within 1e-9, histogram counts sum to shots). Throws
// std::runtime_error on violation.
void check_report(const PipelineReport& report, std::uint64_t shots);

}  // namespace qmit

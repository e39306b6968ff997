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

#include "qmit/channel.hpp"
#include "qmit/circuit.hpp"
#include "qmit/histogram.hpp"
#include "qmit/state.hpp"
#include "qmit/twirl.hpp"

namespace qmit {

// Where the measurement-error channel acts.
//  kIdeal: no measurement noise.
//  kStateNoise: the channel is applied to the state at the circuit's noise
//    site (or, absent one, immediately before measurement).
//  kDetectorNoise: the state is left untouched; the channel's adjoint
//    deforms the measurement POVM elements instead.
// For the channels used here the two noisy modes give identical outcome
// distributions; they are computed through independent code paths.
enum class NoiseMode { kIdeal, kStateNoise, kDetectorNoise };

// A measurement model: per-qubit single-qubit noise channels, keyed by the
// qubit they act on. Every keyed qubit must be measured by the circuit.
struct MeasurementModel {
  NoiseMode mode = NoiseMode::kIdeal;
  std::map<int, Channel> noise;

  static MeasurementModel ideal();
  static MeasurementModel state_noise(std::map<int, Channel> noise);
  static MeasurementModel detector_noise(std::map<int, Channel> noise);
};

// Evolves |0...0><0...0| through the circuit's ops. In kStateNoise mode the
// model channels are inserted at the noise site (or before measurement when
// the circuit has none). Detector-mode noise does not touch the state.
DensityMatrix evolve_state(const Circuit& circ, const MeasurementModel& model);

// Outcome distribution over the measured qubits. Printed bit i of each
// outcome corresponds to measured[i] (qubit 0 leftmost). In kDetectorNoise
// mode the probabilities are computed by contracting the reduced state with
// POVM elements M'_b = adjoint(channel)[|b><b|], one per noisy qubit.
ProbTable measurement_probs(const DensityMatrix& state,
                            const std::vector<int>& measured,
                            const MeasurementModel& model);

// Full exact run: evolve, then measure.
ProbTable run_exact(const Circuit& circ, const MeasurementModel& model);

// Finite-shot run: exact distribution, then inverse-CDF sampling.
Histogram run_sampled(const Circuit& circ, const MeasurementModel& model,
                      std::uint64_t shots, std::uint64_t seed);

// The three branch circuits of the collective pre-measurement twirl: for
// each G in the set, the original ops (minus any existing noise site),
// then G on every measured qubit, the noise site, G^dag on every measured
// qubit, and the original measurement. Identity layers are skipped; the
// default set serializes to named V/W/VDG/WDG gates, other sets use inline
// matrices. Requires a measured circuit.
std::array<Circuit, 3> premeasure_twirl_pass(
    const Circuit& circ, const TwirlSet& set = TwirlSet::default_set());

// Uniform average of the three branch distributions. Requires kIdeal or
// kStateNoise (the twirl acts on the state side; detector-mode twirling is
// rejected). With Pauli noise on the measured qubits this realizes the
// collective twirl of the measurement noise.
ProbTable run_twirl_exact(const Circuit& circ, const MeasurementModel& model,
                          const TwirlSet& set = TwirlSet::default_set());

// Finite-shot twirled run: each shot first draws one of the three branches
// uniformly, then draws an outcome from that branch's exact distribution;
// both draws consume the same RNG stream in shot order.
Histogram run_twirl_sampled(const Circuit& circ, const MeasurementModel& model,
                            std::uint64_t shots, std::uint64_t seed,
                            const TwirlSet& set = TwirlSet::default_set());

}  // namespace qmit

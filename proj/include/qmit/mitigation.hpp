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

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qmit/circuit.hpp"
#include "qmit/histogram.hpp"
#include "qmit/twirl.hpp"

namespace qmit {

// What to do with negative corrected weights: report them as-is (quasi),
// or clip to zero and renormalize.
enum class NegativePolicy { kQuasi, kClipRenormalize };

// How the "twirled" condition of the pipeline is realized: replace each
// per-qubit noise channel by its own three-unitary twirl (independent), or
// run the three shared-G branch circuits and average (collective). Both
// have identical per-qubit marginals; the collective form correlates the
// residual noise across qubits.
enum class TwirlModel { kIndependent, kCollective };

struct MitigationConfig {
  std::map<int, double> eta;  // per-qubit depolarizing strength for correction
  double eta_default = 0.0;
  NegativePolicy policy = NegativePolicy::kQuasi;
  TwirlModel twirl_model = TwirlModel::kIndependent;
  TwirlSet twirl_set = TwirlSet::default_set();

  double eta_for(int qubit) const;
  // All configured eta in [0, 1).
  void validate() const;
};

// Signed weights over bitstrings, summing to 1 (the image of a distribution
// under the inverse response map).
struct QuasiDistribution {
  int n_bits = 0;
  std::map<std::string, double> weights;

  double sum() const;
  double weight_of(const std::string& bits) const;
};

QuasiDistribution quasi_of(const ProbTable& table);
QuasiDistribution quasi_of(const Histogram& hist);

// Inverse of the depolarizing response on a single marginal:
// p -> (p - eta/2) / (1 - eta). Requires eta in [0, 1).
double correct_marginal(double p_obs, double eta);

// Tensor-product inverse of the per-bit symmetric-flip response matrices
// R(eta) = [[1-eta/2, eta/2], [eta/2, 1-eta/2]], applied as one sweep per
// printed bit position over the support. eta_by_bit[k] corrects bit k.
QuasiDistribution correct_joint(const QuasiDistribution& in,
                                const std::vector<double>& eta_by_bit);
QuasiDistribution correct_joint(const QuasiDistribution& in, double eta);

// Clip negatives to zero and renormalize; tv_loss is the total-variation
// distance 0.5 * sum |in - out|. Throws if everything clips to zero.
struct ProjectionResult {
  QuasiDistribution dist;
  double tv_loss = 0.0;
};
ProjectionResult project_to_simplex(const QuasiDistribution& q);

// Two-basis-state readout calibration: runs the all-|0> and all-|1>
// circuits (n qubits, all measured, noise site before measurement) through
// `runner` and estimates per-qubit flip rates. eta_hat = eps0 + eps1 per
// qubit; asymmetry = |eps0 - eps1| diagnoses non-depolarizing readout.
using CircuitRunner = std::function<Histogram(
    const Circuit&, std::uint64_t shots, std::uint64_t seed)>;

struct EtaCalibration {
  std::map<int, double> eta_hat;
  std::map<int, double> asymmetry;
};

EtaCalibration calibrate_eta(const CircuitRunner& runner, int n_qubits,
                             std::uint64_t shots, std::uint64_t seed);

}  // namespace qmit

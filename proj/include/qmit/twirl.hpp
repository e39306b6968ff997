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

#include "qmit/channel.hpp"
#include "qmit/rng.hpp"

namespace qmit {

// Three single-qubit unitaries used for channel twirling. A valid set
// requires: every element unitary; conjugation by every element maps the
// Pauli set {X, Y, Z} to itself up to sign; and, across the set, the three
// images of each axis cover all three axes (this is what turns any Pauli
// channel into a depolarizing channel under the averaged conjugation).
struct TwirlSet {
  std::array<Matrix, 3> g;

  static const TwirlSet& default_set();  // {I, V, W}
  // Validates the properties above; throws std::invalid_argument otherwise.
  static TwirlSet from_unitaries(Matrix g0, Matrix g1, Matrix g2);
};

// Averaged conjugation (1/3) sum_G G^dag Lambda[G rho G^dag] G, returned in
// Kraus form via Choi-matrix eigendecomposition. Accepts any single-qubit
// channel; for a Pauli channel the result is depolarizing with strength
// eta_of_pauli.
Channel twirl3(const Channel& lambda,
               const TwirlSet& set = TwirlSet::default_set());

// Depolarizing strength produced by twirling a Pauli channel:
// eta = (4/3) (px + py + pz). (Derived by brute-force twirling; the
// depolarizing channel with this eta flips a measured bit with probability
// eta/2.)
double eta_of_pauli(const PauliWeights& w);

// Monte-Carlo twirl over Haar-random single-qubit unitaries,
// (1/n) sum_i U_i^dag Lambda[U_i rho U_i^dag] U_i. Deterministic for a given
// seed: samples are drawn and accumulated in a fixed order. n_samples >= 1.
Channel twirl_haar_mc(const Channel& lambda, int n_samples,
                      std::uint64_t seed);

// One Haar-random 2x2 unitary (Ginibre draw + Gram-Schmidt with positive
// diagonal). Draw order of the eight normals is fixed: entries (0,0), (0,1),
// (1,0), (1,1), real part before imaginary part.
Matrix haar_unitary(Rng& rng);

// Collective twirl of a product of single-qubit channels on an n-qubit
// state: (1/3) sum_G G^(x)n [product of channels] (G^dag)^(x)n, with one
// shared G across all qubits per term. `per_qubit` must supply one
// single-qubit channel per qubit (identity_channel() for noiseless wires).
// When the k-th channel is Pauli, the k-th reduced output equals the
// depolarizing channel of strength eta_of_pauli applied to the k-th reduced
// input — but the joint output is correlated across qubits (the three terms
// share G), which is what distinguishes this from twirling each qubit
// independently.
DensityMatrix collective_twirl_apply(
    const DensityMatrix& state, const std::vector<Channel>& per_qubit,
    const TwirlSet& set = TwirlSet::default_set());

// Axis-controlled noise fragment dilation helpers: a fresh ancilla in |0>,
// RY(theta) on the ancilla, then controlled-{X|Y|Z} from the ancilla onto
// the system qubit. Tracing out the ancilla induces
//   rho -> (1 - p) rho + p U rho U^dag,  p = sin^2(theta / 2).
// Returns the induced single-qubit channel of the fragment (system = qubit
// 0, ancilla = qubit 1 internally). axis must be 'X', 'Y' or 'Z'.
Channel induced_noise_channel(char axis, double theta);

// The fragment's 4x4 dilation unitary itself (system qubit 0 = MSB,
// ancilla qubit 1 = LSB).
Matrix noise_fragment_unitary(char axis, double theta);

}  // namespace qmit

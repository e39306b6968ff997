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

#include <vector>

#include "qmit/state.hpp"
#include "qmit/types.hpp"

namespace qmit {

// What the Kraus normalization is checked against. Trace-preserving channels
// satisfy sum K^dag K = I; the adjoint of a trace-preserving map instead
// satisfies sum K X K^dag |_{X=I} = I (unital) and is the one sanctioned
// exemption from the trace-preservation invariant.
enum class ChannelKind { kTracePreserving, kUnital };

// Completely positive map on `arity` qubits in Kraus form.
struct Channel {
  int arity = 1;
  ChannelKind kind = ChannelKind::kTracePreserving;
  std::vector<Matrix> kraus;

  // Validates dimensions and the normalization for `kind` (within
  // tol::kKrausTp). Throws std::invalid_argument on violation.
  static Channel from_kraus(std::vector<Matrix> kraus,
                            ChannelKind kind = ChannelKind::kTracePreserving);
};

// Pauli mixing weights (p0 + px + py + pz = 1, all non-negative).
struct PauliWeights {
  double p0 = 1, px = 0, py = 0, pz = 0;
  void validate() const;
};

Channel identity_channel();
Channel unitary_channel(const Matrix& u);

// rho -> (1 - eta) rho + eta I/2, Kraus form
// {sqrt(1-3eta/4) I, sqrt(eta/4) X, sqrt(eta/4) Y, sqrt(eta/4) Z}.
// eta must lie in [0, 4/3] (the complete-positivity range; 4/3 is the
// uniform Pauli mixture).
Channel depolarizing(double eta);

// rho -> p0 rho + px X rho X + py Y rho Y + pz Z rho Z.
Channel pauli_channel(const PauliWeights& w);
Channel pauli_channel(double px, double py, double pz);  // p0 = 1 - sum

// Applies the channel to the given target qubits of a dense state.
void apply_channel(DensityMatrix& state, const Channel& ch,
                   const std::vector<int>& targets);

// Column-stacked superoperator: vec(Lambda[rho]) = S vec(rho),
// S = sum_K conj(K) (x) K. Dimension 4^arity x 4^arity.
Matrix superoperator(const Channel& ch);

// Direct action on one matrix of the channel's own dimension (works for
// POVM elements and other non-state operators).
Matrix channel_on_matrix(const Channel& ch, const Matrix& m);

// Heisenberg-picture adjoint: Kraus operators are the adjoints of the
// original's. Unital but generally not trace-preserving.
Channel adjoint_channel(const Channel& ch);

// Choi matrix C = sum_{ij} |i><j| (x) Lambda[|i><j|] assembled from a
// column-stacked superoperator.
Matrix choi_from_superop(const Matrix& superop, int arity);

// Kraus extraction by eigendecomposition of the (hermitian) Choi matrix.
// Eigenvalues below `cut` are dropped; eigenvalues in [-neg_floor, 0) are
// clamped to zero; anything below -neg_floor throws (map not completely
// positive).
std::vector<Matrix> kraus_from_choi(const Matrix& choi,
                                    double cut = tol::kChoiCut,
                                    double neg_floor = tol::kChoiNeg);

Channel channel_from_superop(const Matrix& superop, int arity,
                             ChannelKind kind = ChannelKind::kTracePreserving);

// True when the superoperators of `a` and `b` agree entrywise within
// `tolerance` (the canonical channel-equality test; Kraus decompositions are
// not unique).
bool channels_equal(const Channel& a, const Channel& b, double tolerance);

}  // namespace qmit

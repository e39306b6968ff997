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

#include "qmit/types.hpp"

namespace qmit {

// Largest register the dense simulator accepts (one 2^n x 2^n complex matrix
// has to fit comfortably in memory).
inline constexpr int kMaxQubits = 12;

// Dense density matrix over n qubits, basis indexed MSB-first (qubit 0 is the
// most significant bit).
struct DensityMatrix {
  int n_qubits = 0;
  Matrix rho;

  static DensityMatrix zero_state(int n_qubits);
  // Validates hermiticity, unit trace and positivity before accepting.
  static DensityMatrix from_matrix(int n_qubits, Matrix m);

  std::uint64_t dim() const { return 1ULL << n_qubits; }

  // Throws std::invalid_argument when the matrix is not hermitian within
  // `slack`, its trace differs from 1 by more than `slack`, or an eigenvalue
  // is below -eig_floor.
  void validate(double slack = tol::kState,
                double eig_floor = tol::kStateEig) const;
};

// Dense pure state over n qubits, same index convention.
struct StateVector {
  int n_qubits = 0;
  Vector amp;

  static StateVector zero_state(int n_qubits);
  static StateVector basis_state(int n_qubits, std::uint64_t index);

  std::uint64_t dim() const { return 1ULL << n_qubits; }
  DensityMatrix to_density() const;
  void validate(double slack = tol::kState) const;  // unit norm
};

// Kronecker product (first factor carries the more significant bits).
Matrix tensor(const Matrix& a, const Matrix& b);

// Applies a 2^k x 2^k unitary to `targets` (k = targets.size(), first listed
// target is the most significant bit of the gate's own index). Throws for
// out-of-range or duplicate targets, a size mismatch, or a non-unitary
// matrix.
void apply_unitary(DensityMatrix& state, const Matrix& u,
                   const std::vector<int>& targets);
void apply_unitary(StateVector& state, const Matrix& u,
                   const std::vector<int>& targets);

// Traces out every qubit not named in `keep`. `keep` must be non-empty,
// strictly increasing and in range; kept qubits retain their relative order.
DensityMatrix partial_trace(const DensityMatrix& state,
                            const std::vector<int>& keep);

// Same contraction on a raw 2^n x 2^n matrix (no state invariants assumed);
// used for operator-level bookkeeping such as induced-map extraction.
Matrix partial_trace_matrix(const Matrix& m, int n_qubits,
                            const std::vector<int>& keep);

}  // namespace qmit

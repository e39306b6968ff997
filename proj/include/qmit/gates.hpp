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

#include <map>
#include <string>
#include <vector>

#include "qmit/types.hpp"

namespace qmit {

// Named gate vocabulary.
//
// Single-qubit: I, X, Y, Z, H, V, W, VDG, WDG, RY(theta), PHASE(lambda),
//               U2(phi, lambda), U3(theta, phi, lambda).
// Two-qubit:    CX (alias CNOT), CY, CZ, CPHASE(lambda), SWAP.
//
// For two-qubit controlled gates the first target is the control. In a
// gate's own matrix the first listed target is the most significant index,
// matching the global bit convention.
struct GateInfo {
  int arity = 1;
  int n_params = 0;
};

// Registry of known gate names (canonical upper-case spelling).
const std::map<std::string, GateInfo>& gate_registry();

// Builds the unitary for a named gate. Throws std::invalid_argument for an
// unknown name or a wrong parameter count.
Matrix gate_matrix(const std::string& name, const std::vector<double>& params = {});

// 2x2 unitary -> controlled 4x4 unitary (first qubit is the control).
Matrix controlled(const Matrix& u);

// The axis-permuting twirl unitaries. Conjugation by V maps (X,Y,Z) to
// (Z,X,Y); conjugation by W maps (X,Y,Z) to (Y,Z,X); together with I the
// three images of every axis cover all three axes.
Matrix twirl_v();
Matrix twirl_w();

bool is_unitary(const Matrix& m, double tolerance = tol::kUnitary);

// Entrywise comparison, optionally modulo a global phase (the phase is fixed
// by the largest-magnitude entry of `a`).
bool approx_equal(const Matrix& a, const Matrix& b, double tolerance);
bool approx_equal_up_to_phase(const Matrix& a, const Matrix& b, double tolerance);

}  // namespace qmit

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

#include <complex>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

namespace qmit {

using cdouble = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

// Numeric tolerances shared across the library. Values are part of the
// documented contract of the operations that use them.
namespace tol {
inline constexpr double kUnitary = 1e-12;   // max |U^dag U - I| entry
inline constexpr double kKrausTp = 1e-10;   // max |sum K^dag K - I| entry
inline constexpr double kState = 1e-10;     // hermiticity / trace slack
inline constexpr double kStateEig = 1e-12;  // most negative admissible eigenvalue
inline constexpr double kChoiCut = 1e-12;   // Choi eigenvalue kept as a Kraus term
inline constexpr double kChoiNeg = 1e-10;   // most negative admissible Choi eigenvalue
}  // namespace tol

// Bit conventions, used everywhere: qubit 0 is the leftmost character of a
// printed bitstring and the most significant bit of a basis-state integer.
inline int bit_of(std::uint64_t index, int qubit, int n_bits) {
  return static_cast<int>((index >> (n_bits - 1 - qubit)) & 1ULL);
}

inline std::string bitstring_of(std::uint64_t index, int n_bits) {
  std::string s(static_cast<std::size_t>(n_bits), '0');
  for (int q = 0; q < n_bits; ++q) {
    if (bit_of(index, q, n_bits)) s[static_cast<std::size_t>(q)] = '1';
  }
  return s;
}

std::uint64_t index_of_bitstring(const std::string& s);

}  // namespace qmit

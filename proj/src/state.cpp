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

#include "qmit/state.hpp"

#include <algorithm>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "qmit/gates.hpp"

namespace qmit {

namespace {

void check_qubit_count(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, " +
                                std::to_string(kMaxQubits) + "], got " +
                                std::to_string(n_qubits));
  }
}

void check_targets(int n_qubits, const std::vector<int>& targets) {
  if (targets.empty()) {
    throw std::invalid_argument("target list must not be empty");
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= n_qubits) {
      throw std::invalid_argument("target qubit " + std::to_string(targets[i]) +
                                  " out of range for " +
                                  std::to_string(n_qubits) + " qubits");
    }
    for (std::size_t j = i + 1; j < targets.size(); ++j) {
      if (targets[i] == targets[j]) {
        throw std::invalid_argument("duplicate target qubit " +
                                    std::to_string(targets[i]));
      }
    }
  }
}

// Enumerates, for a target set, the bit offset of each target in the full
// index plus the list of full-index bases whose target bits are all zero.
struct TargetIndexing {
  std::vector<std::uint64_t> target_bit;   // one bit per target
  std::vector<std::uint64_t> group_base;   // indices with target bits cleared
  std::vector<std::uint64_t> sub_offset;   // offset of each gate sub-index
};

TargetIndexing make_indexing(int n_qubits, const std::vector<int>& targets) {
  TargetIndexing ix;
  const int k = static_cast<int>(targets.size());
  std::uint64_t target_mask = 0;
  for (int j = 0; j < k; ++j) {
    // First listed target is the most significant bit of the gate index.
    const std::uint64_t bit = 1ULL << (n_qubits - 1 - targets[j]);
    ix.target_bit.push_back(bit);
    target_mask |= bit;
  }
  const std::uint64_t dim = 1ULL << n_qubits;
  for (std::uint64_t b = 0; b < dim; ++b) {
    if ((b & target_mask) == 0) ix.group_base.push_back(b);
  }
  const std::uint64_t sub_dim = 1ULL << k;
  for (std::uint64_t g = 0; g < sub_dim; ++g) {
    std::uint64_t off = 0;
    for (int j = 0; j < k; ++j) {
      if ((g >> (k - 1 - j)) & 1ULL) off |= ix.target_bit[j];
    }
    ix.sub_offset.push_back(off);
  }
  return ix;
}

void check_gate(const Matrix& u, std::size_t n_targets) {
  const auto want = static_cast<Eigen::Index>(1ULL << n_targets);
  if (u.rows() != want || u.cols() != want) {
    throw std::invalid_argument("gate dimension " + std::to_string(u.rows()) +
                                " does not match " +
                                std::to_string(n_targets) + " target(s)");
  }
  if (!is_unitary(u)) {
    throw std::invalid_argument("gate matrix is not unitary");
  }
}

}  // namespace

DensityMatrix DensityMatrix::zero_state(int n_qubits) {
  check_qubit_count(n_qubits);
  DensityMatrix st;
  st.n_qubits = n_qubits;
  const auto dim = static_cast<Eigen::Index>(1ULL << n_qubits);
  st.rho = Matrix::Zero(dim, dim);
  st.rho(0, 0) = 1.0;
  return st;
}

DensityMatrix DensityMatrix::from_matrix(int n_qubits, Matrix m) {
  check_qubit_count(n_qubits);
  const auto dim = static_cast<Eigen::Index>(1ULL << n_qubits);
  if (m.rows() != dim || m.cols() != dim) {
    throw std::invalid_argument("density matrix dimension mismatch");
  }
  DensityMatrix st;
  st.n_qubits = n_qubits;
  st.rho = std::move(m);
  st.validate();
  return st;
}

void DensityMatrix::validate(double slack, double eig_floor) const {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > slack) {
    throw std::invalid_argument("density matrix is not hermitian");
  }
  if (std::abs(rho.trace() - cdouble(1.0)) > slack) {
    throw std::invalid_argument("density matrix trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -eig_floor) {
    throw std::invalid_argument("density matrix has a negative eigenvalue");
  }
}

StateVector StateVector::zero_state(int n_qubits) {
  return basis_state(n_qubits, 0);
}

StateVector StateVector::basis_state(int n_qubits, std::uint64_t index) {
  check_qubit_count(n_qubits);
  if (index >= (1ULL << n_qubits)) {
    throw std::invalid_argument("basis index out of range");
  }
  StateVector st;
  st.n_qubits = n_qubits;
  st.amp = Vector::Zero(static_cast<Eigen::Index>(1ULL << n_qubits));
  st.amp(static_cast<Eigen::Index>(index)) = 1.0;
  return st;
}

DensityMatrix StateVector::to_density() const {
  DensityMatrix st;
  st.n_qubits = n_qubits;
  st.rho = amp * amp.adjoint();
  return st;
}

void StateVector::validate(double slack) const {
  if (std::abs(amp.norm() - 1.0) > slack) {
    throw std::invalid_argument("state vector is not normalized");
  }
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

void apply_unitary(DensityMatrix& state, const Matrix& u,
                   const std::vector<int>& targets) {
  check_targets(state.n_qubits, targets);
  check_gate(u, targets.size());
  const auto ix = make_indexing(state.n_qubits, targets);
  const std::size_t sub = ix.sub_offset.size();
  const std::uint64_t dim = state.dim();
  std::vector<cdouble> scratch(sub);

  // rho <- U rho (row groups mixed within each target-bit cell).
  for (std::uint64_t base : ix.group_base) {
    for (std::uint64_t c = 0; c < dim; ++c) {
      for (std::size_t g = 0; g < sub; ++g) {
        scratch[g] = state.rho(static_cast<Eigen::Index>(base | ix.sub_offset[g]),
                               static_cast<Eigen::Index>(c));
      }
      for (std::size_t g = 0; g < sub; ++g) {
        cdouble acc = 0;
        for (std::size_t h = 0; h < sub; ++h) {
          acc += u(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(h)) *
                 scratch[h];
        }
        state.rho(static_cast<Eigen::Index>(base | ix.sub_offset[g]),
                  static_cast<Eigen::Index>(c)) = acc;
      }
    }
  }
  // rho <- rho U^dag (column groups).
  for (std::uint64_t base : ix.group_base) {
    for (std::uint64_t r = 0; r < dim; ++r) {
      for (std::size_t g = 0; g < sub; ++g) {
        scratch[g] = state.rho(static_cast<Eigen::Index>(r),
                               static_cast<Eigen::Index>(base | ix.sub_offset[g]));
      }
      for (std::size_t g = 0; g < sub; ++g) {
        cdouble acc = 0;
        for (std::size_t h = 0; h < sub; ++h) {
          acc += scratch[h] * std::conj(u(static_cast<Eigen::Index>(g),
                                          static_cast<Eigen::Index>(h)));
        }
        state.rho(static_cast<Eigen::Index>(r),
                  static_cast<Eigen::Index>(base | ix.sub_offset[g])) = acc;
      }
    }
  }
}

void apply_unitary(StateVector& state, const Matrix& u,
                   const std::vector<int>& targets) {
  check_targets(state.n_qubits, targets);
  check_gate(u, targets.size());
  const auto ix = make_indexing(state.n_qubits, targets);
  const std::size_t sub = ix.sub_offset.size();
  std::vector<cdouble> scratch(sub);
  for (std::uint64_t base : ix.group_base) {
    for (std::size_t g = 0; g < sub; ++g) {
      scratch[g] = state.amp(static_cast<Eigen::Index>(base | ix.sub_offset[g]));
    }
    for (std::size_t g = 0; g < sub; ++g) {
      cdouble acc = 0;
      for (std::size_t h = 0; h < sub; ++h) {
        acc += u(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(h)) *
               scratch[h];
      }
      state.amp(static_cast<Eigen::Index>(base | ix.sub_offset[g])) = acc;
    }
  }
}

Matrix partial_trace_matrix(const Matrix& m, int n_qubits,
                            const std::vector<int>& keep) {
  check_qubit_count(n_qubits);
  if (keep.empty()) {
    throw std::invalid_argument("keep list must not be empty");
  }
  if (!std::is_sorted(keep.begin(), keep.end()) ||
      std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
    throw std::invalid_argument("keep list must be strictly increasing");
  }
  for (int q : keep) {
    if (q < 0 || q >= n_qubits) {
      throw std::invalid_argument("keep qubit " + std::to_string(q) +
                                  " out of range");
    }
  }
  const auto dim = static_cast<Eigen::Index>(1ULL << n_qubits);
  if (m.rows() != dim || m.cols() != dim) {
    throw std::invalid_argument("matrix dimension mismatch in partial trace");
  }

  const int n_keep = static_cast<int>(keep.size());
  std::vector<int> rest;
  for (int q = 0; q < n_qubits; ++q) {
    if (!std::binary_search(keep.begin(), keep.end(), q)) rest.push_back(q);
  }
  // Scatter of a compact kept-index / rest-index into the full basis index.
  const auto scatter = [n_qubits](const std::vector<int>& qubits,
                                  std::uint64_t compact) {
    std::uint64_t full = 0;
    const int k = static_cast<int>(qubits.size());
    for (int j = 0; j < k; ++j) {
      if ((compact >> (k - 1 - j)) & 1ULL) {
        full |= 1ULL << (n_qubits - 1 - qubits[j]);
      }
    }
    return full;
  };

  const std::uint64_t out_dim = 1ULL << n_keep;
  const std::uint64_t rest_dim = 1ULL << rest.size();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(out_dim),
                            static_cast<Eigen::Index>(out_dim));
  std::vector<std::uint64_t> rest_mask(rest_dim);
  for (std::uint64_t r = 0; r < rest_dim; ++r) rest_mask[r] = scatter(rest, r);
  for (std::uint64_t a = 0; a < out_dim; ++a) {
    const std::uint64_t fa = scatter(keep, a);
    for (std::uint64_t b = 0; b < out_dim; ++b) {
      const std::uint64_t fb = scatter(keep, b);
      cdouble acc = 0;
      for (std::uint64_t r = 0; r < rest_dim; ++r) {
        acc += m(static_cast<Eigen::Index>(fa | rest_mask[r]),
                 static_cast<Eigen::Index>(fb | rest_mask[r]));
      }
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& state,
                            const std::vector<int>& keep) {
  DensityMatrix out;
  out.n_qubits = static_cast<int>(keep.size());
  out.rho = partial_trace_matrix(state.rho, state.n_qubits, keep);
  return out;
}

}  // namespace qmit

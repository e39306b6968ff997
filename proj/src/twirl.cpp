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

#include "qmit/twirl.hpp"

#include <cmath>
#include <stdexcept>

#include "qmit/gates.hpp"

namespace qmit {

namespace {

// Conjugation superoperator of a unitary: vec(U rho U^dag) = (conj(U) (x) U) vec(rho).
Matrix conj_superop(const Matrix& u) { return tensor(u.conjugate(), u); }

// Axis index of G^dag P G for P in {X, Y, Z}; -1 if not a signed Pauli.
int conjugated_axis(const Matrix& g, int axis) {
  const char* names[] = {"X", "Y", "Z"};
  const Matrix img = g.adjoint() * gate_matrix(names[axis]) * g;
  for (int a = 0; a < 3; ++a) {
    const Matrix p = gate_matrix(names[a]);
    if ((img - p).cwiseAbs().maxCoeff() < 1e-9 ||
        (img + p).cwiseAbs().maxCoeff() < 1e-9) {
      return a;
    }
  }
  return -1;
}

}  // namespace

const TwirlSet& TwirlSet::default_set() {
  static const TwirlSet kSet =
      TwirlSet::from_unitaries(Matrix::Identity(2, 2), twirl_v(), twirl_w());
  return kSet;
}

TwirlSet TwirlSet::from_unitaries(Matrix g0, Matrix g1, Matrix g2) {
  TwirlSet set;
  set.g = {std::move(g0), std::move(g1), std::move(g2)};
  for (const Matrix& g : set.g) {
    if (g.rows() != 2 || g.cols() != 2 || !is_unitary(g)) {
      throw std::invalid_argument("twirl set elements must be 2x2 unitaries");
    }
  }
  // Each element must permute the Pauli axes (up to sign), and across the
  // set the images of every axis must cover all three axes.
  for (int axis = 0; axis < 3; ++axis) {
    bool seen[3] = {false, false, false};
    for (const Matrix& g : set.g) {
      const int img = conjugated_axis(g, axis);
      if (img < 0) {
        throw std::invalid_argument(
            "twirl set element does not map the Pauli set to itself");
      }
      seen[img] = true;
    }
    if (!(seen[0] && seen[1] && seen[2])) {
      throw std::invalid_argument(
          "twirl set images of a Pauli axis do not cover all three axes");
    }
  }
  return set;
}

Channel twirl3(const Channel& lambda, const TwirlSet& set) {
  if (lambda.arity != 1) {
    throw std::invalid_argument("twirl3 expects a single-qubit channel");
  }
  const Matrix s_lambda = superoperator(lambda);
  Matrix acc = Matrix::Zero(4, 4);
  for (const Matrix& g : set.g) {
    acc += conj_superop(g.adjoint()) * s_lambda * conj_superop(g);
  }
  acc /= 3.0;
  return channel_from_superop(acc, 1, lambda.kind);
}

double eta_of_pauli(const PauliWeights& w) {
  w.validate();
  return (4.0 / 3.0) * (w.px + w.py + w.pz);
}

Matrix haar_unitary(Rng& rng) {
  Matrix z(2, 2);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const double re = rng.normal();
      const double im = rng.normal();
      z(r, c) = cdouble(re, im);
    }
  }
  // Gram-Schmidt with implicit positive-diagonal R gives the Haar measure.
  Vector q0 = z.col(0) / z.col(0).norm();
  Vector q1 = z.col(1) - q0 * (q0.adjoint() * z.col(1))(0, 0);
  q1 /= q1.norm();
  Matrix u(2, 2);
  u.col(0) = q0;
  u.col(1) = q1;
  return u;
}

Channel twirl_haar_mc(const Channel& lambda, int n_samples,
                      std::uint64_t seed) {
  if (lambda.arity != 1) {
    throw std::invalid_argument("twirl_haar_mc expects a single-qubit channel");
  }
  if (n_samples < 1) {
    throw std::invalid_argument("twirl_haar_mc needs n_samples >= 1");
  }
  Rng rng(seed);
  const Matrix s_lambda = superoperator(lambda);
  Matrix acc = Matrix::Zero(4, 4);
  for (int i = 0; i < n_samples; ++i) {
    const Matrix u = haar_unitary(rng);
    acc += conj_superop(u.adjoint()) * s_lambda * conj_superop(u);
  }
  acc /= static_cast<double>(n_samples);
  return channel_from_superop(acc, 1, lambda.kind);
}

DensityMatrix collective_twirl_apply(const DensityMatrix& state,
                                     const std::vector<Channel>& per_qubit,
                                     const TwirlSet& set) {
  if (static_cast<int>(per_qubit.size()) != state.n_qubits) {
    throw std::invalid_argument(
        "collective twirl needs one channel per qubit");
  }
  for (const Channel& ch : per_qubit) {
    if (ch.arity != 1 || ch.kind != ChannelKind::kTracePreserving) {
      throw std::invalid_argument(
          "collective twirl channels must be single-qubit trace-preserving");
    }
  }
  DensityMatrix out;
  out.n_qubits = state.n_qubits;
  out.rho = Matrix::Zero(state.rho.rows(), state.rho.cols());
  for (const Matrix& g : set.g) {
    DensityMatrix branch = state;
    const Matrix gd = g.adjoint();
    for (int q = 0; q < state.n_qubits; ++q) apply_unitary(branch, g, {q});
    for (int q = 0; q < state.n_qubits; ++q) {
      apply_channel(branch, per_qubit[static_cast<std::size_t>(q)], {q});
    }
    for (int q = 0; q < state.n_qubits; ++q) apply_unitary(branch, gd, {q});
    out.rho += branch.rho;
  }
  out.rho /= 3.0;
  return out;
}

Matrix noise_fragment_unitary(char axis, double theta) {
  if (axis != 'X' && axis != 'Y' && axis != 'Z') {
    throw std::invalid_argument("noise fragment axis must be X, Y or Z");
  }
  // System qubit 0 (MSB), ancilla qubit 1 (LSB). RY(theta) on the ancilla,
  // then controlled-axis with the ancilla as control and the system as
  // target: reorder the standard controlled form (control = MSB) by
  // swapping the roles of the two index bits.
  const Matrix ry = gate_matrix("RY", {theta});
  const Matrix u_axis = gate_matrix(std::string(1, axis));
  Matrix step1 = tensor(Matrix::Identity(2, 2), ry);
  // Controlled-U with control on the LSB: acts as U on the MSB when LSB = 1.
  Matrix cu = Matrix::Identity(4, 4);
  cu(1, 1) = u_axis(0, 0);
  cu(1, 3) = u_axis(0, 1);
  cu(3, 1) = u_axis(1, 0);
  cu(3, 3) = u_axis(1, 1);
  return cu * step1;
}

Channel induced_noise_channel(char axis, double theta) {
  const Matrix u = noise_fragment_unitary(axis, theta);
  // Induced map on the system: rho -> tr_anc[ U (rho (x) |0><0|) U^dag ].
  Matrix anc = Matrix::Zero(2, 2);
  anc(0, 0) = 1.0;
  Matrix superop(4, 4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Matrix e = Matrix::Zero(2, 2);
      e(i, j) = 1.0;
      const Matrix big = u * tensor(e, anc) * u.adjoint();
      const Matrix red = partial_trace_matrix(big, 2, {0});
      // Column-stacked vec of E_ij sits at column j*2 + i.
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
          superop(l * 2 + k, j * 2 + i) = red(k, l);
        }
      }
    }
  }
  return channel_from_superop(superop, 1);
}

}  // namespace qmit

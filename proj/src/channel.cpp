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

#include "qmit/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "qmit/gates.hpp"

namespace qmit {

namespace {

int arity_of_dim(Eigen::Index d) {
  int a = 0;
  while ((Eigen::Index{1} << a) < d) ++a;
  if ((Eigen::Index{1} << a) != d) {
    throw std::invalid_argument("Kraus dimension is not a power of two");
  }
  return a;
}

Matrix normalization_sum(const Channel& ch) {
  const Eigen::Index d = ch.kraus.front().rows();
  Matrix acc = Matrix::Zero(d, d);
  for (const Matrix& k : ch.kraus) {
    if (ch.kind == ChannelKind::kTracePreserving) {
      acc += k.adjoint() * k;   // sum K^dag K = I
    } else {
      acc += k * k.adjoint();   // unital: map(I) = sum K I K^dag = I
    }
  }
  return acc;
}

}  // namespace

Channel Channel::from_kraus(std::vector<Matrix> kraus, ChannelKind kind) {
  if (kraus.empty()) {
    throw std::invalid_argument("channel needs at least one Kraus operator");
  }
  const Eigen::Index d = kraus.front().rows();
  for (const Matrix& k : kraus) {
    if (k.rows() != d || k.cols() != d) {
      throw std::invalid_argument("Kraus operators must share one square dimension");
    }
  }
  Channel ch;
  ch.arity = arity_of_dim(d);
  ch.kind = kind;
  ch.kraus = std::move(kraus);
  const Matrix norm = normalization_sum(ch);
  if ((norm - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > tol::kKrausTp) {
    throw std::invalid_argument(
        ch.kind == ChannelKind::kTracePreserving
            ? "Kraus operators do not satisfy sum K^dag K = I"
            : "Kraus operators do not satisfy unitality");
  }
  return ch;
}

void PauliWeights::validate() const {
  for (double v : {p0, px, py, pz}) {
    if (v < -1e-12 || v > 1 + 1e-12) {
      throw std::invalid_argument("Pauli weights must lie in [0, 1]");
    }
  }
  if (std::abs(p0 + px + py + pz - 1.0) > 1e-12) {
    throw std::invalid_argument("Pauli weights must sum to 1");
  }
}

Channel identity_channel() {
  return Channel::from_kraus({Matrix::Identity(2, 2)});
}

Channel unitary_channel(const Matrix& u) {
  if (!is_unitary(u)) {
    throw std::invalid_argument("unitary_channel: matrix is not unitary");
  }
  return Channel::from_kraus({u});
}

Channel depolarizing(double eta) {
  // eta up to 4/3 keeps all Pauli weights nonnegative (eta = 4/3 is the
  // uniform Pauli mixture); twirled channels can land anywhere in [0, 4/3].
  if (eta < 0.0 || eta > 4.0 / 3.0) {
    throw std::invalid_argument("depolarizing strength must lie in [0, 4/3]");
  }
  PauliWeights w{1 - 0.75 * eta, 0.25 * eta, 0.25 * eta, 0.25 * eta};
  return pauli_channel(w);
}

Channel pauli_channel(const PauliWeights& w) {
  w.validate();
  std::vector<Matrix> kraus;
  const char* names[] = {"I", "X", "Y", "Z"};
  const double probs[] = {w.p0, w.px, w.py, w.pz};
  for (int i = 0; i < 4; ++i) {
    if (probs[i] > 0.0) {
      kraus.push_back(std::sqrt(probs[i]) * gate_matrix(names[i]));
    }
  }
  if (kraus.empty()) kraus.push_back(Matrix::Zero(2, 2));
  return Channel::from_kraus(std::move(kraus));
}

Channel pauli_channel(double px, double py, double pz) {
  return pauli_channel(PauliWeights{1.0 - px - py - pz, px, py, pz});
}

void apply_channel(DensityMatrix& state, const Channel& ch,
                   const std::vector<int>& targets) {
  if (static_cast<int>(targets.size()) != ch.arity) {
    throw std::invalid_argument("channel arity does not match target count");
  }
  if (ch.kind != ChannelKind::kTracePreserving) {
    throw std::invalid_argument(
        "only trace-preserving channels act on states");
  }
  // sum_K (K rho K^dag) via the generic embedded conjugation, one Kraus term
  // at a time.  apply_unitary cannot be reused (K need not be unitary), so
  // embed by explicit index arithmetic.
  const int n = state.n_qubits;
  for (int t : targets) {
    if (t < 0 || t >= n) {
      throw std::invalid_argument("channel target out of range");
    }
  }
  const std::uint64_t dim = state.dim();
  const int k = ch.arity;
  std::uint64_t target_mask = 0;
  std::vector<std::uint64_t> target_bit(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    target_bit[static_cast<std::size_t>(j)] = 1ULL << (n - 1 - targets[static_cast<std::size_t>(j)]);
    if (target_mask & target_bit[static_cast<std::size_t>(j)]) {
      throw std::invalid_argument("duplicate channel target");
    }
    target_mask |= target_bit[static_cast<std::size_t>(j)];
  }
  const std::uint64_t sub = 1ULL << k;
  std::vector<std::uint64_t> sub_off(sub);
  for (std::uint64_t g = 0; g < sub; ++g) {
    std::uint64_t off = 0;
    for (int j = 0; j < k; ++j) {
      if ((g >> (k - 1 - j)) & 1ULL) off |= target_bit[static_cast<std::size_t>(j)];
    }
    sub_off[g] = off;
  }
  std::vector<std::uint64_t> bases;
  for (std::uint64_t b = 0; b < dim; ++b) {
    if ((b & target_mask) == 0) bases.push_back(b);
  }

  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dim),
                            static_cast<Eigen::Index>(dim));
  Matrix term(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  std::vector<cdouble> scratch(sub);
  for (const Matrix& kop : ch.kraus) {
    term = state.rho;
    // term <- K term
    for (std::uint64_t base : bases) {
      for (std::uint64_t c = 0; c < dim; ++c) {
        for (std::uint64_t g = 0; g < sub; ++g) {
          scratch[g] = term(static_cast<Eigen::Index>(base | sub_off[g]),
                            static_cast<Eigen::Index>(c));
        }
        for (std::uint64_t g = 0; g < sub; ++g) {
          cdouble acc = 0;
          for (std::uint64_t h = 0; h < sub; ++h) {
            acc += kop(static_cast<Eigen::Index>(g),
                       static_cast<Eigen::Index>(h)) * scratch[h];
          }
          term(static_cast<Eigen::Index>(base | sub_off[g]),
               static_cast<Eigen::Index>(c)) = acc;
        }
      }
    }
    // term <- term K^dag
    for (std::uint64_t base : bases) {
      for (std::uint64_t r = 0; r < dim; ++r) {
        for (std::uint64_t g = 0; g < sub; ++g) {
          scratch[g] = term(static_cast<Eigen::Index>(r),
                            static_cast<Eigen::Index>(base | sub_off[g]));
        }
        for (std::uint64_t g = 0; g < sub; ++g) {
          cdouble acc = 0;
          for (std::uint64_t h = 0; h < sub; ++h) {
            acc += scratch[h] * std::conj(kop(static_cast<Eigen::Index>(g),
                                              static_cast<Eigen::Index>(h)));
          }
          term(static_cast<Eigen::Index>(r),
               static_cast<Eigen::Index>(base | sub_off[g])) = acc;
        }
      }
    }
    out += term;
  }
  state.rho = std::move(out);
}

Matrix superoperator(const Channel& ch) {
  const Eigen::Index d = ch.kraus.front().rows();
  Matrix s = Matrix::Zero(d * d, d * d);
  for (const Matrix& k : ch.kraus) {
    s += tensor(k.conjugate(), k);
  }
  return s;
}

Matrix channel_on_matrix(const Channel& ch, const Matrix& m) {
  const Eigen::Index d = ch.kraus.front().rows();
  if (m.rows() != d || m.cols() != d) {
    throw std::invalid_argument("operator dimension does not match channel");
  }
  Matrix out = Matrix::Zero(d, d);
  for (const Matrix& k : ch.kraus) {
    out += k * m * k.adjoint();
  }
  return out;
}

Channel adjoint_channel(const Channel& ch) {
  std::vector<Matrix> adj;
  adj.reserve(ch.kraus.size());
  for (const Matrix& k : ch.kraus) adj.push_back(k.adjoint());
  const ChannelKind kind = ch.kind == ChannelKind::kTracePreserving
                               ? ChannelKind::kUnital
                               : ChannelKind::kTracePreserving;
  return Channel::from_kraus(std::move(adj), kind);
}

Matrix choi_from_superop(const Matrix& superop, int arity) {
  const Eigen::Index d = Eigen::Index{1} << arity;
  if (superop.rows() != d * d || superop.cols() != d * d) {
    throw std::invalid_argument("superoperator dimension mismatch");
  }
  // Column-stacked vec: vec(E_ij) has a single 1 at row j*d + i, and
  // Lambda[E_ij] = unvec(S vec(E_ij)).
  Matrix choi = Matrix::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const Matrix col = superop.col(j * d + i);
      for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index l = 0; l < d; ++l) {
          // C[(i,k),(j,l)] = <k| Lambda[E_ij] |l>
          choi(i * d + k, j * d + l) = col(l * d + k, 0);
        }
      }
    }
  }
  return choi;
}

std::vector<Matrix> kraus_from_choi(const Matrix& choi, double cut,
                                    double neg_floor) {
  const Eigen::Index dd = choi.rows();
  Eigen::Index d = 0;
  while (d * d < dd) ++d;
  if (d * d != dd || choi.cols() != dd) {
    throw std::invalid_argument("Choi matrix must be d^2 x d^2");
  }
  if ((choi - choi.adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
    throw std::invalid_argument("Choi matrix is not hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(choi);
  std::vector<Matrix> kraus;
  for (Eigen::Index idx = 0; idx < dd; ++idx) {
    double lambda = es.eigenvalues()(idx);
    if (lambda < -neg_floor) {
      throw std::invalid_argument(
          "Choi matrix has a significantly negative eigenvalue (map is not "
          "completely positive)");
    }
    if (lambda < cut) continue;  // clamps [-neg_floor, cut) to nothing
    const Vector v = es.eigenvectors().col(idx);
    Matrix k(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index r = 0; r < d; ++r) {
        // Choi block index (i, r) holds <r| Lambda[E_i.] ... i.e. K(r, i).
        k(r, i) = std::sqrt(lambda) * v(i * d + r);
      }
    }
    kraus.push_back(std::move(k));
  }
  if (kraus.empty()) {
    throw std::invalid_argument("Choi matrix has no positive eigenvalues");
  }
  return kraus;
}

Channel channel_from_superop(const Matrix& superop, int arity,
                             ChannelKind kind) {
  return Channel::from_kraus(
      kraus_from_choi(choi_from_superop(superop, arity)), kind);
}

bool channels_equal(const Channel& a, const Channel& b, double tolerance) {
  if (a.arity != b.arity) return false;
  return (superoperator(a) - superoperator(b)).cwiseAbs().maxCoeff() <=
         tolerance;
}

}  // namespace qmit

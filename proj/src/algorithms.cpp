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

#include "qmit/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "qmit/gates.hpp"
#include "qmit/state.hpp"

namespace qmit {

Matrix circuit_unitary(const Circuit& circ) {
  const int n = circ.n_qubits();
  const long dim = 1L << n;
  Matrix u = Matrix::Zero(dim, dim);
  for (long col = 0; col < dim; ++col) {
    StateVector psi = StateVector::basis_state(n, static_cast<size_t>(col));
    for (const Op& op : circ.ops()) {
      if (const auto* g = std::get_if<GateOp>(&op)) {
        const Matrix m = g->matrix ? *g->matrix : gate_matrix(g->name, g->params);
        apply_unitary(psi, m, g->targets);
      } else if (std::holds_alternative<ChannelOp>(op)) {
        throw std::invalid_argument(
            "circuit_unitary requires a channel-free circuit");
      }
    }
    u.col(col) = psi.amp;
  }
  return u;
}

DeutschCase deutsch_case_from_name(const std::string& name) {
  if (name == "constant0") return DeutschCase::kConstant0;
  if (name == "constant1") return DeutschCase::kConstant1;
  if (name == "balanced_id") return DeutschCase::kBalancedId;
  if (name == "balanced_not") return DeutschCase::kBalancedNot;
  throw std::invalid_argument("unknown deutsch case: " + name);
}

Circuit build_deutsch(DeutschCase f_case) {
  Circuit circ(2);
  circ.gate("X", {1});
  circ.gate("H", {0});
  circ.gate("H", {1});
  switch (f_case) {
    case DeutschCase::kConstant0:
      break;
    case DeutschCase::kConstant1:
      circ.gate("X", {1});
      break;
    case DeutschCase::kBalancedId:
      circ.gate("CX", {0, 1});
      break;
    case DeutschCase::kBalancedNot:
      circ.gate("CX", {0, 1});
      circ.gate("X", {1});
      break;
  }
  circ.gate("H", {0});
  circ.noise_site();
  circ.measure({0});
  return circ;
}

Circuit build_bv(const std::string& secret) {
  const int n = static_cast<int>(secret.size());
  if (n < 1 || n + 1 > kMaxQubits) {
    throw std::invalid_argument("secret length must be in [1, " +
                                std::to_string(kMaxQubits - 1) + "]");
  }
  if (secret.find_first_not_of("01") != std::string::npos) {
    throw std::invalid_argument("secret must be a bitstring");
  }
  Circuit circ(n + 1);
  circ.gate("X", {n});
  for (int q = 0; q <= n; ++q) circ.gate("H", {q});
  for (int q = 0; q < n; ++q) {
    if (secret[static_cast<size_t>(q)] == '1') circ.gate("CX", {q, n});
  }
  for (int q = 0; q < n; ++q) circ.gate("H", {q});
  std::vector<int> measured(static_cast<size_t>(n));
  for (int q = 0; q < n; ++q) measured[static_cast<size_t>(q)] = q;
  circ.noise_site();
  circ.measure(std::move(measured));
  return circ;
}

int bv_oracle_value(const std::string& secret, const std::string& x) {
  if (secret.size() != x.size()) {
    throw std::invalid_argument("secret and input have different lengths");
  }
  int parity = 0;
  for (size_t i = 0; i < secret.size(); ++i) {
    if (secret[i] == '1' && x[i] == '1') parity ^= 1;
  }
  return parity;
}

Matrix qft_matrix(int m) {
  if (m < 1 || m > kMaxQubits) {
    throw std::invalid_argument("qft size must be in [1, " +
                                std::to_string(kMaxQubits) + "]");
  }
  const long dim = 1L << m;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  Matrix f(dim, dim);
  for (long y = 0; y < dim; ++y) {
    for (long x = 0; x < dim; ++x) {
      const double angle = 2.0 * kPi * static_cast<double>(x) *
                           static_cast<double>(y) / static_cast<double>(dim);
      f(y, x) = scale * cdouble(std::cos(angle), std::sin(angle));
    }
  }
  return f;
}

namespace {

// Emits the QFT (or its inverse) on qubits 0..m-1 of `circ`.
void append_qft(Circuit& circ, int m, bool inverse) {
  struct Item {
    enum Kind { kH, kPhase, kSwap } kind;
    int a, b;
    double angle;
  };
  std::vector<Item> items;
  for (int q = 0; q < m; ++q) {
    items.push_back({Item::kH, q, 0, 0.0});
    for (int t = q + 1; t < m; ++t) {
      items.push_back({Item::kPhase, t, q, kPi / static_cast<double>(1L << (t - q))});
    }
  }
  for (int q = 0; q < m / 2; ++q) {
    items.push_back({Item::kSwap, q, m - 1 - q, 0.0});
  }
  if (inverse) {
    std::reverse(items.begin(), items.end());
    for (Item& it : items) it.angle = -it.angle;
  }
  for (const Item& it : items) {
    switch (it.kind) {
      case Item::kH:
        circ.gate("H", {it.a});
        break;
      case Item::kPhase:
        circ.gate("CPHASE", {it.a, it.b}, {it.angle});
        break;
      case Item::kSwap:
        circ.gate("SWAP", {it.a, it.b});
        break;
    }
  }
}

}  // namespace

Circuit qft_circuit(int m, bool inverse) {
  if (m < 1 || m > kMaxQubits) {
    throw std::invalid_argument("qft size must be in [1, " +
                                std::to_string(kMaxQubits) + "]");
  }
  Circuit circ(m);
  append_qft(circ, m, inverse);
  return circ;
}

double qae_theta(double p) {
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("amplitude p must be in [0, 1]");
  }
  return 2.0 * std::asin(std::sqrt(p));
}

Circuit build_qae(int m, double p) {
  if (m < 1 || m + 1 > kMaxQubits) {
    throw std::invalid_argument("evaluation register size must be in [1, " +
                                std::to_string(kMaxQubits - 1) + "]");
  }
  const double theta0 = qae_theta(p);
  Circuit circ(m + 1);
  for (int q = 0; q < m; ++q) circ.gate("H", {q});
  circ.gate("RY", {m}, {theta0});
  for (int q = 0; q < m; ++q) {
    // Evaluation qubit q carries bit weight 2^(m-1-q) of z and therefore
    // controls that power of Q = Ry(2*theta0); the controlled rotation is
    // Ry(a/2) . CX . Ry(-a/2) . CX with a = 2^(m-q) * theta0.
    const double alpha = std::ldexp(theta0, m - q);
    circ.gate("RY", {m}, {alpha / 2.0});
    circ.gate("CX", {q, m});
    circ.gate("RY", {m}, {-alpha / 2.0});
    circ.gate("CX", {q, m});
  }
  append_qft(circ, m, /*inverse=*/true);
  std::vector<int> measured(static_cast<size_t>(m));
  for (int q = 0; q < m; ++q) measured[static_cast<size_t>(q)] = q;
  circ.noise_site();
  circ.measure(std::move(measured));
  return circ;
}

double qae_p_tilde(long z, int m) {
  const double s = std::sin(static_cast<double>(z) * kPi /
                            static_cast<double>(1L << m));
  return s * s;
}

EstimatorResult qae_estimate(const ProbTable& table, int m) {
  if (table.n_bits != m) {
    throw std::invalid_argument("estimator bit-length mismatch: table has " +
                                std::to_string(table.n_bits) +
                                " bits, expected " + std::to_string(m));
  }
  EstimatorResult r;
  r.m = m;
  r.table = table;
  r.peak_z = 0;
  r.peak_probability = table.probs[0];
  for (long z = 1; z < table.probs.size(); ++z) {
    if (table.probs[z] > r.peak_probability) {
      r.peak_probability = table.probs[z];
      r.peak_z = z;
    }
  }
  r.peak_p_tilde = qae_p_tilde(r.peak_z, m);
  return r;
}

EstimatorResult qae_estimate(const Histogram& hist, int m) {
  if (hist.n_bits != m) {
    throw std::invalid_argument("estimator bit-length mismatch: histogram "
                                "has " + std::to_string(hist.n_bits) +
                                " bits, expected " + std::to_string(m));
  }
  return qae_estimate(normalized(hist), m);
}

std::vector<long> qae_peak_set(int m, double p) {
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("amplitude p must be in [0, 1]");
  }
  const long dim = 1L << m;
  const double z_star = static_cast<double>(dim) *
                        std::asin(std::sqrt(p)) / kPi;
  std::set<long> peaks;
  const double lo = std::floor(z_star);
  const double hi = std::ceil(z_star);
  for (double g : {lo, hi}) {
    long z = static_cast<long>(g) % dim;
    if (z < 0) z += dim;
    peaks.insert(z);
    peaks.insert((dim - z) % dim);
  }
  return {peaks.begin(), peaks.end()};
}

double qae_peak_mass(const ProbTable& table, double p) {
  double mass = 0.0;
  for (long z : qae_peak_set(table.n_bits, p)) mass += table.probs[z];
  return mass;
}

double qae_peak_mass(const std::map<std::string, double>& weights, int m,
                     double p) {
  double mass = 0.0;
  for (long z : qae_peak_set(m, p)) {
    auto it = weights.find(bitstring_of(static_cast<size_t>(z), m));
    if (it != weights.end()) mass += it->second;
  }
  return mass;
}

}  // namespace qmit

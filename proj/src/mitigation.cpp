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

#include "qmit/mitigation.hpp"

#include <cmath>
#include <stdexcept>

namespace qmit {

namespace {

void check_eta(double eta) {
  if (!(eta >= 0.0 && eta < 1.0)) {
    throw std::invalid_argument("eta must be in [0, 1)");
  }
}

}  // namespace

double MitigationConfig::eta_for(int qubit) const {
  auto it = eta.find(qubit);
  return it == eta.end() ? eta_default : it->second;
}

void MitigationConfig::validate() const {
  check_eta(eta_default);
  for (const auto& [qubit, value] : eta) {
    if (qubit < 0) {
      throw std::invalid_argument("eta keyed by negative qubit index");
    }
    check_eta(value);
  }
}

double QuasiDistribution::sum() const {
  double total = 0.0;
  for (const auto& [bits, w] : weights) total += w;
  return total;
}

double QuasiDistribution::weight_of(const std::string& bits) const {
  auto it = weights.find(bits);
  return it == weights.end() ? 0.0 : it->second;
}

QuasiDistribution quasi_of(const ProbTable& table) {
  QuasiDistribution q;
  q.n_bits = table.n_bits;
  for (long i = 0; i < table.probs.size(); ++i) {
    if (table.probs[i] != 0.0) {
      q.weights[bitstring_of(static_cast<size_t>(i), table.n_bits)] =
          table.probs[i];
    }
  }
  return q;
}

QuasiDistribution quasi_of(const Histogram& hist) {
  return quasi_of(normalized(hist));
}

double correct_marginal(double p_obs, double eta) {
  check_eta(eta);
  return (p_obs - eta / 2.0) / (1.0 - eta);
}

QuasiDistribution correct_joint(const QuasiDistribution& in,
                                const std::vector<double>& eta_by_bit) {
  if (static_cast<int>(eta_by_bit.size()) != in.n_bits) {
    throw std::invalid_argument("eta vector length does not match bit count");
  }
  for (double eta : eta_by_bit) check_eta(eta);
  for (const auto& [bits, w] : in.weights) {
    (void)w;
    if (static_cast<int>(bits.size()) != in.n_bits) {
      throw std::invalid_argument("weight key length does not match bit "
                                  "count: " + bits);
    }
  }
  QuasiDistribution out = in;
  for (int k = 0; k < in.n_bits; ++k) {
    const double eta = eta_by_bit[static_cast<size_t>(k)];
    if (eta == 0.0) continue;  // R(0)^-1 is the identity
    const double a = (1.0 - eta / 2.0) / (1.0 - eta);
    const double b = (eta / 2.0) / (1.0 - eta);
    std::map<std::string, double> next;
    for (const auto& [bits, w] : out.weights) {
      std::string flipped = bits;
      flipped[static_cast<size_t>(k)] =
          (bits[static_cast<size_t>(k)] == '0') ? '1' : '0';
      next[bits] += a * w;
      next[flipped] -= b * w;
    }
    out.weights = std::move(next);
  }
  return out;
}

QuasiDistribution correct_joint(const QuasiDistribution& in, double eta) {
  return correct_joint(
      in, std::vector<double>(static_cast<size_t>(in.n_bits), eta));
}

ProjectionResult project_to_simplex(const QuasiDistribution& q) {
  double kept = 0.0;
  for (const auto& [bits, w] : q.weights) {
    (void)bits;
    if (w > 0.0) kept += w;
  }
  if (kept <= 0.0) {
    throw std::runtime_error("projection clipped every weight to zero");
  }
  ProjectionResult r;
  r.dist.n_bits = q.n_bits;
  for (const auto& [bits, w] : q.weights) {
    const double out = (w > 0.0) ? w / kept : 0.0;
    if (out != 0.0) r.dist.weights[bits] = out;
    r.tv_loss += std::abs(w - out);
  }
  r.tv_loss *= 0.5;
  return r;
}

EtaCalibration calibrate_eta(const CircuitRunner& runner, int n_qubits,
                             std::uint64_t shots, std::uint64_t seed) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, " +
                                std::to_string(kMaxQubits) + "]");
  }
  if (shots == 0) {
    throw std::invalid_argument("calibration needs shots > 0");
  }
  std::vector<int> all(static_cast<size_t>(n_qubits));
  for (int q = 0; q < n_qubits; ++q) all[static_cast<size_t>(q)] = q;

  Circuit zeros(n_qubits);
  zeros.noise_site();
  zeros.measure(all);
  Circuit ones(n_qubits);
  for (int q = 0; q < n_qubits; ++q) ones.gate("X", {q});
  ones.noise_site();
  ones.measure(all);

  // Per-qubit rate of reading the wrong bit, from each basis-state run.
  auto flip_rates = [&](const Histogram& h, char prepared) {
    if (h.n_bits != n_qubits || h.shots == 0) {
      throw std::runtime_error("calibration runner returned a mismatched "
                               "histogram");
    }
    std::vector<double> rates(static_cast<size_t>(n_qubits), 0.0);
    for (const auto& [bits, count] : h.counts) {
      for (int q = 0; q < n_qubits; ++q) {
        if (bits[static_cast<size_t>(q)] != prepared) {
          rates[static_cast<size_t>(q)] += static_cast<double>(count);
        }
      }
    }
    for (double& r : rates) r /= static_cast<double>(h.shots);
    return rates;
  };

  const auto eps0 = flip_rates(runner(zeros, shots, mix_seed(seed, 0)), '0');
  const auto eps1 = flip_rates(runner(ones, shots, mix_seed(seed, 1)), '1');

  EtaCalibration cal;
  for (int q = 0; q < n_qubits; ++q) {
    const double e0 = eps0[static_cast<size_t>(q)];
    const double e1 = eps1[static_cast<size_t>(q)];
    cal.eta_hat[q] = e0 + e1;
    cal.asymmetry[q] = std::abs(e0 - e1);
  }
  return cal;
}

}  // namespace qmit

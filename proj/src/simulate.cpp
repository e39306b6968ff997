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

#include "qmit/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qmit/gates.hpp"

namespace qmit {

namespace {

void check_model(const Circuit& circ, const MeasurementModel& model) {
  if (!circ.has_measurement()) {
    throw std::invalid_argument("circuit has no measurement");
  }
  if (model.mode == NoiseMode::kIdeal) {
    if (!model.noise.empty()) {
      throw std::invalid_argument("ideal measurement model carries noise");
    }
    return;
  }
  const auto& measured = circ.measured();
  for (const auto& [qubit, ch] : model.noise) {
    if (!std::binary_search(measured.begin(), measured.end(), qubit)) {
      throw std::invalid_argument("measurement noise on unmeasured qubit " +
                                  std::to_string(qubit));
    }
    if (ch.arity != 1) {
      throw std::invalid_argument("measurement noise must be single-qubit");
    }
    if (ch.kind != ChannelKind::kTracePreserving) {
      throw std::invalid_argument(
          "measurement noise must be trace preserving");
    }
  }
}

void apply_state_noise(DensityMatrix& state, const MeasurementModel& model) {
  for (const auto& [qubit, ch] : model.noise) {
    apply_channel(state, ch, {qubit});
  }
}

}  // namespace

MeasurementModel MeasurementModel::ideal() { return {}; }

MeasurementModel MeasurementModel::state_noise(std::map<int, Channel> noise) {
  return {NoiseMode::kStateNoise, std::move(noise)};
}

MeasurementModel MeasurementModel::detector_noise(
    std::map<int, Channel> noise) {
  return {NoiseMode::kDetectorNoise, std::move(noise)};
}

DensityMatrix evolve_state(const Circuit& circ, const MeasurementModel& model) {
  check_model(circ, model);
  DensityMatrix state = DensityMatrix::zero_state(circ.n_qubits());
  bool noise_done = false;
  for (const Op& op : circ.ops()) {
    if (const auto* g = std::get_if<GateOp>(&op)) {
      const Matrix u = g->matrix ? *g->matrix : gate_matrix(g->name, g->params);
      apply_unitary(state, u, g->targets);
    } else if (const auto* c = std::get_if<ChannelOp>(&op)) {
      apply_channel(state, channel_from_name(c->name, c->params), c->targets);
    } else {
      if (model.mode == NoiseMode::kStateNoise) {
        apply_state_noise(state, model);
        noise_done = true;
      }
    }
  }
  if (model.mode == NoiseMode::kStateNoise && !noise_done) {
    apply_state_noise(state, model);
  }
  return state;
}

ProbTable measurement_probs(const DensityMatrix& state,
                            const std::vector<int>& measured,
                            const MeasurementModel& model) {
  const int k = static_cast<int>(measured.size());
  const DensityMatrix reduced = partial_trace(state, measured);
  ProbTable table = ProbTable::zeros(k);

  if (model.mode != NoiseMode::kDetectorNoise) {
    for (long x = 0; x < table.probs.size(); ++x) {
      table.probs[x] = reduced.rho(x, x).real();
    }
    table.validate();
    return table;
  }

  // POVM elements per measured position: M'_b = adjoint(channel)[|b><b|],
  // or the bare projector when the qubit carries no noise.
  std::vector<std::array<Matrix, 2>> povm(k);
  for (int j = 0; j < k; ++j) {
    Matrix p0 = Matrix::Zero(2, 2);
    Matrix p1 = Matrix::Zero(2, 2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    auto it = model.noise.find(measured[j]);
    if (it == model.noise.end()) {
      povm[j] = {p0, p1};
    } else {
      const Channel adj = adjoint_channel(it->second);
      povm[j] = {channel_on_matrix(adj, p0), channel_on_matrix(adj, p1)};
    }
  }

  // Contract P[x] = sum_{b,b'} sigma(b,b') prod_j M'_{x_j}(b'_j, b_j) one
  // measured position at a time. work[((x << r) | b) << r | b'] holds the
  // partial sum after the leading (k - r) positions have been contracted.
  const long dim = 1L << k;
  std::vector<cdouble> work(static_cast<size_t>(dim) * dim);
  for (long b = 0; b < dim; ++b) {
    for (long bp = 0; bp < dim; ++bp) {
      work[static_cast<size_t>(b) * dim + bp] = reduced.rho(b, bp);
    }
  }
  for (int j = 0; j < k; ++j) {
    const int r = k - j - 1;            // bits remaining per side
    const long x_dim = 1L << (j + 1);   // outcome prefixes produced
    const long r_dim = 1L << r;
    std::vector<cdouble> next(static_cast<size_t>(x_dim) * r_dim * r_dim);
    for (long xp = 0; xp < x_dim; ++xp) {
      const long x_old = xp >> 1;
      const int xi = static_cast<int>(xp & 1);
      for (long b = 0; b < r_dim; ++b) {
        for (long bp = 0; bp < r_dim; ++bp) {
          cdouble acc = 0.0;
          for (int beta = 0; beta < 2; ++beta) {
            for (int betap = 0; betap < 2; ++betap) {
              const long old_b = (static_cast<long>(beta) << r) | b;
              const long old_bp = (static_cast<long>(betap) << r) | bp;
              const size_t old_index =
                  ((static_cast<size_t>(x_old) << (r + 1) | old_b)
                   << (r + 1)) |
                  old_bp;
              acc += povm[j][xi](betap, beta) * work[old_index];
            }
          }
          next[((static_cast<size_t>(xp) << r | b) << r) | bp] = acc;
        }
      }
    }
    work.swap(next);
  }
  for (long x = 0; x < dim; ++x) {
    const cdouble v = work[static_cast<size_t>(x)];
    if (std::abs(v.imag()) > 1e-9) {
      throw std::runtime_error("detector contraction gave a complex "
                               "probability");
    }
    table.probs[x] = v.real();
  }
  table.validate();
  return table;
}

ProbTable run_exact(const Circuit& circ, const MeasurementModel& model) {
  return measurement_probs(evolve_state(circ, model), circ.measured(), model);
}

Histogram run_sampled(const Circuit& circ, const MeasurementModel& model,
                      std::uint64_t shots, std::uint64_t seed) {
  return sample(run_exact(circ, model), shots, seed);
}

namespace {

// Appends g (or its adjoint) on `qubit`, preferring registry names so the
// branch circuits stay serializable with the default twirl set.
void append_twirl_gate(Circuit& circ, const Matrix& g, bool dagger,
                       int qubit) {
  const Matrix u = dagger ? Matrix(g.adjoint()) : g;
  if (approx_equal_up_to_phase(u, gate_matrix("I"), tol::kUnitary)) return;
  for (const char* name : {"V", "W", "VDG", "WDG", "X", "Y", "Z", "H"}) {
    if (approx_equal_up_to_phase(u, gate_matrix(name), tol::kUnitary)) {
      circ.gate(name, {qubit});
      return;
    }
  }
  circ.gate_inline(u, {qubit});
}

}  // namespace

std::array<Circuit, 3> premeasure_twirl_pass(const Circuit& circ,
                                             const TwirlSet& set) {
  if (!circ.has_measurement()) {
    throw std::invalid_argument("twirl pass needs a measured circuit");
  }
  std::array<Circuit, 3> branches = {Circuit(circ.n_qubits()),
                                     Circuit(circ.n_qubits()),
                                     Circuit(circ.n_qubits())};
  for (int b = 0; b < 3; ++b) {
    Circuit& out = branches[b];
    for (const Op& op : circ.ops()) {
      if (std::holds_alternative<NoiseSiteOp>(op)) continue;  // re-sited below
      if (const auto* g = std::get_if<GateOp>(&op)) {
        if (g->matrix) {
          out.gate_inline(*g->matrix, g->targets);
        } else {
          out.gate(g->name, g->targets, g->params);
        }
      } else {
        const auto& c = std::get<ChannelOp>(op);
        out.channel(c.name, c.targets, c.params);
      }
    }
    for (int q : circ.measured()) append_twirl_gate(out, set.g[b], false, q);
    out.noise_site();
    for (int q : circ.measured()) append_twirl_gate(out, set.g[b], true, q);
    out.measure(circ.measured());
  }
  return branches;
}

ProbTable run_twirl_exact(const Circuit& circ, const MeasurementModel& model,
                          const TwirlSet& set) {
  if (model.mode == NoiseMode::kDetectorNoise) {
    throw std::invalid_argument(
        "pre-measurement twirling requires state-side noise");
  }
  const auto branches = premeasure_twirl_pass(circ, set);
  ProbTable out = ProbTable::zeros(static_cast<int>(circ.measured().size()));
  for (const Circuit& branch : branches) {
    out.probs += run_exact(branch, model).probs;
  }
  out.probs /= 3.0;
  out.validate();
  return out;
}

Histogram run_twirl_sampled(const Circuit& circ, const MeasurementModel& model,
                            std::uint64_t shots, std::uint64_t seed,
                            const TwirlSet& set) {
  if (model.mode == NoiseMode::kDetectorNoise) {
    throw std::invalid_argument(
        "pre-measurement twirling requires state-side noise");
  }
  const auto branches = premeasure_twirl_pass(circ, set);
  std::array<ProbTable, 3> tables = {run_exact(branches[0], model),
                                     run_exact(branches[1], model),
                                     run_exact(branches[2], model)};
  Histogram h;
  h.n_bits = tables[0].n_bits;
  h.shots = shots;
  Rng rng(seed);
  const long dim = tables[0].probs.size();
  for (std::uint64_t s = 0; s < shots; ++s) {
    const ProbTable& table = tables[static_cast<size_t>(rng.uniform_int(3))];
    const double u = rng.uniform();
    double acc = 0.0;
    long pick = dim - 1;
    for (long i = 0; i < dim; ++i) {
      acc += table.probs[i];
      if (u < acc) {
        pick = i;
        break;
      }
    }
    ++h.counts[bitstring_of(static_cast<size_t>(pick), h.n_bits)];
  }
  return h;
}

}  // namespace qmit

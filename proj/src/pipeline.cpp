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

#include "qmit/pipeline.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace qmit {

Channel NoiseSpec::channel() const {
  if (weight < 0.0 || weight > 1.0) {
    throw std::invalid_argument("noise weight must be in [0, 1]");
  }
  switch (axis) {
    case 'X':
      return pauli_channel(weight, 0.0, 0.0);
    case 'Y':
      return pauli_channel(0.0, weight, 0.0);
    case 'Z':
      return pauli_channel(0.0, 0.0, weight);
    case 'D':
      return depolarizing(weight);
    default:
      throw std::invalid_argument(std::string("noise axis must be X, Y, Z "
                                              "or D, got ") + axis);
  }
}

std::map<int, Channel> noise_channels(const std::vector<NoiseSpec>& specs) {
  std::map<int, Channel> out;
  std::set<int> seen;
  for (const NoiseSpec& spec : specs) {
    if (!seen.insert(spec.qubit).second) {
      throw std::invalid_argument("duplicate noise spec for qubit " +
                                  std::to_string(spec.qubit));
    }
    out.emplace(spec.qubit, spec.channel());
  }
  return out;
}

namespace {

std::vector<double> eta_by_bit(const Circuit& circ,
                               const MitigationConfig& cfg) {
  std::vector<double> etas;
  etas.reserve(circ.measured().size());
  for (int q : circ.measured()) etas.push_back(cfg.eta_for(q));
  return etas;
}

}  // namespace

PipelineReport mitigate_pipeline(const PipelineInput& in) {
  if (!in.circuit.has_measurement()) {
    throw std::invalid_argument("pipeline circuit has no measurement");
  }
  if (in.placement == NoiseMode::kIdeal && !in.noise.empty()) {
    throw std::invalid_argument("noise specs given with ideal placement");
  }
  in.mitigation.validate();

  const MeasurementModel ideal_model = MeasurementModel::ideal();
  MeasurementModel noisy_model;
  noisy_model.mode = in.noise.empty() ? NoiseMode::kIdeal : in.placement;
  noisy_model.noise = noise_channels(in.noise);

  MeasurementModel twirled_model;  // used by the independent model only
  const bool collective =
      in.mitigation.twirl_model == TwirlModel::kCollective &&
      !in.noise.empty();
  if (!collective) {
    twirled_model.mode = noisy_model.mode;
    for (const auto& [qubit, ch] : noisy_model.noise) {
      twirled_model.noise.emplace(qubit, twirl3(ch, in.mitigation.twirl_set));
    }
  }

  PipelineReport report;
  report.ideal = run_exact(in.circuit, ideal_model);
  report.noisy = run_exact(in.circuit, noisy_model);
  report.twirled =
      collective
          ? run_twirl_exact(in.circuit, noisy_model, in.mitigation.twirl_set)
          : run_exact(in.circuit, twirled_model);

  const std::vector<double> etas = eta_by_bit(in.circuit, in.mitigation);
  QuasiDistribution corrected = correct_joint(quasi_of(report.twirled), etas);
  if (in.mitigation.policy == NegativePolicy::kClipRenormalize) {
    ProjectionResult proj = project_to_simplex(corrected);
    report.corrected = std::move(proj.dist);
    report.tv_clip_loss = proj.tv_loss;
  } else {
    report.corrected = std::move(corrected);
  }

  if (in.shots > 0) {
    report.ideal_hist =
        run_sampled(in.circuit, ideal_model, in.shots, mix_seed(in.seed, 0));
    report.noisy_hist =
        run_sampled(in.circuit, noisy_model, in.shots, mix_seed(in.seed, 1));
    report.twirled_hist =
        collective
            ? run_twirl_sampled(in.circuit, noisy_model, in.shots,
                                mix_seed(in.seed, 2), in.mitigation.twirl_set)
            : run_sampled(in.circuit, twirled_model, in.shots,
                          mix_seed(in.seed, 2));
    QuasiDistribution corrected_s =
        correct_joint(quasi_of(*report.twirled_hist), etas);
    if (in.mitigation.policy == NegativePolicy::kClipRenormalize) {
      ProjectionResult proj = project_to_simplex(corrected_s);
      report.corrected_sampled = std::move(proj.dist);
      report.tv_clip_loss_sampled = proj.tv_loss;
    } else {
      report.corrected_sampled = std::move(corrected_s);
    }
  }
  return report;
}

void check_report(const PipelineReport& report, std::uint64_t shots) {
  report.ideal.validate(1e-9);
  report.noisy.validate(1e-9);
  report.twirled.validate(1e-9);
  if (std::abs(report.corrected.sum() - 1.0) > 1e-9) {
    throw std::runtime_error("corrected weights do not sum to 1");
  }
  const Histogram* hists[] = {report.ideal_hist ? &*report.ideal_hist : nullptr,
                              report.noisy_hist ? &*report.noisy_hist : nullptr,
                              report.twirled_hist ? &*report.twirled_hist
                                                  : nullptr};
  for (const Histogram* h : hists) {
    if (h == nullptr) continue;
    std::uint64_t total = 0;
    for (const auto& [bits, count] : h->counts) {
      (void)bits;
      total += count;
    }
    if (total != h->shots || h->shots != shots) {
      throw std::runtime_error("histogram counts do not sum to shots");
    }
  }
  if (report.corrected_sampled &&
      std::abs(report.corrected_sampled->sum() - 1.0) > 1e-9) {
    throw std::runtime_error("sampled corrected weights do not sum to 1");
  }
}

}  // namespace qmit

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

#include "qmit/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vendor/CLI11.hpp"
#include "vendor/json.hpp"

#include "qmit/algorithms.hpp"
#include "qmit/pipeline.hpp"

namespace qmit {
namespace {

using njson = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Small utilities
// ---------------------------------------------------------------------------

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

int parse_int(const std::string& tok, const std::string& what) {
  try {
    size_t pos = 0;
    const int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": expected integer, got '" + tok +
                                "'");
  }
}

double parse_double(const std::string& tok, const std::string& what) {
  try {
    size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": expected number, got '" + tok +
                                "'");
  }
}

NoiseSpec parse_noise_flag(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3 || parts[1].size() != 1) {
    throw std::invalid_argument(
        "noise spec must be QUBIT:AXIS:WEIGHT (e.g. 4:X:0.3), got '" + s +
        "'");
  }
  NoiseSpec spec;
  spec.qubit = parse_int(parts[0], "noise spec qubit");
  spec.axis = static_cast<char>(
      std::toupper(static_cast<unsigned char>(parts[1][0])));
  spec.weight = parse_double(parts[2], "noise spec weight");
  return spec;
}

std::pair<int, double> parse_keyed_value(const std::string& s,
                                         const std::string& what) {
  const auto parts = split(s, ':');
  if (parts.size() != 2) {
    throw std::invalid_argument(what + " must be KEY:VALUE, got '" + s + "'");
  }
  return {parse_int(parts[0], what + " key"),
          parse_double(parts[1], what + " value")};
}

NoiseMode placement_of(const std::string& name) {
  if (name == "state") return NoiseMode::kStateNoise;
  if (name == "detector") return NoiseMode::kDetectorNoise;
  throw std::invalid_argument("placement must be 'state' or 'detector'");
}

TwirlModel twirl_model_of(const std::string& name) {
  if (name == "independent") return TwirlModel::kIndependent;
  if (name == "collective") return TwirlModel::kCollective;
  throw std::invalid_argument(
      "twirl mode must be 'independent' or 'collective'");
}

NegativePolicy policy_of(const std::string& name) {
  if (name == "quasi") return NegativePolicy::kQuasi;
  if (name == "clip_renormalize" || name == "clip") {
    return NegativePolicy::kClipRenormalize;
  }
  throw std::invalid_argument(
      "policy must be 'quasi' or 'clip_renormalize'");
}

std::string policy_name(NegativePolicy policy) {
  return policy == NegativePolicy::kQuasi ? "quasi" : "clip_renormalize";
}

double eta_preset_value(const std::string& name) {
  if (name == "ibm-low") return 0.02;
  if (name == "ibm-high") return 0.05;
  throw std::invalid_argument("unknown eta preset: " + name);
}

// ---------------------------------------------------------------------------
// Algorithm / preset plumbing
// ---------------------------------------------------------------------------

struct AlgoSpec {
  std::string algo;  // "deutsch" | "bv" | "qae"; empty with circuit_file
  std::string f_case = "balanced_id";
  std::string secret;
  int n = -1;  // optional consistency check against secret length
  int m = 7;
  double p = 0.3;
  std::string circuit_file;
};

Circuit build_from_spec(const AlgoSpec& a) {
  if (!a.circuit_file.empty()) {
    if (!a.algo.empty()) {
      throw std::invalid_argument("--circuit cannot be combined with --algo");
    }
    Circuit circ = Circuit::from_text(read_text_file(a.circuit_file));
    if (!circ.has_measurement()) {
      throw std::invalid_argument("circuit file has no MEASURE statement");
    }
    return circ;
  }
  if (a.algo == "deutsch") {
    return build_deutsch(deutsch_case_from_name(a.f_case));
  }
  if (a.algo == "bv") {
    if (a.secret.empty()) {
      throw std::invalid_argument("bv needs a secret bitstring (--s)");
    }
    if (a.n >= 0 && a.n != static_cast<int>(a.secret.size())) {
      throw std::invalid_argument("--n does not match the secret length");
    }
    return build_bv(a.secret);
  }
  if (a.algo == "qae") return build_qae(a.m, a.p);
  throw std::invalid_argument(
      "specify --algo {deutsch|bv|qae}, --circuit FILE, or --preset NAME");
}

struct PresetDef {
  AlgoSpec algo;
  std::vector<NoiseSpec> noise;
  std::map<int, double> eta;
};

PresetDef preset_of(const std::string& name) {
  PresetDef def;
  if (name == "fig3-single" || name == "fig3-double") {
    def.algo.algo = "bv";
    def.algo.secret = "10010001";
    def.noise.push_back({4, 'X', 0.3});
    def.eta[4] = 0.1;
    if (name == "fig3-double") {
      def.noise.push_back({7, 'X', 0.3});
      def.eta[7] = 0.1;
    }
  } else if (name == "fig4-single" || name == "fig4-double") {
    def.algo.algo = "qae";
    def.algo.m = 7;
    def.algo.p = 0.3;
    def.noise.push_back({0, 'Y', 0.3});
    def.eta[0] = 0.1;
    if (name == "fig4-double") {
      def.noise.push_back({1, 'Y', 0.3});
      def.eta[1] = 0.1;
    }
  } else {
    throw std::invalid_argument("unknown preset: " + name);
  }
  return def;
}

// ---------------------------------------------------------------------------
// JSON / CSV emission
// ---------------------------------------------------------------------------

constexpr double kEmitCut = 1e-12;  // drop numerical dust from JSON payloads

njson probs_json(const ProbTable& table) {
  njson j = njson::object();
  for (long i = 0; i < table.probs.size(); ++i) {
    if (std::abs(table.probs[i]) >= kEmitCut) {
      j[bitstring_of(static_cast<size_t>(i), table.n_bits)] = table.probs[i];
    }
  }
  return j;
}

njson weights_json(const QuasiDistribution& q) {
  njson j = njson::object();
  for (const auto& [bits, w] : q.weights) {
    if (std::abs(w) >= kEmitCut) j[bits] = w;
  }
  return j;
}

njson counts_json(const Histogram& hist) {
  njson j = njson::object();
  for (const auto& [bits, count] : hist.counts) j[bits] = count;
  return j;
}

njson corrected_json(const QuasiDistribution& q, NegativePolicy policy,
                     double tv_loss) {
  njson j;
  j["weights"] = weights_json(q);
  j["policy"] = policy_name(policy);
  j["tv_clip_loss"] = tv_loss;
  return j;
}

njson noise_json(const std::vector<NoiseSpec>& specs) {
  njson arr = njson::array();
  for (const NoiseSpec& spec : specs) {
    njson j;
    j["qubit"] = spec.qubit;
    j["axis"] = std::string(1, spec.axis);
    j["weight"] = spec.weight;
    arr.push_back(j);
  }
  return arr;
}

njson eta_map_json(const std::map<int, double>& eta) {
  njson j = njson::object();
  for (const auto& [qubit, value] : eta) j[std::to_string(qubit)] = value;
  return j;
}

// One CSV row block for a full table; `condition` prepends a column when
// non-empty. QAE tables use z,p_tilde,probability columns.
void csv_rows(std::ostringstream& out, const std::string& condition,
              const ProbTable& table, bool qae_style) {
  for (long i = 0; i < table.probs.size(); ++i) {
    if (!condition.empty()) out << condition << ',';
    if (qae_style) {
      out << i << ',' << fmt_double(qae_p_tilde(i, table.n_bits)) << ',';
    } else {
      out << bitstring_of(static_cast<size_t>(i), table.n_bits) << ',';
    }
    out << fmt_double(table.probs[i]) << '\n';
  }
}

ProbTable dense_of(const QuasiDistribution& q) {
  ProbTable t = ProbTable::zeros(q.n_bits);
  for (const auto& [bits, w] : q.weights) {
    t.probs[static_cast<long>(index_of_bitstring(bits))] = w;
  }
  return t;
}

std::string csv_header(bool with_condition, bool qae_style) {
  std::string h = qae_style ? "z,p_tilde,probability" : "bitstring,probability";
  return with_condition ? "condition," + h + "\n" : h + "\n";
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateOpts {
  std::string preset;
  AlgoSpec algo;
  std::vector<std::string> noise_flags;
  std::string condition = "ideal";
  std::string placement = "state";
  std::string twirl_mode = "independent";
  std::string mode = "exact";
  std::uint64_t shots = 8192;
  std::uint64_t seed = 0;
  std::string out;
  std::string csv;
};

int cmd_simulate(SimulateOpts o) {
  std::vector<NoiseSpec> noise;
  for (const std::string& flag : o.noise_flags) {
    noise.push_back(parse_noise_flag(flag));
  }
  if (!o.preset.empty()) {
    if (!o.algo.algo.empty() || !o.algo.circuit_file.empty() ||
        !noise.empty()) {
      throw std::invalid_argument(
          "--preset cannot be combined with --algo/--circuit/--noise");
    }
    PresetDef def = preset_of(o.preset);
    o.algo = def.algo;
    noise = def.noise;
  }
  const Circuit circ = build_from_spec(o.algo);
  const bool sampled = o.mode == "sampled";
  if (sampled && o.shots == 0) {
    throw std::invalid_argument("sampled mode needs --shots > 0");
  }

  MeasurementModel model = MeasurementModel::ideal();
  bool collective = false;
  MeasurementModel raw_model;  // pre-twirl model for the collective path
  if (o.condition != "ideal") {
    if (noise.empty()) {
      throw std::invalid_argument("condition '" + o.condition +
                                  "' needs a noise spec");
    }
    model.mode = placement_of(o.placement);
    model.noise = noise_channels(noise);
    if (o.condition == "twirled") {
      if (twirl_model_of(o.twirl_mode) == TwirlModel::kCollective) {
        collective = true;
        raw_model = model;
      } else {
        for (auto& [qubit, ch] : model.noise) ch = twirl3(ch);
      }
    }
  }

  ProbTable table = ProbTable::zeros(1);
  Histogram hist;
  if (collective) {
    if (sampled) {
      hist = run_twirl_sampled(circ, raw_model, o.shots, o.seed);
    } else {
      table = run_twirl_exact(circ, raw_model);
    }
  } else {
    if (sampled) {
      hist = run_sampled(circ, model, o.shots, o.seed);
    } else {
      table = run_exact(circ, model);
    }
  }

  // Self-checks before anything is written.
  ProbTable emitted = sampled ? normalized(hist) : table;
  emitted.validate(1e-9);
  if (sampled) {
    std::uint64_t total = 0;
    for (const auto& [bits, count] : hist.counts) {
      (void)bits;
      total += count;
    }
    if (total != hist.shots) {
      throw std::runtime_error("histogram counts do not sum to shots");
    }
  }

  const bool qae_style = o.algo.algo == "qae";
  njson j;
  j["command"] = "simulate";
  if (!o.preset.empty()) j["preset"] = o.preset;
  j["algorithm"] = o.algo.algo.empty() ? "circuit" : o.algo.algo;
  if (o.algo.algo == "bv") j["secret"] = o.algo.secret;
  if (o.algo.algo == "deutsch") j["case"] = o.algo.f_case;
  if (qae_style) {
    j["m"] = o.algo.m;
    j["p"] = o.algo.p;
  }
  j["condition"] = o.condition;
  if (o.condition != "ideal") {
    j["placement"] = o.placement;
    j["noise"] = noise_json(noise);
  }
  if (o.condition == "twirled") j["twirl_mode"] = o.twirl_mode;
  j["mode"] = o.mode;
  j["n_bits"] = emitted.n_bits;
  if (sampled) {
    j["shots"] = hist.shots;
    j["seed"] = o.seed;
    j["counts"] = counts_json(hist);
  } else {
    j["probs"] = probs_json(table);
  }
  if (qae_style) {
    const EstimatorResult est = qae_estimate(emitted, o.algo.m);
    njson e;
    e["z"] = est.peak_z;
    e["p_tilde"] = est.peak_p_tilde;
    e["peak_probability"] = est.peak_probability;
    j["estimate"] = e;
  }
  write_output(o.out, j.dump(2) + "\n");

  if (!o.csv.empty()) {
    std::ostringstream csv;
    csv << csv_header(false, qae_style);
    csv_rows(csv, "", emitted, qae_style);
    write_output(o.csv, csv.str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// mitigate
// ---------------------------------------------------------------------------

struct MitigateOpts {
  std::string preset;
  AlgoSpec algo;
  std::vector<std::string> noise_flags;
  std::string placement = "state";
  std::string twirl_mode = "independent";
  std::vector<std::string> eta_flags;
  double eta_default = 0.0;
  std::string eta_preset;
  std::string policy = "quasi";
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string csv;
};

int cmd_mitigate(MitigateOpts o) {
  std::vector<NoiseSpec> noise;
  for (const std::string& flag : o.noise_flags) {
    noise.push_back(parse_noise_flag(flag));
  }
  std::map<int, double> eta;
  for (const std::string& flag : o.eta_flags) {
    const auto [qubit, value] = parse_keyed_value(flag, "eta entry");
    eta[qubit] = value;
  }
  if (!o.preset.empty()) {
    if (!o.algo.algo.empty() || !o.algo.circuit_file.empty() ||
        !noise.empty()) {
      throw std::invalid_argument(
          "--preset cannot be combined with --algo/--circuit/--noise");
    }
    PresetDef def = preset_of(o.preset);
    o.algo = def.algo;
    noise = def.noise;
    // Explicit --eta entries override the preset's per-qubit values.
    for (const auto& [qubit, value] : eta) def.eta[qubit] = value;
    eta = def.eta;
  }
  if (!o.eta_preset.empty()) o.eta_default = eta_preset_value(o.eta_preset);

  PipelineInput in(build_from_spec(o.algo));
  in.noise = noise;
  in.placement = placement_of(o.placement);
  in.mitigation.eta = eta;
  in.mitigation.eta_default = o.eta_default;
  in.mitigation.policy = policy_of(o.policy);
  in.mitigation.twirl_model = twirl_model_of(o.twirl_mode);
  in.shots = o.shots;
  in.seed = o.seed;

  const PipelineReport report = mitigate_pipeline(in);
  check_report(report, in.shots);

  const bool qae_style = o.algo.algo == "qae";
  njson j;
  j["command"] = "mitigate";
  if (!o.preset.empty()) j["preset"] = o.preset;
  j["algorithm"] = o.algo.algo.empty() ? "circuit" : o.algo.algo;
  if (o.algo.algo == "bv") j["secret"] = o.algo.secret;
  if (o.algo.algo == "deutsch") j["case"] = o.algo.f_case;
  if (qae_style) {
    j["m"] = o.algo.m;
    j["p"] = o.algo.p;
  }
  j["placement"] = o.placement;
  j["twirl_model"] = o.twirl_mode;
  j["policy"] = policy_name(in.mitigation.policy);
  j["noise"] = noise_json(noise);
  j["eta"] = eta_map_json(eta);
  j["eta_default"] = o.eta_default;
  j["shots"] = o.shots;
  j["seed"] = o.seed;

  njson exact;
  exact["ideal"] = njson{{"probs", probs_json(report.ideal)}};
  exact["noisy"] = njson{{"probs", probs_json(report.noisy)}};
  exact["twirled"] = njson{{"probs", probs_json(report.twirled)}};
  exact["corrected"] = corrected_json(report.corrected, in.mitigation.policy,
                                      report.tv_clip_loss);
  j["exact"] = exact;

  if (o.shots > 0) {
    njson sampled;
    sampled["ideal"] = njson{{"counts", counts_json(*report.ideal_hist)}};
    sampled["noisy"] = njson{{"counts", counts_json(*report.noisy_hist)}};
    sampled["twirled"] = njson{{"counts", counts_json(*report.twirled_hist)}};
    sampled["corrected"] =
        corrected_json(*report.corrected_sampled, in.mitigation.policy,
                       report.tv_clip_loss_sampled);
    j["sampled"] = sampled;
  }

  // Figure-level metrics: BV/Deutsch success probability of the designed
  // outcome; QAE mass on the ideal peak set plus estimator readouts.
  auto empirical = [](const Histogram& h, const std::string& key) {
    auto it = h.counts.find(key);
    return it == h.counts.end()
               ? 0.0
               : static_cast<double>(it->second) /
                     static_cast<double>(h.shots);
  };
  if (o.algo.algo == "bv" || o.algo.algo == "deutsch") {
    std::string target;
    if (o.algo.algo == "bv") {
      target = o.algo.secret;
    } else {
      const DeutschCase c = deutsch_case_from_name(o.algo.f_case);
      target = (c == DeutschCase::kBalancedId ||
                c == DeutschCase::kBalancedNot)
                   ? "1"
                   : "0";
    }
    njson metrics;
    metrics["kind"] = o.algo.algo + "_success";
    metrics["target"] = target;
    njson ex;
    ex["ideal"] = report.ideal.prob_of(target);
    ex["noisy"] = report.noisy.prob_of(target);
    ex["twirled"] = report.twirled.prob_of(target);
    ex["corrected"] = report.corrected.weight_of(target);
    metrics["exact"] = ex;
    if (o.shots > 0) {
      njson sm;
      sm["ideal"] = empirical(*report.ideal_hist, target);
      sm["noisy"] = empirical(*report.noisy_hist, target);
      sm["twirled"] = empirical(*report.twirled_hist, target);
      sm["corrected"] = report.corrected_sampled->weight_of(target);
      metrics["sampled"] = sm;
    }
    j["metrics"] = metrics;
  } else if (qae_style) {
    njson metrics;
    metrics["kind"] = "qae_peak_mass";
    metrics["peak_set"] = qae_peak_set(o.algo.m, o.algo.p);
    njson ex;
    ex["ideal"] = qae_peak_mass(report.ideal, o.algo.p);
    ex["noisy"] = qae_peak_mass(report.noisy, o.algo.p);
    ex["twirled"] = qae_peak_mass(report.twirled, o.algo.p);
    ex["corrected"] =
        qae_peak_mass(report.corrected.weights, o.algo.m, o.algo.p);
    metrics["exact"] = ex;
    if (o.shots > 0) {
      njson sm;
      sm["ideal"] = qae_peak_mass(normalized(*report.ideal_hist), o.algo.p);
      sm["noisy"] = qae_peak_mass(normalized(*report.noisy_hist), o.algo.p);
      sm["twirled"] =
          qae_peak_mass(normalized(*report.twirled_hist), o.algo.p);
      sm["corrected"] = qae_peak_mass(report.corrected_sampled->weights,
                                      o.algo.m, o.algo.p);
      metrics["sampled"] = sm;
    }
    njson est;
    for (const auto& [name, table] :
         {std::pair<const char*, const ProbTable*>{"ideal", &report.ideal},
          {"noisy", &report.noisy},
          {"twirled", &report.twirled}}) {
      const EstimatorResult r = qae_estimate(*table, o.algo.m);
      est[name] = njson{{"z", r.peak_z}, {"p_tilde", r.peak_p_tilde}};
    }
    {
      long best_z = 0;
      double best = -std::numeric_limits<double>::infinity();
      for (const auto& [bits, w] : report.corrected.weights) {
        if (w > best) {
          best = w;
          best_z = static_cast<long>(index_of_bitstring(bits));
        }
      }
      est["corrected"] =
          njson{{"z", best_z}, {"p_tilde", qae_p_tilde(best_z, o.algo.m)}};
    }
    metrics["estimates"] = est;
    j["metrics"] = metrics;
  }

  write_output(o.out, j.dump(2) + "\n");

  if (!o.csv.empty()) {
    std::ostringstream csv;
    csv << csv_header(true, qae_style);
    csv_rows(csv, "ideal", report.ideal, qae_style);
    csv_rows(csv, "noisy", report.noisy, qae_style);
    csv_rows(csv, "twirled", report.twirled, qae_style);
    csv_rows(csv, "corrected", dense_of(report.corrected), qae_style);
    if (o.shots > 0) {
      csv_rows(csv, "ideal_sampled", normalized(*report.ideal_hist),
               qae_style);
      csv_rows(csv, "noisy_sampled", normalized(*report.noisy_hist),
               qae_style);
      csv_rows(csv, "twirled_sampled", normalized(*report.twirled_hist),
               qae_style);
      csv_rows(csv, "corrected_sampled", dense_of(*report.corrected_sampled),
               qae_style);
    }
    write_output(o.csv, csv.str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// correct-counts
// ---------------------------------------------------------------------------

struct CorrectOpts {
  std::string counts_file;
  double eta_scalar = -1.0;  // < 0: unset
  std::vector<std::string> eta_flags;
  std::string eta_preset;
  std::string policy = "quasi";
  std::string out;
};

int cmd_correct_counts(const CorrectOpts& o) {
  if (o.counts_file.empty()) {
    throw std::invalid_argument("correct-counts needs --counts FILE");
  }
  const std::string text = read_text_file(o.counts_file);
  const Histogram hist = Histogram::from_json(text);

  nlohmann::json file_json;
  try {
    file_json = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("counts JSON parse error: ") +
                                e.what());
  }
  std::map<int, double> file_eta;
  for (const auto& [key, value] : file_json.items()) {
    if (key == "shots" || key == "counts") continue;
    if (key == "eta") {
      if (!value.is_object()) {
        throw std::invalid_argument("counts file \"eta\" must be an object");
      }
      for (const auto& [qubit, v] : value.items()) {
        file_eta[parse_int(qubit, "counts file eta key")] = v.get<double>();
      }
      continue;
    }
    throw std::invalid_argument("unexpected key in counts file: " + key);
  }

  // Per-bit eta: CLI per-bit entries beat the file's map; the scalar flag or
  // preset sets the default for unlisted bits.
  double def = 0.0;
  if (!o.eta_preset.empty()) def = eta_preset_value(o.eta_preset);
  if (o.eta_scalar >= 0.0) def = o.eta_scalar;
  std::map<int, double> per_bit = file_eta;
  for (const std::string& flag : o.eta_flags) {
    const auto [bit, value] = parse_keyed_value(flag, "eta entry");
    per_bit[bit] = value;
  }
  std::vector<double> etas(static_cast<size_t>(hist.n_bits), def);
  for (const auto& [bit, value] : per_bit) {
    if (bit < 0 || bit >= hist.n_bits) {
      throw std::invalid_argument("eta keyed by out-of-range bit " +
                                  std::to_string(bit));
    }
    etas[static_cast<size_t>(bit)] = value;
  }

  const NegativePolicy policy = policy_of(o.policy);
  QuasiDistribution corrected = correct_joint(quasi_of(hist), etas);
  double tv_loss = 0.0;
  if (policy == NegativePolicy::kClipRenormalize) {
    ProjectionResult proj = project_to_simplex(corrected);
    corrected = std::move(proj.dist);
    tv_loss = proj.tv_loss;
  }
  if (std::abs(corrected.sum() - 1.0) > 1e-9) {
    throw std::runtime_error("corrected weights do not sum to 1");
  }
  write_output(o.out,
               corrected_json(corrected, policy, tv_loss).dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------------------
// calibrate
// ---------------------------------------------------------------------------

struct CalibrateOpts {
  int qubits = 0;
  std::vector<std::string> noise_flags;
  std::string placement = "state";
  std::uint64_t shots = 100000;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_calibrate(const CalibrateOpts& o) {
  std::vector<NoiseSpec> noise;
  for (const std::string& flag : o.noise_flags) {
    noise.push_back(parse_noise_flag(flag));
  }
  MeasurementModel model = MeasurementModel::ideal();
  if (!noise.empty()) {
    model.mode = placement_of(o.placement);
    model.noise = noise_channels(noise);
  }
  const CircuitRunner runner = [&model](const Circuit& circ,
                                        std::uint64_t shots,
                                        std::uint64_t seed) {
    return run_sampled(circ, model, shots, seed);
  };
  const EtaCalibration cal = calibrate_eta(runner, o.qubits, o.shots, o.seed);

  njson j;
  j["command"] = "calibrate";
  j["qubits"] = o.qubits;
  j["shots"] = o.shots;
  j["seed"] = o.seed;
  njson eta_hat = njson::object();
  njson asym = njson::object();
  for (const auto& [qubit, value] : cal.eta_hat) {
    eta_hat[std::to_string(qubit)] = value;
  }
  for (const auto& [qubit, value] : cal.asymmetry) {
    asym[std::to_string(qubit)] = value;
  }
  j["eta_hat"] = eta_hat;
  j["asymmetry"] = asym;
  write_output(o.out, j.dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------------------
// JSON config plumbing (strict: unknown keys rejected)
// ---------------------------------------------------------------------------

[[noreturn]] void config_fail(const std::string& what) {
  throw std::invalid_argument("config error: " + what);
}

void check_keys(const nlohmann::json& obj,
                std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool ok = false;
    for (const char* name : allowed) {
      if (key == name) {
        ok = true;
        break;
      }
    }
    if (!ok) config_fail("unknown key \"" + key + "\" in " + where);
  }
}

std::string jstr(const nlohmann::json& j, const char* key,
                 const std::string& def) {
  if (!j.contains(key)) return def;
  if (!j[key].is_string()) config_fail(std::string(key) + " must be a string");
  return j[key].get<std::string>();
}

double jnum(const nlohmann::json& j, const char* key, double def) {
  if (!j.contains(key)) return def;
  if (!j[key].is_number()) config_fail(std::string(key) + " must be a number");
  return j[key].get<double>();
}

std::int64_t jint(const nlohmann::json& j, const char* key,
                  std::int64_t def) {
  if (!j.contains(key)) return def;
  if (!j[key].is_number_integer()) {
    config_fail(std::string(key) + " must be an integer");
  }
  return j[key].get<std::int64_t>();
}

std::uint64_t juint(const nlohmann::json& j, const char* key,
                    std::uint64_t def) {
  const std::int64_t v = jint(j, key, static_cast<std::int64_t>(def));
  if (v < 0) config_fail(std::string(key) + " must be nonnegative");
  return static_cast<std::uint64_t>(v);
}

AlgoSpec algo_from_json(const nlohmann::json& j) {
  AlgoSpec a;
  a.algo = jstr(j, "algo", "");
  a.f_case = jstr(j, "case", a.f_case);
  a.secret = jstr(j, "secret", "");
  a.n = static_cast<int>(jint(j, "n", -1));
  a.m = static_cast<int>(jint(j, "m", a.m));
  a.p = jnum(j, "p", a.p);
  a.circuit_file = jstr(j, "circuit_file", "");
  return a;
}

std::vector<std::string> noise_flags_from_json(const nlohmann::json& j) {
  std::vector<std::string> flags;
  if (!j.contains("noise")) return flags;
  if (!j["noise"].is_array()) config_fail("noise must be an array");
  for (const auto& item : j["noise"]) {
    if (!item.is_object()) config_fail("noise entries must be objects");
    check_keys(item, {"qubit", "axis", "weight"}, "noise entry");
    const std::int64_t qubit = jint(item, "qubit", -1);
    const std::string axis = jstr(item, "axis", "");
    if (axis.size() != 1) config_fail("noise axis must be one character");
    const double weight = jnum(item, "weight", -1.0);
    flags.push_back(std::to_string(qubit) + ":" + axis + ":" +
                    fmt_double(weight));
  }
  return flags;
}

std::vector<std::string> eta_flags_from_json(const nlohmann::json& j) {
  std::vector<std::string> flags;
  if (!j.contains("eta")) return flags;
  if (!j["eta"].is_object()) config_fail("eta must be an object");
  for (const auto& [key, value] : j["eta"].items()) {
    if (!value.is_number()) config_fail("eta values must be numbers");
    flags.push_back(key + ":" + fmt_double(value.get<double>()));
  }
  return flags;
}

int run_config(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("config JSON parse error: ") +
                                e.what());
  }
  if (!j.is_object()) config_fail("config must be a JSON object");
  const std::string command = jstr(j, "command", "");
  if (command == "simulate") {
    check_keys(j,
               {"command", "preset", "algo", "case", "n", "secret", "m", "p",
                "circuit_file", "noise", "condition", "placement",
                "twirl_mode", "mode", "shots", "seed", "out", "csv"},
               "simulate config");
    SimulateOpts o;
    o.preset = jstr(j, "preset", "");
    o.algo = algo_from_json(j);
    o.noise_flags = noise_flags_from_json(j);
    o.condition = jstr(j, "condition", o.condition);
    o.placement = jstr(j, "placement", o.placement);
    o.twirl_mode = jstr(j, "twirl_mode", o.twirl_mode);
    o.mode = jstr(j, "mode", o.mode);
    o.shots = juint(j, "shots", o.shots);
    o.seed = juint(j, "seed", o.seed);
    o.out = jstr(j, "out", "");
    o.csv = jstr(j, "csv", "");
    return cmd_simulate(std::move(o));
  }
  if (command == "mitigate") {
    check_keys(j,
               {"command", "preset", "algo", "case", "n", "secret", "m", "p",
                "circuit_file", "noise", "placement", "twirl_mode", "eta",
                "eta_default", "eta_preset", "policy", "shots", "seed", "out",
                "csv"},
               "mitigate config");
    MitigateOpts o;
    o.preset = jstr(j, "preset", "");
    o.algo = algo_from_json(j);
    o.noise_flags = noise_flags_from_json(j);
    o.placement = jstr(j, "placement", o.placement);
    o.twirl_mode = jstr(j, "twirl_mode", o.twirl_mode);
    o.eta_flags = eta_flags_from_json(j);
    o.eta_default = jnum(j, "eta_default", o.eta_default);
    o.eta_preset = jstr(j, "eta_preset", "");
    o.policy = jstr(j, "policy", o.policy);
    o.shots = juint(j, "shots", o.shots);
    o.seed = juint(j, "seed", o.seed);
    o.out = jstr(j, "out", "");
    o.csv = jstr(j, "csv", "");
    return cmd_mitigate(std::move(o));
  }
  if (command == "correct-counts") {
    check_keys(j,
               {"command", "counts_file", "eta", "eta_default", "eta_preset",
                "policy", "out"},
               "correct-counts config");
    CorrectOpts o;
    o.counts_file = jstr(j, "counts_file", "");
    o.eta_flags = eta_flags_from_json(j);
    o.eta_scalar = jnum(j, "eta_default", -1.0);
    o.eta_preset = jstr(j, "eta_preset", "");
    o.policy = jstr(j, "policy", o.policy);
    o.out = jstr(j, "out", "");
    return cmd_correct_counts(o);
  }
  if (command == "calibrate") {
    check_keys(j,
               {"command", "qubits", "noise", "placement", "shots", "seed",
                "out"},
               "calibrate config");
    CalibrateOpts o;
    o.qubits = static_cast<int>(jint(j, "qubits", 0));
    o.noise_flags = noise_flags_from_json(j);
    o.placement = jstr(j, "placement", o.placement);
    o.shots = juint(j, "shots", o.shots);
    o.seed = juint(j, "seed", o.seed);
    o.out = jstr(j, "out", "");
    return cmd_calibrate(o);
  }
  config_fail("command must be one of simulate, mitigate, correct-counts, "
              "calibrate");
}

}  // namespace

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

int cli_main(int argc, const char* const* argv) {
  SimulateOpts so;
  MitigateOpts mo;
  CorrectOpts co;
  CalibrateOpts ko;
  std::string config_path;

  CLI::App app{
      "qmit: qubit-circuit density-matrix simulator with collective-twirl "
      "and response-inverse measurement-error mitigation"};
  app.require_subcommand(0, 1);
  app.add_option("--config", config_path,
                 "JSON config file driving one command (exclusive with "
                 "subcommands)");

  CLI::App* sim = app.add_subcommand(
      "simulate", "Run one circuit under one condition (exact or sampled)");
  sim->add_option("--preset", so.preset,
                  "fig3-single | fig3-double | fig4-single | fig4-double");
  sim->add_option("--algo", so.algo.algo, "deutsch | bv | qae")
      ->check(CLI::IsMember({"deutsch", "bv", "qae"}));
  sim->add_option("--case", so.algo.f_case,
                  "deutsch oracle: constant0 | constant1 | balanced_id | "
                  "balanced_not");
  sim->add_option("--n", so.algo.n, "bv register size (checked against --s)");
  sim->add_option("--s", so.algo.secret, "bv secret bitstring");
  sim->add_option("--m", so.algo.m, "qae evaluation qubits");
  sim->add_option("--p", so.algo.p, "qae amplitude in [0,1]");
  sim->add_option("--circuit", so.algo.circuit_file,
                  "circuit text file (see docs for the grammar)");
  sim->add_option("--noise", so.noise_flags,
                  "noise spec QUBIT:AXIS:WEIGHT (AXIS in X,Y,Z,D); repeatable");
  sim->add_option("--condition", so.condition, "ideal | noisy | twirled")
      ->check(CLI::IsMember({"ideal", "noisy", "twirled"}));
  sim->add_option("--placement", so.placement, "state | detector")
      ->check(CLI::IsMember({"state", "detector"}));
  sim->add_option("--twirl-mode", so.twirl_mode, "independent | collective")
      ->check(CLI::IsMember({"independent", "collective"}));
  sim->add_option("--mode", so.mode, "exact | sampled")
      ->check(CLI::IsMember({"exact", "sampled"}));
  sim->add_option("--shots", so.shots, "shots for sampled mode");
  sim->add_option("--seed", so.seed, "RNG seed");
  sim->add_option("--out", so.out, "output JSON path (stdout if omitted)");
  sim->add_option("--csv", so.csv, "also write a CSV table here");

  CLI::App* mit = app.add_subcommand(
      "mitigate",
      "Four-condition report: ideal / noisy / twirled / corrected");
  mit->add_option("--preset", mo.preset,
                  "fig3-single | fig3-double | fig4-single | fig4-double");
  mit->add_option("--algo", mo.algo.algo, "deutsch | bv | qae")
      ->check(CLI::IsMember({"deutsch", "bv", "qae"}));
  mit->add_option("--case", mo.algo.f_case, "deutsch oracle case");
  mit->add_option("--n", mo.algo.n, "bv register size (checked against --s)");
  mit->add_option("--s", mo.algo.secret, "bv secret bitstring");
  mit->add_option("--m", mo.algo.m, "qae evaluation qubits");
  mit->add_option("--p", mo.algo.p, "qae amplitude in [0,1]");
  mit->add_option("--circuit", mo.algo.circuit_file, "circuit text file");
  mit->add_option("--noise", mo.noise_flags,
                  "noise spec QUBIT:AXIS:WEIGHT; repeatable");
  mit->add_option("--placement", mo.placement, "state | detector")
      ->check(CLI::IsMember({"state", "detector"}));
  mit->add_option("--twirl-mode", mo.twirl_mode, "independent | collective")
      ->check(CLI::IsMember({"independent", "collective"}));
  mit->add_option("--eta", mo.eta_flags,
                  "correction strength QUBIT:ETA; repeatable");
  mit->add_option("--eta-default", mo.eta_default,
                  "correction strength for unlisted qubits");
  mit->add_option("--eta-preset", mo.eta_preset, "ibm-low | ibm-high");
  mit->add_option("--policy", mo.policy, "quasi | clip_renormalize")
      ->check(CLI::IsMember({"quasi", "clip", "clip_renormalize"}));
  mit->add_option("--shots", mo.shots, "also emit sampled results (0: exact "
                                       "only)");
  mit->add_option("--seed", mo.seed, "RNG seed");
  mit->add_option("--out", mo.out, "output JSON path (stdout if omitted)");
  mit->add_option("--csv", mo.csv, "also write a CSV table here");

  CLI::App* cor = app.add_subcommand(
      "correct-counts", "Apply the response-inverse correction to a counts "
                        "JSON file");
  cor->add_option("--counts", co.counts_file, "counts JSON file")->required();
  cor->add_option("--eta", co.eta_scalar, "scalar eta for every bit");
  cor->add_option("--eta-bit", co.eta_flags,
                  "per-bit eta BIT:ETA; repeatable");
  cor->add_option("--eta-preset", co.eta_preset, "ibm-low | ibm-high");
  cor->add_option("--policy", co.policy, "quasi | clip_renormalize")
      ->check(CLI::IsMember({"quasi", "clip", "clip_renormalize"}));
  cor->add_option("--out", co.out, "output JSON path (stdout if omitted)");

  CLI::App* cal = app.add_subcommand(
      "calibrate", "Estimate per-qubit readout eta from two basis-state "
                   "runs against the built-in simulator");
  cal->add_option("--qubits", ko.qubits, "register size")->required();
  cal->add_option("--noise", ko.noise_flags,
                  "noise spec QUBIT:AXIS:WEIGHT; repeatable");
  cal->add_option("--placement", ko.placement, "state | detector")
      ->check(CLI::IsMember({"state", "detector"}));
  cal->add_option("--shots", ko.shots, "shots per basis-state run");
  cal->add_option("--seed", ko.seed, "RNG seed");
  cal->add_option("--out", ko.out, "output JSON path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the error message
    return code == 0 ? 0 : 1;
  }

  try {
    if (!config_path.empty()) {
      if (!app.get_subcommands().empty()) {
        throw std::invalid_argument(
            "--config cannot be combined with a subcommand");
      }
      return run_config(config_path);
    }
    if (sim->parsed()) return cmd_simulate(std::move(so));
    if (mit->parsed()) return cmd_mitigate(std::move(mo));
    if (cor->parsed()) return cmd_correct_counts(co);
    if (cal->parsed()) return cmd_calibrate(ko);
    std::cerr << app.help();
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace qmit

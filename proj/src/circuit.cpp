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

#include "qmit/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qmit/gates.hpp"

namespace qmit {

namespace {

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return s;
}

void check_param_count(const std::string& name, size_t got, size_t want) {
  if (got != want) {
    throw std::invalid_argument("channel " + name + " expects " +
                                std::to_string(want) + " parameter(s), got " +
                                std::to_string(got));
  }
}

}  // namespace

Channel channel_from_name(const std::string& name,
                          const std::vector<double>& params) {
  const std::string n = upper(name);
  if (n == "DEPOLARIZING") {
    check_param_count(n, params.size(), 1);
    return depolarizing(params[0]);
  }
  if (n == "PAULI") {
    check_param_count(n, params.size(), 3);
    return pauli_channel(params[0], params[1], params[2]);
  }
  if (n == "XFLIP" || n == "YFLIP" || n == "ZFLIP") {
    check_param_count(n, params.size(), 1);
    const double p = params[0];
    if (p < 0.0 || p > 1.0) {
      throw std::invalid_argument("flip probability must be in [0, 1]");
    }
    if (n == "XFLIP") return pauli_channel(p, 0.0, 0.0);
    if (n == "YFLIP") return pauli_channel(0.0, p, 0.0);
    return pauli_channel(0.0, 0.0, p);
  }
  throw std::invalid_argument("unknown channel name: " + name);
}

Circuit::Circuit(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, " +
                                std::to_string(kMaxQubits) + "]");
  }
}

bool Circuit::has_noise_site() const {
  return std::any_of(ops_.begin(), ops_.end(), [](const Op& op) {
    return std::holds_alternative<NoiseSiteOp>(op);
  });
}

void Circuit::check_no_measurement() const {
  if (has_measurement()) {
    throw std::invalid_argument("cannot append ops after measurement");
  }
}

void Circuit::check_targets(const std::vector<int>& targets) const {
  if (targets.empty()) {
    throw std::invalid_argument("op needs at least one target");
  }
  std::set<int> seen;
  for (int t : targets) {
    if (t < 0 || t >= n_qubits_) {
      throw std::invalid_argument("target qubit " + std::to_string(t) +
                                  " out of range");
    }
    if (!seen.insert(t).second) {
      throw std::invalid_argument("duplicate target qubit " +
                                  std::to_string(t));
    }
  }
}

Circuit& Circuit::gate(const std::string& name, std::vector<int> targets,
                       std::vector<double> params) {
  check_no_measurement();
  check_targets(targets);
  const std::string n = upper(name);
  const auto& reg = gate_registry();
  auto it = reg.find(n);
  if (it == reg.end()) {
    throw std::invalid_argument("unknown gate name: " + name);
  }
  if (static_cast<int>(targets.size()) != it->second.arity) {
    throw std::invalid_argument("gate " + n + " expects " +
                                std::to_string(it->second.arity) +
                                " target(s)");
  }
  if (static_cast<int>(params.size()) != it->second.n_params) {
    throw std::invalid_argument("gate " + n + " expects " +
                                std::to_string(it->second.n_params) +
                                " parameter(s)");
  }
  ops_.push_back(GateOp{n, std::move(targets), std::move(params), {}});
  return *this;
}

Circuit& Circuit::gate_inline(Matrix u, std::vector<int> targets) {
  check_no_measurement();
  check_targets(targets);
  const long want = 1L << targets.size();
  if (u.rows() != want || u.cols() != want) {
    throw std::invalid_argument("inline gate matrix size does not match "
                                "target count");
  }
  if (!is_unitary(u)) {
    throw std::invalid_argument("inline gate matrix is not unitary");
  }
  ops_.push_back(GateOp{"", std::move(targets), {}, std::move(u)});
  return *this;
}

Circuit& Circuit::channel(const std::string& name, std::vector<int> targets,
                          std::vector<double> params) {
  check_no_measurement();
  check_targets(targets);
  Channel ch = channel_from_name(name, params);  // validates name and params
  if (static_cast<int>(targets.size()) != ch.arity) {
    throw std::invalid_argument("channel " + name + " expects " +
                                std::to_string(ch.arity) + " target(s)");
  }
  ops_.push_back(ChannelOp{upper(name), std::move(targets), std::move(params)});
  return *this;
}

Circuit& Circuit::noise_site() {
  check_no_measurement();
  if (has_noise_site()) {
    throw std::invalid_argument("circuit already has a noise site");
  }
  ops_.push_back(NoiseSiteOp{});
  return *this;
}

Circuit& Circuit::measure(std::vector<int> targets) {
  check_no_measurement();
  check_targets(targets);
  if (!std::is_sorted(targets.begin(), targets.end())) {
    throw std::invalid_argument("measured qubits must be strictly increasing");
  }
  measured_ = std::move(targets);
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  check_no_measurement();
  if (other.n_qubits_ != n_qubits_) {
    throw std::invalid_argument("appended circuit has different qubit count");
  }
  if (other.has_measurement()) {
    throw std::invalid_argument("cannot append a measured circuit");
  }
  if (has_noise_site() && other.has_noise_site()) {
    throw std::invalid_argument("appending would duplicate the noise site");
  }
  for (const Op& op : other.ops_) ops_.push_back(op);
  return *this;
}

std::string Circuit::to_text() const {
  std::ostringstream out;
  out << "QUBITS " << n_qubits_ << "\n";
  for (const Op& op : ops_) {
    if (const auto* g = std::get_if<GateOp>(&op)) {
      if (g->name.empty()) {
        throw std::invalid_argument(
            "inline-matrix gates cannot be serialized");
      }
      out << "GATE " << g->name;
      for (int t : g->targets) out << ' ' << t;
      out.precision(17);
      for (double p : g->params) out << ' ' << p;
      out << "\n";
    } else if (const auto* c = std::get_if<ChannelOp>(&op)) {
      out << "CHANNEL " << c->name;
      for (int t : c->targets) out << ' ' << t;
      out.precision(17);
      for (double p : c->params) out << ' ' << p;
      out << "\n";
    } else {
      out << "NOISESITE\n";
    }
  }
  if (has_measurement()) {
    out << "MEASURE";
    for (int t : measured_) out << ' ' << t;
    out << "\n";
  }
  return out.str();
}

namespace {

struct ParsedLine {
  std::string keyword;
  std::vector<std::string> args;
};

[[noreturn]] void parse_fail(int line_no, const std::string& what) {
  throw std::invalid_argument("circuit parse error at line " +
                              std::to_string(line_no) + ": " + what);
}

int parse_int(const std::string& tok, int line_no) {
  try {
    size_t pos = 0;
    const int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    parse_fail(line_no, "expected integer, got '" + tok + "'");
  }
}

double parse_double(const std::string& tok, int line_no) {
  try {
    size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    parse_fail(line_no, "expected number, got '" + tok + "'");
  }
}

bool looks_like_int(const std::string& tok) {
  if (tok.empty()) return false;
  size_t i = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
  if (i == tok.size()) return false;
  for (; i < tok.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(tok[i]))) return false;
  }
  return true;
}

}  // namespace

Circuit Circuit::from_text(const std::string& text) {
  struct Stmt {
    int line_no;
    ParsedLine parsed;
  };
  std::vector<Stmt> stmts;
  {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const size_t hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      ParsedLine pl;
      if (!(ls >> pl.keyword)) continue;  // blank line
      std::string tok;
      while (ls >> tok) pl.args.push_back(tok);
      pl.keyword = upper(pl.keyword);
      stmts.push_back({line_no, std::move(pl)});
    }
  }
  if (stmts.empty()) {
    throw std::invalid_argument("circuit parse error: empty program");
  }

  // Infer the qubit count when no QUBITS header is present.
  int n_qubits = -1;
  size_t first = 0;
  if (stmts[0].parsed.keyword == "QUBITS") {
    if (stmts[0].parsed.args.size() != 1) {
      parse_fail(stmts[0].line_no, "QUBITS expects one argument");
    }
    n_qubits = parse_int(stmts[0].parsed.args[0], stmts[0].line_no);
    first = 1;
  } else {
    int max_target = -1;
    for (const Stmt& s : stmts) {
      const auto& kw = s.parsed.keyword;
      if (kw != "GATE" && kw != "CHANNEL" && kw != "MEASURE") continue;
      const size_t skip = (kw == "MEASURE") ? 0 : 1;
      for (size_t i = skip; i < s.parsed.args.size(); ++i) {
        const std::string& tok = s.parsed.args[i];
        if (!looks_like_int(tok)) break;  // params follow targets
        max_target = std::max(max_target, parse_int(tok, s.line_no));
      }
    }
    if (max_target < 0) {
      throw std::invalid_argument(
          "circuit parse error: cannot infer qubit count");
    }
    n_qubits = max_target + 1;
  }

  Circuit circ(n_qubits);
  const auto& reg = gate_registry();
  for (size_t i = first; i < stmts.size(); ++i) {
    const int line_no = stmts[i].line_no;
    const ParsedLine& pl = stmts[i].parsed;
    try {
      if (pl.keyword == "QUBITS") {
        parse_fail(line_no, "QUBITS only allowed as the first statement");
      } else if (pl.keyword == "GATE") {
        if (pl.args.empty()) parse_fail(line_no, "GATE expects a name");
        const std::string name = upper(pl.args[0]);
        auto it = reg.find(name);
        if (it == reg.end()) parse_fail(line_no, "unknown gate: " + pl.args[0]);
        const size_t n_targets = static_cast<size_t>(it->second.arity);
        const size_t n_params = static_cast<size_t>(it->second.n_params);
        if (pl.args.size() != 1 + n_targets + n_params) {
          parse_fail(line_no, "gate " + name + " expects " +
                                  std::to_string(n_targets) + " target(s) and " +
                                  std::to_string(n_params) + " parameter(s)");
        }
        std::vector<int> targets;
        for (size_t k = 0; k < n_targets; ++k) {
          targets.push_back(parse_int(pl.args[1 + k], line_no));
        }
        std::vector<double> params;
        for (size_t k = 0; k < n_params; ++k) {
          params.push_back(parse_double(pl.args[1 + n_targets + k], line_no));
        }
        circ.gate(name, std::move(targets), std::move(params));
      } else if (pl.keyword == "CHANNEL") {
        if (pl.args.size() < 2) {
          parse_fail(line_no, "CHANNEL expects a name and a target");
        }
        const std::string name = upper(pl.args[0]);
        // Single-qubit channels: one target, the rest are params.
        std::vector<int> targets = {parse_int(pl.args[1], line_no)};
        std::vector<double> params;
        for (size_t k = 2; k < pl.args.size(); ++k) {
          params.push_back(parse_double(pl.args[k], line_no));
        }
        circ.channel(name, std::move(targets), std::move(params));
      } else if (pl.keyword == "NOISESITE") {
        if (!pl.args.empty()) parse_fail(line_no, "NOISESITE takes no arguments");
        circ.noise_site();
      } else if (pl.keyword == "MEASURE") {
        if (pl.args.empty()) parse_fail(line_no, "MEASURE expects targets");
        std::vector<int> targets;
        for (const std::string& tok : pl.args) {
          targets.push_back(parse_int(tok, line_no));
        }
        circ.measure(std::move(targets));
        if (i + 1 != stmts.size()) {
          parse_fail(stmts[i + 1].line_no, "statements after MEASURE");
        }
      } else {
        parse_fail(line_no, "unknown keyword: " + pl.keyword);
      }
    } catch (const std::invalid_argument& e) {
      const std::string msg = e.what();
      if (msg.rfind("circuit parse error", 0) == 0) throw;
      parse_fail(line_no, msg);
    }
  }
  return circ;
}

}  // namespace qmit

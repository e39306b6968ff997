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

#include "qmit/gates.hpp"

#include <cmath>
#include <stdexcept>

namespace qmit {

namespace {

Matrix mat2(cdouble a, cdouble b, cdouble c, cdouble d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

Matrix pauli_x() { return mat2(0, 1, 1, 0); }
Matrix pauli_y() { return mat2(0, cdouble(0, -1), cdouble(0, 1), 0); }
Matrix pauli_z() { return mat2(1, 0, 0, -1); }

Matrix ry(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return mat2(c, -s, s, c);
}

Matrix phase(double lambda) { return mat2(1, 0, 0, std::polar(1.0, lambda)); }

Matrix u3(double theta, double phi, double lambda) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Matrix m(2, 2);
  m << c, -std::polar(1.0, lambda) * s,
       std::polar(1.0, phi) * s, std::polar(1.0, lambda + phi) * c;
  return m;
}

Matrix u2(double phi, double lambda) { return u3(kPi / 2, phi, lambda); }

Matrix swap_gate() {
  Matrix m = Matrix::Identity(4, 4);
  m(1, 1) = m(2, 2) = 0;
  m(1, 2) = m(2, 1) = 1;
  return m;
}

}  // namespace

Matrix twirl_v() {
  Matrix m(2, 2);
  m << cdouble(1, -1), cdouble(-1, -1),
       cdouble(1, -1), cdouble(1, 1);
  return 0.5 * m;
}

Matrix twirl_w() {
  Matrix m(2, 2);
  m << cdouble(-1, -1), cdouble(-1, -1),
       cdouble(1, -1), cdouble(-1, 1);
  return 0.5 * m;
}

const std::map<std::string, GateInfo>& gate_registry() {
  static const std::map<std::string, GateInfo> kRegistry = {
      {"I", {1, 0}},    {"X", {1, 0}},     {"Y", {1, 0}},   {"Z", {1, 0}},
      {"H", {1, 0}},    {"V", {1, 0}},     {"W", {1, 0}},   {"VDG", {1, 0}},
      {"WDG", {1, 0}},  {"RY", {1, 1}},    {"PHASE", {1, 1}},
      {"U2", {1, 2}},   {"U3", {1, 3}},    {"CX", {2, 0}},  {"CNOT", {2, 0}},
      {"CY", {2, 0}},   {"CZ", {2, 0}},    {"CPHASE", {2, 1}},
      {"SWAP", {2, 0}},
  };
  return kRegistry;
}

Matrix gate_matrix(const std::string& name, const std::vector<double>& params) {
  const auto it = gate_registry().find(name);
  if (it == gate_registry().end()) {
    throw std::invalid_argument("unknown gate name: '" + name + "'");
  }
  if (static_cast<int>(params.size()) != it->second.n_params) {
    throw std::invalid_argument("gate " + name + " expects " +
                                std::to_string(it->second.n_params) +
                                " parameter(s), got " +
                                std::to_string(params.size()));
  }
  if (name == "I") return Matrix::Identity(2, 2);
  if (name == "X") return pauli_x();
  if (name == "Y") return pauli_y();
  if (name == "Z") return pauli_z();
  if (name == "H") {
    const double r = 1.0 / std::sqrt(2.0);
    return mat2(r, r, r, -r);
  }
  if (name == "V") return twirl_v();
  if (name == "W") return twirl_w();
  if (name == "VDG") return twirl_v().adjoint();
  if (name == "WDG") return twirl_w().adjoint();
  if (name == "RY") return ry(params[0]);
  if (name == "PHASE") return phase(params[0]);
  if (name == "U2") return u2(params[0], params[1]);
  if (name == "U3") return u3(params[0], params[1], params[2]);
  if (name == "CX" || name == "CNOT") return controlled(pauli_x());
  if (name == "CY") return controlled(pauli_y());
  if (name == "CZ") return controlled(pauli_z());
  if (name == "CPHASE") return controlled(phase(params[0]));
  if (name == "SWAP") return swap_gate();
  throw std::logic_error("gate registry out of sync: " + name);
}

Matrix controlled(const Matrix& u) {
  if (u.rows() != 2 || u.cols() != 2) {
    throw std::invalid_argument("controlled() expects a 2x2 matrix");
  }
  Matrix m = Matrix::Identity(4, 4);
  m.block(2, 2, 2, 2) = u;
  return m;
}

bool is_unitary(const Matrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  const Matrix d = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
  return d.cwiseAbs().maxCoeff() <= tolerance;
}

bool approx_equal(const Matrix& a, const Matrix& b, double tolerance) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).cwiseAbs().maxCoeff() <= tolerance;
}

bool approx_equal_up_to_phase(const Matrix& a, const Matrix& b,
                              double tolerance) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  Eigen::Index r = 0, c = 0;
  a.cwiseAbs().maxCoeff(&r, &c);
  if (std::abs(a(r, c)) < tolerance || std::abs(b(r, c)) < tolerance) {
    return approx_equal(a, b, tolerance);
  }
  const cdouble ph = (b(r, c) / std::abs(b(r, c))) /
                     (a(r, c) / std::abs(a(r, c)));
  return approx_equal(a * ph, b, tolerance);
}

std::uint64_t index_of_bitstring(const std::string& s) {
  if (s.empty() || s.size() > 63) {
    throw std::invalid_argument("bitstring length must be in [1, 63]");
  }
  std::uint64_t v = 0;
  for (char ch : s) {
    if (ch != '0' && ch != '1') {
      throw std::invalid_argument("bitstring may contain only '0'/'1': '" + s +
                                  "'");
    }
    v = (v << 1) | static_cast<std::uint64_t>(ch - '0');
  }
  return v;
}

}  // namespace qmit

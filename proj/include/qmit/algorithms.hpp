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

#pragma once

#include <string>
#include <vector>

#include "qmit/circuit.hpp"
#include "qmit/histogram.hpp"

namespace qmit {

// Full unitary of a gate-only circuit (channels rejected; the noise-site
// marker and measurement are ignored). Test/diagnostic helper.
Matrix circuit_unitary(const Circuit& circ);

// Deutsch problem oracle cases: f constant (0 or 1) or balanced (identity
// or negation). The circuit measures one bit; ideal outcome f(0) xor f(1).
enum class DeutschCase { kConstant0, kConstant1, kBalancedId, kBalancedNot };

DeutschCase deutsch_case_from_name(const std::string& name);
Circuit build_deutsch(DeutschCase f_case);

// Bernstein-Vazirani: n = secret.size() system qubits plus one ancilla
// (qubit n, prepared in |1>); the parity oracle is one CX per set secret
// bit. Measures the system register; ideal output is the secret itself.
Circuit build_bv(const std::string& secret);

// Classical parity oracle sum_i s_i x_i mod 2.
int bv_oracle_value(const std::string& secret, const std::string& x);

// Fourier matrix F(y, x) = exp(2*pi*i*x*y / 2^m) / sqrt(2^m), indices in
// the global bit convention (qubit 0 = most significant bit).
Matrix qft_matrix(int m);

// H + controlled-phase + final-swap decomposition of qft_matrix (inverse:
// reversed ops with conjugated phases). No measurement.
Circuit qft_circuit(int m, bool inverse = false);

// Amplitude-estimation instance: m evaluation qubits (0..m-1, measured) and
// one state qubit (index m). theta0 = 2*asin(sqrt(p)); the state prep is
// Ry(theta0) and evaluation qubit q controls Ry(2*theta0)^(2^(m-1-q)),
// realized by the two-rotation two-CX controlled-Ry decomposition; an
// inverse Fourier transform on the evaluation register precedes
// measurement. The measured integer z estimates p via sin^2(z*pi/2^m).
Circuit build_qae(int m, double p);

double qae_theta(double p);            // 2*asin(sqrt(p))
double qae_p_tilde(long z, int m);     // sin^2(z*pi/2^m)

// Estimator readout: per-z probabilities, the top-probability z (smallest
// such z on ties) and its estimate.
struct EstimatorResult {
  int m = 0;
  ProbTable table;        // index = z
  long peak_z = 0;
  double peak_probability = 0.0;
  double peak_p_tilde = 0.0;
};

EstimatorResult qae_estimate(const ProbTable& table, int m);
EstimatorResult qae_estimate(const Histogram& hist, int m);

// Grid values straddling z* = 2^m asin(sqrt(p))/pi together with their
// mod-2^m mirrors (the two eigenphase branches), deduplicated and sorted.
// The exact ideal distribution concentrates at least 8/pi^2 of its mass
// on this set.
std::vector<long> qae_peak_set(int m, double p);

// Total probability the table assigns to qae_peak_set(table.n_bits, p).
// Accepts quasi-weights as well via the map overload.
double qae_peak_mass(const ProbTable& table, double p);
double qae_peak_mass(const std::map<std::string, double>& weights, int m,
                     double p);

}  // namespace qmit

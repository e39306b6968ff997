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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "vendor/doctest.h"

#include <cmath>
#include <vector>

#include "qmit/channel.hpp"
#include "qmit/gates.hpp"
#include "qmit/rng.hpp"
#include "qmit/state.hpp"
#include "qmit/twirl.hpp"

namespace qmit {
namespace {

double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Independent oracle: the superoperator of (1/3) sum_G G^dag Lambda[G . G^dag] G
// computed by acting on each matrix unit with plain matrix algebra (no
// conjugation-superoperator shortcut).
Matrix brute_twirl_superop(const Channel& lambda, const TwirlSet& set) {
  Matrix s(4, 4);
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < 2; ++i) {
      Matrix e = Matrix::Zero(2, 2);
      e(i, j) = 1.0;
      Matrix out = Matrix::Zero(2, 2);
      for (const Matrix& g : set.g) {
        out += g.adjoint() *
               channel_on_matrix(lambda, Matrix(g * e * g.adjoint())) * g;
      }
      out /= 3.0;
      // Column-stacked vec: vec(E_ij) is column j*2 + i.
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
          s(l * 2 + k, j * 2 + i) = out(k, l);
        }
      }
    }
  }
  return s;
}

// Random mixture of three Haar conjugations: always a valid TP channel.
Channel random_channel(Rng& rng) {
  const double w0 = rng.uniform() + 0.05;
  const double w1 = rng.uniform() + 0.05;
  const double w2 = rng.uniform() + 0.05;
  const double tot = w0 + w1 + w2;
  std::vector<Matrix> kraus;
  kraus.push_back(std::sqrt(w0 / tot) * haar_unitary(rng));
  kraus.push_back(std::sqrt(w1 / tot) * haar_unitary(rng));
  kraus.push_back(std::sqrt(w2 / tot) * haar_unitary(rng));
  return Channel::from_kraus(std::move(kraus));
}

Channel amplitude_damping(double gamma) {
  Matrix k0 = Matrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - gamma);
  Matrix k1 = Matrix::Zero(2, 2);
  k1(0, 1) = std::sqrt(gamma);
  return Channel::from_kraus({k0, k1});
}

DensityMatrix random_single_qubit_state(Rng& rng) {
  StateVector psi = StateVector::zero_state(1);
  apply_unitary(psi, haar_unitary(rng), {0});
  DensityMatrix rho = psi.to_density();
  // Mix two pure states for a full-rank case.
  StateVector phi = StateVector::zero_state(1);
  apply_unitary(phi, haar_unitary(rng), {0});
  const double w = 0.3 + 0.4 * rng.uniform();
  rho.rho = w * rho.rho + (1.0 - w) * phi.to_density().rho;
  return rho;
}

TEST_CASE("from_kraus validates normalization per kind") {
  CHECK_NOTHROW((void)identity_channel());
  CHECK_NOTHROW((void)unitary_channel(gate_matrix("H")));
  CHECK_NOTHROW((void)depolarizing(0.0));
  CHECK_NOTHROW((void)depolarizing(1.0));
  CHECK_NOTHROW((void)depolarizing(4.0 / 3.0));  // uniform Pauli mixture
  CHECK_THROWS_AS((void)depolarizing(-0.1), std::invalid_argument);
  CHECK_THROWS_AS((void)depolarizing(1.34), std::invalid_argument);

  // Scaled identity is not trace preserving.
  CHECK_THROWS_AS(
      (void)Channel::from_kraus({Matrix(0.5 * Matrix::Identity(2, 2))}),
      std::invalid_argument);
  // The adjoint of amplitude damping is unital but not TP: accepted only
  // with the unital kind.
  const Channel ad = amplitude_damping(0.35);
  std::vector<Matrix> adj;
  for (const Matrix& k : ad.kraus) adj.push_back(k.adjoint());
  CHECK_THROWS_AS((void)Channel::from_kraus(adj), std::invalid_argument);
  CHECK_NOTHROW((void)Channel::from_kraus(adj, ChannelKind::kUnital));

  CHECK_THROWS_AS((void)pauli_channel(0.7, 0.4, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)pauli_channel(-0.1, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("depolarizing action: rho -> (1-eta) rho + eta I/2") {
  Rng rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    const double eta = rng.uniform();
    const DensityMatrix rho = random_single_qubit_state(rng);
    DensityMatrix got = rho;
    apply_channel(got, depolarizing(eta), {0});
    const Matrix want =
        (1.0 - eta) * rho.rho + eta * 0.5 * Matrix::Identity(2, 2);
    CHECK(max_abs_diff(got.rho, want) < 1e-12);
  }
}

TEST_CASE("pauli_channel action matches its formula") {
  Rng rng(12);
  const Matrix x = gate_matrix("X"), y = gate_matrix("Y"), z = gate_matrix("Z");
  for (int rep = 0; rep < 10; ++rep) {
    double px = 0.4 * rng.uniform(), py = 0.3 * rng.uniform(),
           pz = 0.2 * rng.uniform();
    const double p0 = 1.0 - px - py - pz;
    const DensityMatrix rho = random_single_qubit_state(rng);
    DensityMatrix got = rho;
    apply_channel(got, pauli_channel(px, py, pz), {0});
    const Matrix want = p0 * rho.rho + px * x * rho.rho * x +
                        py * y * rho.rho * y + pz * z * rho.rho * z;
    CHECK(max_abs_diff(got.rho, want) < 1e-12);
  }
}

TEST_CASE("eta_of_pauli is 4/3 of the total flip weight") {
  CHECK(eta_of_pauli({0.7, 0.3, 0.0, 0.0}) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(eta_of_pauli({0.7, 0.0, 0.3, 0.0}) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(eta_of_pauli({0.4, 0.1, 0.2, 0.3}) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(eta_of_pauli({1.0, 0.0, 0.0, 0.0}) == 0.0);
  // Uniform Pauli mixing p = 1/4 each gives complete depolarization.
  CHECK(eta_of_pauli({0.25, 0.25, 0.25, 0.25}) ==
        doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("twirl3 equals the brute-force average and depolarizes Paulis") {
  const TwirlSet& set = TwirlSet::default_set();
  Rng rng(13);
  for (int rep = 0; rep < 25; ++rep) {
    double px = 0.5 * rng.uniform(), py = 0.3 * rng.uniform(),
           pz = 0.15 * rng.uniform();
    const Channel lam = pauli_channel(px, py, pz);
    const Channel tw = twirl3(lam);
    CHECK(max_abs_diff(superoperator(tw), brute_twirl_superop(lam, set)) <
          1e-12);
    const double eta = eta_of_pauli({1.0 - px - py - pz, px, py, pz});
    CHECK(channels_equal(tw, depolarizing(eta), 1e-10));
  }
  // The paper's working example: 0.3 X-flip twirls to depolarizing(0.4);
  // same for the Y-noise variant.
  CHECK(channels_equal(twirl3(pauli_channel(0.3, 0.0, 0.0)), depolarizing(0.4),
                       1e-12));
  CHECK(channels_equal(twirl3(pauli_channel(0.0, 0.3, 0.0)), depolarizing(0.4),
                       1e-12));
  CHECK_THROWS_AS((void)twirl3(Channel::from_kraus(
                      {tensor(gate_matrix("X"), gate_matrix("X"))})),
                  std::invalid_argument);
}

TEST_CASE("twirl3 of a non-Pauli channel still matches the brute force") {
  const TwirlSet& set = TwirlSet::default_set();
  for (double gamma : {0.15, 0.4, 0.8}) {
    const Channel ad = amplitude_damping(gamma);
    const Channel tw = twirl3(ad);
    CHECK(max_abs_diff(superoperator(tw), brute_twirl_superop(ad, set)) <
          1e-12);
    // Still trace preserving (a sanity proxy: acting on I/2 keeps trace 1).
    DensityMatrix rho = DensityMatrix::zero_state(1);
    apply_channel(rho, tw, {0});
    CHECK(std::abs(rho.rho.trace().real() - 1.0) < 1e-12);
    // Amplitude damping is not unital, so its 3-twirl cannot equal any
    // depolarizing channel (which all fix I/2).
    DensityMatrix mixed;
    mixed.n_qubits = 1;
    mixed.rho = 0.5 * Matrix::Identity(2, 2);
    apply_channel(mixed, tw, {0});
    CHECK(max_abs_diff(mixed.rho, Matrix(0.5 * Matrix::Identity(2, 2))) >
          1e-3);
  }
}

TEST_CASE("alternative valid twirl set {I, V, V^2} is accepted and agrees") {
  const Matrix v = twirl_v();
  const TwirlSet set =
      TwirlSet::from_unitaries(Matrix::Identity(2, 2), v, Matrix(v * v));
  const Channel lam = pauli_channel(0.2, 0.1, 0.05);
  const Channel tw = twirl3(lam, set);
  const double eta = eta_of_pauli({0.65, 0.2, 0.1, 0.05});
  CHECK(channels_equal(tw, depolarizing(eta), 1e-10));
}

TEST_CASE("invalid twirl sets are rejected") {
  const Matrix id = Matrix::Identity(2, 2);
  // {I, I, I} leaves every axis fixed: no coverage.
  CHECK_THROWS_AS((void)TwirlSet::from_unitaries(id, id, id),
                  std::invalid_argument);
  // X conjugation maps the Pauli set to itself but only permutes two axes'
  // signs; the image set of axis X is {X} for all three elements.
  CHECK_THROWS_AS(
      (void)TwirlSet::from_unitaries(id, gate_matrix("X"), gate_matrix("X")),
      std::invalid_argument);
  // RY(0.3) conjugation is not a Pauli permutation at all.
  CHECK_THROWS_AS(
      (void)TwirlSet::from_unitaries(id, twirl_v(), gate_matrix("RY", {0.3})),
      std::invalid_argument);
  // Non-unitary element.
  CHECK_THROWS_AS(
      (void)TwirlSet::from_unitaries(id, twirl_v(), Matrix(0.5 * id)),
      std::invalid_argument);
}

TEST_CASE("superoperator and channel_on_matrix agree with apply_channel") {
  Rng rng(17);
  for (int rep = 0; rep < 10; ++rep) {
    const Channel ch = random_channel(rng);
    const DensityMatrix rho = random_single_qubit_state(rng);
    DensityMatrix via_apply = rho;
    apply_channel(via_apply, ch, {0});
    const Matrix via_matrix = channel_on_matrix(ch, rho.rho);
    CHECK(max_abs_diff(via_apply.rho, via_matrix) < 1e-12);

    const Matrix s = superoperator(ch);
    Vector vec_in(4), want(4);
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < 2; ++i) vec_in(j * 2 + i) = rho.rho(i, j);
    Vector vec_out = s * vec_in;
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < 2; ++i) want(j * 2 + i) = via_apply.rho(i, j);
    CHECK((vec_out - want).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("adjoint_channel satisfies the trace duality") {
  Rng rng(19);
  for (int rep = 0; rep < 10; ++rep) {
    const Channel ch = random_channel(rng);
    const Channel adj = adjoint_channel(ch);
    const DensityMatrix rho = random_single_qubit_state(rng);
    // Random hermitian observable.
    Matrix m(2, 2);
    const double a = rng.uniform(), b = rng.uniform(), c = rng.uniform(),
                 d = rng.uniform();
    m << cdouble(a, 0), cdouble(b, c), cdouble(b, -c), cdouble(d, 0);
    const cdouble lhs = (m * channel_on_matrix(ch, rho.rho)).trace();
    const cdouble rhs = (channel_on_matrix(adj, m) * rho.rho).trace();
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
  // Adjoint of TP is unital: N^dag[I] = I.
  const Channel adj = adjoint_channel(amplitude_damping(0.3));
  CHECK(max_abs_diff(channel_on_matrix(adj, Matrix::Identity(2, 2)),
                     Matrix::Identity(2, 2)) < 1e-12);
}

TEST_CASE("Choi / Kraus round trips preserve the channel") {
  Rng rng(23);
  for (int rep = 0; rep < 10; ++rep) {
    const Channel ch = random_channel(rng);
    const Matrix s = superoperator(ch);
    const Channel back = channel_from_superop(s, 1);
    CHECK(channels_equal(ch, back, 1e-10));
    // And the explicit two-step path.
    const Matrix choi = choi_from_superop(s, 1);
    CHECK(max_abs_diff(choi, choi.adjoint()) < 1e-12);  // hermitian
    const std::vector<Matrix> kraus = kraus_from_choi(choi);
    const Channel two_step = Channel::from_kraus(kraus);
    CHECK(channels_equal(ch, two_step, 1e-10));
  }
  for (double eta : {0.0, 0.1, 0.4, 1.0}) {
    CHECK(channels_equal(depolarizing(eta),
                         channel_from_superop(superoperator(depolarizing(eta)), 1),
                         1e-12));
  }
  // The transpose map is positive but not completely positive: its Choi
  // matrix has a negative eigenvalue, so Kraus extraction must refuse.
  Matrix transpose_superop = Matrix::Zero(4, 4);
  transpose_superop(0, 0) = 1;  // E00 -> E00
  transpose_superop(3, 3) = 1;  // E11 -> E11
  transpose_superop(1, 2) = 1;  // E10 -> E01 (vec cols: j*2+i)
  transpose_superop(2, 1) = 1;
  CHECK_THROWS_AS((void)channel_from_superop(transpose_superop, 1),
                  std::invalid_argument);
}

TEST_CASE("apply_channel acts only on its target qubit") {
  // X-flip on qubit 1 of |000>: marginal of qubit 1 flips, others stay.
  DensityMatrix rho = DensityMatrix::zero_state(3);
  apply_channel(rho, pauli_channel(0.3, 0.0, 0.0), {1});
  const DensityMatrix q0 = partial_trace(rho, {0});
  const DensityMatrix q1 = partial_trace(rho, {1});
  const DensityMatrix q2 = partial_trace(rho, {2});
  CHECK(std::abs(q0.rho(0, 0).real() - 1.0) < 1e-12);
  CHECK(std::abs(q1.rho(0, 0).real() - 0.7) < 1e-12);
  CHECK(std::abs(q1.rho(1, 1).real() - 0.3) < 1e-12);
  CHECK(std::abs(q2.rho(0, 0).real() - 1.0) < 1e-12);
  CHECK_THROWS_AS(apply_channel(rho, depolarizing(0.5), {3}),
                  std::invalid_argument);
}

TEST_CASE("haar_unitary is unitary and seed-reproducible") {
  Rng a(31), b(31), c(32);
  const Matrix ua = haar_unitary(a);
  const Matrix ub = haar_unitary(b);
  const Matrix uc = haar_unitary(c);
  CHECK(is_unitary(ua));
  CHECK(max_abs_diff(ua, ub) == 0.0);
  CHECK(max_abs_diff(ua, uc) > 1e-3);
  for (int i = 0; i < 20; ++i) CHECK(is_unitary(haar_unitary(a)));
}

TEST_CASE("Monte-Carlo Haar twirl converges to the three-unitary twirl") {
  const Channel lam = pauli_channel(0.25, 0.1, 0.05);
  const Channel mc = twirl_haar_mc(lam, 100000, 2024);
  CHECK(channels_equal(mc, twirl3(lam), 5e-3));
  // Determinism.
  const Channel mc2 = twirl_haar_mc(lam, 1000, 77);
  const Channel mc3 = twirl_haar_mc(lam, 1000, 77);
  CHECK(max_abs_diff(superoperator(mc2), superoperator(mc3)) == 0.0);
  CHECK_THROWS_AS((void)twirl_haar_mc(lam, 0, 1), std::invalid_argument);
}

TEST_CASE("collective twirl: single qubit reduces to twirl3") {
  Rng rng(41);
  for (int rep = 0; rep < 5; ++rep) {
    const Channel lam = pauli_channel(0.3 * rng.uniform(), 0.2 * rng.uniform(),
                                      0.1 * rng.uniform());
    const DensityMatrix rho = random_single_qubit_state(rng);
    const DensityMatrix got = collective_twirl_apply(rho, {lam});
    DensityMatrix want = rho;
    apply_channel(want, twirl3(lam), {0});
    CHECK(max_abs_diff(got.rho, want.rho) < 1e-12);
  }
  CHECK_THROWS_AS(
      (void)collective_twirl_apply(DensityMatrix::zero_state(2),
                                   {pauli_channel(0.1, 0, 0)}),
      std::invalid_argument);
}

TEST_CASE("collective twirl depolarizes every per-qubit marginal") {
  // Two-qubit product state |+0>, X noise on both qubits.
  StateVector psi = StateVector::zero_state(2);
  apply_unitary(psi, gate_matrix("H"), {0});
  const Channel lam = pauli_channel(0.3, 0.0, 0.0);
  const DensityMatrix tw =
      collective_twirl_apply(psi.to_density(), {lam, lam});
  for (int q = 0; q < 2; ++q) {
    DensityMatrix want = partial_trace(psi.to_density(), {q});
    apply_channel(want, depolarizing(0.4), {0});
    CHECK(max_abs_diff(partial_trace(tw, {q}).rho, want.rho) < 1e-12);
  }
}

TEST_CASE("induced unitary fragment reproduces its traced-out channel") {
  for (char axis : {'X', 'Y', 'Z'}) {
    for (double w : {0.1, 0.3, 0.7}) {
      const double theta = 2.0 * std::asin(std::sqrt(w));
      const Matrix u = noise_fragment_unitary(axis, theta);
      CHECK(is_unitary(u));
      const Channel ch = induced_noise_channel(axis, theta);
      // The induced channel is the axis flip with probability w.
      const Channel want =
          axis == 'X'   ? pauli_channel(w, 0, 0)
          : axis == 'Y' ? pauli_channel(0, w, 0)
                        : pauli_channel(0, 0, w);
      CHECK(channels_equal(ch, want, 1e-12));
      // Independent check through explicit dilation on a random state:
      // tr_anc[U (rho (x) |0><0|) U^dag] == ch[rho].
      Rng rng(53);
      const DensityMatrix rho = random_single_qubit_state(rng);
      Matrix anc = Matrix::Zero(2, 2);
      anc(0, 0) = 1.0;
      const Matrix big = u * tensor(rho.rho, anc) * u.adjoint();
      const Matrix red = partial_trace_matrix(big, 2, {0});
      CHECK(max_abs_diff(red, channel_on_matrix(ch, rho.rho)) < 1e-12);
    }
  }
  CHECK_THROWS_AS((void)noise_fragment_unitary('Q', 0.3),
                  std::invalid_argument);
}

}  // namespace
}  // namespace qmit

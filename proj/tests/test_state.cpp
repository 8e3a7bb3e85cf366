// Copyright 2026 The DQIS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"

#include "dqis/fixtures.hpp"
#include "dqis/state.hpp"

using namespace dqis;

namespace {

Matrix random_unitary(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> g;
  Matrix a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  return Eigen::HouseholderQR<Matrix>(a).householderQ();
}

StateVector random_sv(std::mt19937_64& rng, std::size_t n) {
  return StateVector(n, oracle::random_state(rng, Eigen::Index{1} << n));
}

Matrix swap_gate() {
  Matrix s = Matrix::Zero(4, 4);
  s(0, 0) = s(1, 2) = s(2, 1) = s(3, 3) = 1.0;
  return s;
}

}  // namespace

TEST_CASE("state vectors validate their norm") {
  CHECK_THROWS_AS(StateVector(1, Vector::Ones(2)), std::invalid_argument);
  CHECK_NOTHROW(StateVector(1, Vector::Unit(2, 1)));
  CHECK(StateVector::product("+").amps().isApprox(oracle::ket("+")));
  CHECK(StateVector::product("0-1+").amps().isApprox(oracle::ket("0-1+")));
  CHECK(bitstring(4, 5) == "0101");
}

TEST_CASE("controlled phase on two plus states gives the two-vertex graph state") {
  const auto s = apply_gate(StateVector::product("++"), gates::cz(), {0, 1});
  CHECK(expectation(s, PauliString::parse("XZ")) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(expectation(s, PauliString::parse("ZX")) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("four-vertex path circuit reproduces the printed cluster amplitudes") {
  StateVector s = StateVector::product("++++");
  for (std::size_t j = 0; j < 3; ++j) s = apply_gate(s, gates::cz(), {j, j + 1});
  const Vector printed =
      0.5 * (oracle::ket("+0+0") + oracle::ket("+0-1") + oracle::ket("-1-0") + oracle::ket("-1+1"));
  CHECK((s.amps() - printed).norm() < 1e-12);

  const auto flipped = apply_pauli(s, PauliString::parse("ZZZI"));
  const Vector printed1110 =
      0.5 * (oracle::ket("-0-0") + oracle::ket("-0+1") - oracle::ket("+1+0") - oracle::ket("+1-1"));
  CHECK((flipped.amps() - printed1110).norm() < 1e-12);
}

TEST_CASE("gate application matches dense Kronecker products") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const auto s = random_sv(rng, n);
    const std::size_t t = static_cast<std::size_t>(trial) % (n - 1);
    const Matrix g1 = random_unitary(rng, 2);
    const Matrix g2 = random_unitary(rng, 4);
    const auto out1 = apply_gate(s, g1, {t});
    const auto out2 = apply_gate(s, g2, {t, t + 1});
    const auto out3 = apply_gate(s, g2, {t + 1, t});
    CHECK(std::abs(out1.amps().norm() - 1.0) < 1e-12);
    CHECK(std::abs(out2.amps().norm() - 1.0) < 1e-12);
    const Matrix left = Matrix::Identity(Eigen::Index{1} << t, Eigen::Index{1} << t);
    const Matrix right1 = Matrix::Identity(Eigen::Index{1} << (n - t - 1), Eigen::Index{1} << (n - t - 1));
    const Matrix right2 = Matrix::Identity(Eigen::Index{1} << (n - t - 2), Eigen::Index{1} << (n - t - 2));
    CHECK((out1.amps() - oracle::kron(oracle::kron(left, g1), right1) * s.amps()).norm() < 1e-12);
    CHECK((out2.amps() - oracle::kron(oracle::kron(left, g2), right2) * s.amps()).norm() < 1e-12);
    const Matrix swapped = swap_gate() * g2 * swap_gate();
    CHECK((out3.amps() - oracle::kron(oracle::kron(left, swapped), right2) * s.amps()).norm() < 1e-12);
  }
}

TEST_CASE("gate application rejects bad input") {
  const StateVector s(2);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 0) = 2.0;
  CHECK_THROWS_AS(apply_gate(s, bad, {0}), std::invalid_argument);
  CHECK_THROWS(apply_gate(s, gates::hadamard(), {2}));
  CHECK_THROWS(apply_gate(s, gates::cz(), {1, 1}));
}

TEST_CASE("expectations agree with the dense oracle") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto s = random_sv(rng, n);
    auto p = oracle::random_word(rng, n);
    p = p.with_phase(p.phase() & 2);
    const double dense = (s.amps().adjoint() * oracle::dense(p) * s.amps())(0, 0).real();
    CHECK(std::abs(expectation(s, p) - dense) < 1e-10);
  }
  CHECK(std::abs(expectation(StateVector::product("+"), PauliString::parse("Z"))) < 1e-12);
  CHECK(expectation(fiveq_zero(), PauliString::parse("-IIXZX")) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS(expectation(StateVector(1), PauliString::parse("iX")));
}

TEST_CASE("measurement branches") {
  const auto plus = measure_branches(StateVector::product("+"), MeasurementBasis::computational(1),
                                     std::vector<std::size_t>{0});
  REQUIRE(plus.size() == 2);
  CHECK(plus[0].probability == doctest::Approx(0.5));
  CHECK(plus[1].probability == doctest::Approx(0.5));

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = random_sv(rng, 4);
    const auto basis = MeasurementBasis::bell();
    const std::vector<std::size_t> targets{0, 1};
    const auto branches = measure_branches(s, basis, targets);
    double total = 0.0;
    Matrix embedded(16, static_cast<Eigen::Index>(branches.size()));
    for (std::size_t b = 0; b < branches.size(); ++b) {
      total += branches[b].probability;
      const auto& e = *std::find_if(basis.elements().begin(), basis.elements().end(),
                                    [&](const BasisElement& x) { return x.label == branches[b].outcome; });
      embedded.col(static_cast<Eigen::Index>(b)) = oracle::kron(e.vec, branches[b].post_state.amps());
    }
    CHECK(std::abs(total - 1.0) < 1e-10);
    const Matrix gram = embedded.adjoint() * embedded;
    CHECK((gram - Matrix::Identity(gram.rows(), gram.cols())).norm() < 1e-10);
  }
}

TEST_CASE("measurement bases must resolve the identity") {
  Vector v = Vector::Unit(2, 0);
  CHECK_THROWS_AS(MeasurementBasis("half", 1, {{"0", v}}), std::invalid_argument);
  const auto labels = MeasurementBasis::bell().elements();
  CHECK(labels[0].label == "Phi+");
  CHECK(labels[3].label == "Psi-");
}

TEST_CASE("partial trace") {
  const auto product = StateVector::product("0+");
  const std::size_t keep0[] = {0};
  CHECK(partial_trace(product, keep0).purity() == doctest::Approx(1.0));

  Vector bell = Vector::Zero(4);
  bell[0] = bell[3] = std::sqrt(0.5);
  CHECK(partial_trace(StateVector(2, bell), keep0).purity() == doctest::Approx(0.5));

  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = random_sv(rng, 4);
    const std::vector<std::size_t> keep{2, 0};
    const auto rho = partial_trace(s, keep);
    CHECK((rho.entries() - rho.entries().adjoint()).norm() < 1e-12);
    CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
    CHECK(rho.min_eigenvalue() > -1e-9);
    auto p = oracle::random_word(rng, 2);
    p = p.stripped();
    // p acts on (qubit 2, qubit 0); pad it to the full register.
    std::vector<Pauli> padded(4, Pauli::I);
    padded[2] = p[0];
    padded[0] = p[1];
    CHECK(std::abs(rho.expectation(p) - expectation(s, PauliString(padded))) < 1e-10);
  }
}

TEST_CASE("global phase and fidelity") {
  const StateVector zero = StateVector::basis(1, 0);
  Vector phased = Vector::Zero(2);
  phased[0] = std::polar(1.0, std::numbers::pi / 3);
  CHECK(equal_up_to_global_phase(zero, StateVector(1, phased), 1e-12));
  CHECK_FALSE(equal_up_to_global_phase(zero, StateVector::basis(1, 1), 1e-9));
  CHECK(fidelity(zero, StateVector::product("+")) == doctest::Approx(0.5));
}

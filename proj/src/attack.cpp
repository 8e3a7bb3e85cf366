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

#include "dqis/attack.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dqis/fixtures.hpp"

namespace dqis {

void AttackParams::validate() const {
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 2.0 + kAlgebraTol)) {
    throw std::invalid_argument("attack angle must lie in [0, pi/2], got " + std::to_string(theta));
  }
  if (target_qubit >= 5) throw std::invalid_argument("attack target must be one of the five code qubits");
}

Matrix eve_unitary(const AttackParams& p) {
  p.validate();
  const double c = std::cos(p.theta), s = std::sin(p.theta);
  Matrix u = Matrix::Zero(4, 4);
  u(0, 0) = 1.0;
  u(1, 1) = 1.0;
  u(2, 2) = c;
  u(2, 3) = s;
  u(3, 2) = s;
  u(3, 3) = -c;
  return u;
}

StateVector attacked_state(const Secret& s, const AttackParams& p) {
  const StateVector logical = encode(s, dqis_fixture("fiveq").code);
  Vector amps = Vector::Zero(64);
  for (Eigen::Index i = 0; i < 32; ++i) amps[2 * i] = logical.amps()[i];
  const StateVector joint(6, amps);
  return apply_gate(joint, eve_unitary(p), {p.target_qubit, 5});
}

std::vector<AttackRow> violation_under_attack(const Secret& s, std::span<const double> thetas,
                                              std::size_t target_qubit) {
  const BellOperator op = bell_fixture("fiveq").op;
  std::vector<PauliString> padded;
  for (const auto& t : op.terms()) {
    auto letters = t.letters();
    letters.push_back(Pauli::I);
    padded.emplace_back(std::move(letters), t.phase());
  }
  const std::size_t code_qubits[] = {0, 1, 2, 3, 4};
  std::vector<AttackRow> rows;
  for (double theta : thetas) {
    const StateVector state = attacked_state(s, {theta, target_qubit});
    AttackRow row{theta, 0.0, {}, 0.0};
    for (const auto& p : padded) {
      row.terms.push_back(expectation(state, p));
      row.value += row.terms.back();
    }
    const DensityMatrix rho = partial_trace(state, code_qubits);
    for (const auto& t : op.terms()) row.reduced_value += rho.expectation(t);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace dqis

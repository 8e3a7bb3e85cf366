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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dqis/dqis.hpp"
#include "dqis/state.hpp"

namespace dqis {

/// Strength of Eve's entangling probe on one code qubit.
struct AttackParams {
  double theta = 0.0;           // radians in [0, pi/2]
  std::size_t target_qubit = 3;  // 0-based; qubit 4 in ket notation

  void validate() const;
};

/// Control on the code qubit, target on Eve's ancilla:
/// |0><0| (x) I + |1><1| (x) [[cos t, sin t], [sin t, -cos t]].
Matrix eve_unitary(const AttackParams& p);

/// Five-qubit encoding of `s` with Eve's ancilla appended as the last qubit
/// (index 5, prepared in |0>) after the probe.
StateVector attacked_state(const Secret& s, const AttackParams& p);

struct AttackRow {
  double theta = 0.0;
  double value = 0.0;
  std::vector<double> terms;  // signed expectation of each Bell term
  double reduced_value = 0.0;  // the same sum on the reduced state of the code qubits
};

std::vector<AttackRow> violation_under_attack(const Secret& s, std::span<const double> thetas,
                                              std::size_t target_qubit = 3);

}  // namespace dqis

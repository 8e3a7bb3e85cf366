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
#include <map>
#include <string>
#include <vector>

#include "dqis/state.hpp"

namespace dqis {

/// d orthonormal code words on n qubits.
class CodeSpace {
 public:
  explicit CodeSpace(std::vector<StateVector> codewords);

  std::size_t dim() const { return words_.size(); }
  std::size_t qubits() const { return words_.front().qubits(); }
  const std::vector<StateVector>& codewords() const { return words_; }
  const StateVector& operator[](std::size_t j) const { return words_.at(j); }

 private:
  std::vector<StateVector> words_;
};

/// Normalized amplitudes of a d-level secret.
class Secret {
 public:
  explicit Secret(Vector amps);
  static Secret qubit(Complex alpha, Complex beta);
  static Secret basis(std::size_t d, std::size_t j);

  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const Vector& amps() const { return amps_; }
  Complex operator[](std::size_t j) const { return amps_[static_cast<Eigen::Index>(j)]; }
  /// The secret on r qubits, amplitude j on basis state |j>.
  StateVector embedded(std::size_t r) const;
  Matrix density() const { return amps_ * amps_.adjoint(); }

 private:
  Vector amps_;
};

/// Sum_j alpha_j |G_j>.
StateVector encode(const Secret& s, const CodeSpace& c);

/// One of d^2 one-time-pad operations X^a Z^b, index = a*d + b.
/// For d = 2 the indices 0..3 are I, Z, X, Y; `pauli` looks them up by letter.
struct EncryptionKey {
  std::size_t d = 2;
  std::size_t index = 0;
  static EncryptionKey pauli(char letter);
  std::string str() const;
};

/// The d x d unitary behind a key. For d = 2 the Y key is the Hermitian Y.
Matrix key_operator(const EncryptionKey& k);
Secret encrypt(const Secret& s, const EncryptionKey& k);
Secret decrypt(const Secret& s, const EncryptionKey& k);
/// (1/d^2) sum_k U_k rho U_k^dagger over every key.
Matrix pad_average(const Secret& s);

enum class Role { Dealer, Agent, Recoverer };

/// A party's qubits (0-based code-qubit indices) and how they are measured.
/// Agents give one letter from {z, x, y} per qubit. The dealer's first qubit
/// goes into the Bell measurement with the ancilla; any further dealer qubits
/// take letters from `bases`. The recoverer is never measured.
struct PartySpec {
  std::string name;
  Role role = Role::Agent;
  std::vector<std::size_t> qubits;
  std::string bases;
};

class TeleportConfig {
 public:
  TeleportConfig(std::size_t n, std::vector<PartySpec> parties);

  std::size_t qubits() const { return n_; }
  const std::vector<PartySpec>& parties() const { return parties_; }
  const PartySpec& dealer() const;
  const PartySpec& recoverer() const;
  /// Rex's qubit count.
  std::size_t recoverer_qubits() const { return recoverer().qubits.size(); }

 private:
  std::size_t n_;
  std::vector<PartySpec> parties_;
};

/// One measured party's basis and the register indices it acts on, with the
/// ancilla at index 0 and code qubit q at q + 1.
struct PartyMeasurement {
  std::string name;
  MeasurementBasis basis;
  std::vector<std::size_t> targets;
};

/// Dealer first, then agents in configuration order.
std::vector<PartyMeasurement> party_measurements(const TeleportConfig& cfg);

/// Joint result of every measured party, e.g. "Alice=Phi+,Bob=01".
struct JointOutcome {
  std::string label;
  std::map<std::string, std::string> by_party;
  Vector projector;  // product of the parties' basis vectors
  std::vector<std::size_t> targets;  // indices in the register with the ancilla at 0
};

/// Every joint outcome of the measured parties, dealer first.
std::vector<JointOutcome> joint_outcomes(const TeleportConfig& cfg);

/// Rex's unnormalized state <v_k|_measured (|in>_u (x) |code>) for every outcome.
std::vector<Ket> teleport_input(const StateVector& input, const StateVector& code,
                                const TeleportConfig& cfg);

struct RecoveryMap {
  std::map<std::string, Matrix> unitaries;  // U_k with U_k|j> = psi_j / |psi_j|
};

struct OutcomeCheck {
  std::string label;
  Matrix gram;  // <psi_i|psi_j>, unnormalized
  bool equal_norms = false;
  bool orthogonal = false;
  bool parallel = false;
  bool vanishing = false;  // every psi_j is zero
};

struct DivergenceReport {
  bool ok = false;
  std::vector<OutcomeCheck> outcomes;
  RecoveryMap recovery;  // filled only when ok
};

/// Teleports the fiducial |0> over each code word and checks that the
/// projected Rex states are equal-norm and pairwise orthogonal in every branch.
DivergenceReport check_divergence(const CodeSpace& c, const TeleportConfig& cfg);

/// Treats one code word as an ordinary teleportation channel for a qubit input
/// on the ancilla and builds its per-outcome correction.
DivergenceReport channel_recovery(const StateVector& codeword, const TeleportConfig& cfg);

struct TeleportBranch {
  std::string outcome;
  std::map<std::string, std::string> by_party;
  double probability = 0.0;
  StateVector rex_state;  // after the recovery unitary's inverse
  double fidelity = 0.0;  // against the embedded secret
};

/// Runs the fiducial teleportation over the encoded secret for every branch and
/// applies the recovery. Throws std::out_of_range when a realized outcome has
/// no recovery entry.
std::vector<TeleportBranch> run_teleportation(const Secret& s, const CodeSpace& c,
                                              const TeleportConfig& cfg, const RecoveryMap& r);

/// A printed table row as terms (c_alpha * alpha + c_beta * beta) |ket>.
struct TableTerm {
  Complex c_alpha;
  Complex c_beta;
  std::string ket;  // over {0, 1, +, -}
};

struct TableRow {
  std::string table;
  std::string label;
  std::string printed;
  std::string simulated;
  double overlap = 0.0;  // normalized |<printed|simulated>| at the probe secrets
  bool matched = false;
};

/// Recomputes the worked-example tables and compares each printed row with
/// the simulated branch state up to normalization and global phase.
std::vector<TableRow> reproduce_tables();

/// Renders alpha * a + beta * b in the per-qubit basis given by `bases`
/// (letters z or x), scaled so that the largest coefficient is 1.
std::string format_linear_state(const Ket& a, const Ket& b, const std::string& bases);

}  // namespace dqis

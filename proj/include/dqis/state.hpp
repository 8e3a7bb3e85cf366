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

#include <complex>
#include <initializer_list>
#include <string_view>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dqis/error.hpp"
#include "dqis/pauli.hpp"

namespace dqis {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Largest register the dense engine accepts.
inline constexpr std::size_t kMaxQubits = 16;

/// Amplitude index bit of `qubit` in an n-qubit register. Qubit 0 is the
/// most significant bit, so |q0 q1 ... q_{n-1}> reads as a binary number.
inline std::size_t qubit_bit(std::size_t n, std::size_t qubit) {
  return std::size_t{1} << (n - 1 - qubit);
}

/// Possibly unnormalized amplitude vector; the result of projecting a state
/// onto a measurement outcome before renormalization.
class Ket {
 public:
  Ket() = default;
  Ket(std::size_t n, Vector amps);
  static Ket zero(std::size_t n);
  /// Computational basis vector |index>.
  static Ket basis(std::size_t n, std::size_t index);

  std::size_t qubits() const { return n_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const Vector& amps() const { return amps_; }
  Vector& amps() { return amps_; }
  double norm() const { return amps_.norm(); }

  Ket& operator+=(const Ket& other);
  friend Ket operator*(Complex c, Ket k);
  friend Ket operator+(Ket a, const Ket& b) { return a += b; }

 private:
  std::size_t n_ = 0;
  Vector amps_ = Vector::Ones(1);
};

/// Normalized pure state of n qubits.
class StateVector {
 public:
  /// |0...0>.
  explicit StateVector(std::size_t n = 0);
  /// Validates that the amplitudes have unit norm within kAlgebraTol.
  StateVector(std::size_t n, Vector amps);
  /// Rescales to unit norm; throws on the zero vector.
  static StateVector normalized(const Ket& k);
  static StateVector normalized(std::size_t n, Vector amps);
  static StateVector basis(std::size_t n, std::size_t index);
  /// Product state from a string over {0,1,+,-}.
  static StateVector product(std::string_view kets);

  std::size_t qubits() const { return n_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const Vector& amps() const { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }

  Ket ket() const { return Ket(n_, amps_); }
  /// <this|other>
  Complex inner(const StateVector& other) const;

 private:
  struct Unchecked {};
  StateVector(std::size_t n, Vector amps, Unchecked);
  friend StateVector apply_gate(const StateVector&, const Matrix&,
                                std::span<const std::size_t>);
  friend StateVector apply_pauli(const StateVector&, const PauliString&);

  std::size_t n_ = 0;
  Vector amps_;
};

/// Hermitian, unit-trace operator on n qubits.
class DensityMatrix {
 public:
  DensityMatrix(std::size_t n, Matrix entries);
  static DensityMatrix pure(const StateVector& s);

  std::size_t qubits() const { return n_; }
  const Matrix& entries() const { return entries_; }
  Complex trace() const { return entries_.trace(); }
  double purity() const;
  /// Tr(P rho).
  double expectation(const PauliString& p) const;
  /// Smallest eigenvalue, for positivity checks.
  double min_eigenvalue() const;

 private:
  std::size_t n_;
  Matrix entries_;
};

namespace gates {
Matrix identity(std::size_t qubits);
Matrix hadamard();
Matrix pauli(Pauli p);
Matrix s();
Matrix cz();
Matrix cnot();
/// Dense 2^n x 2^n matrix of a Pauli word, phase included.
Matrix dense(const PauliString& p);
}  // namespace gates

bool is_unitary(const Matrix& m, double tol = kExpectationTol);

/// Applies `gate` (2^k x 2^k) to `targets`; targets[0] is the most
/// significant bit of the gate's index.
StateVector apply_gate(const StateVector& state, const Matrix& gate,
                       std::span<const std::size_t> targets);
StateVector apply_gate(const StateVector& state, const Matrix& gate,
                       std::initializer_list<std::size_t> targets);
/// Same linear action on an unnormalized vector; no unitarity check.
Ket apply_matrix(const Ket& k, const Matrix& m, std::span<const std::size_t> targets);
StateVector apply_pauli(const StateVector& state, const PauliString& p);
Ket apply_pauli(const Ket& k, const PauliString& p);

/// <state|P|state> for Hermitian P.
double expectation(const StateVector& state, const PauliString& p);

/// One rank-1 element of a measurement on k qubits.
struct BasisElement {
  std::string label;
  Vector vec;
};

/// Orthonormal basis of k qubits; resolution of the identity is checked.
class MeasurementBasis {
 public:
  MeasurementBasis(std::string name, std::size_t qubits, std::vector<BasisElement> elements);

  static MeasurementBasis computational(std::size_t qubits);
  /// Eigenbasis of a single-qubit Pauli, +1 eigenvector first. Labels: Z
  /// gives "0"/"1", X gives "+"/"-", Y gives "+i"/"-i", I gives "".
  static MeasurementBasis pauli(Pauli p);
  /// {Phi+, Phi-, Psi+, Psi-} with Phi+- = (|00> +- |11>)/sqrt2 and
  /// Psi+- = (|01> +- |10>)/sqrt2.
  static MeasurementBasis bell();
  /// Tensor product, labels concatenated.
  static MeasurementBasis tensor(std::span<const MeasurementBasis> parts);

  const std::string& name() const { return name_; }
  std::size_t qubits() const { return k_; }
  const std::vector<BasisElement>& elements() const { return elements_; }

 private:
  std::string name_;
  std::size_t k_;
  std::vector<BasisElement> elements_;
};

/// Unnormalized <v|_targets |psi>, leaving the remaining qubits in order.
Ket project(const Ket& state, const Vector& v, std::span<const std::size_t> targets);

struct MeasurementBranch {
  std::string outcome;
  double probability = 0.0;
  StateVector post_state;
};

/// Every outcome with probability above 1e-12, post-states renormalized.
std::vector<MeasurementBranch> measure_branches(const StateVector& state,
                                                const MeasurementBasis& basis,
                                                std::span<const std::size_t> targets);

/// Reduced operator on `keep`, in the order given.
DensityMatrix partial_trace(const StateVector& state, std::span<const std::size_t> keep);

bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol);
/// |<a|b>|^2
double fidelity(const StateVector& a, const StateVector& b);

/// Basis index as a bit string of length n, qubit 0 first.
std::string bitstring(std::size_t n, std::size_t index);

}  // namespace dqis

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

#include "dqis/state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace dqis {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

std::size_t dim_of(std::size_t n) {
  if (n > kMaxQubits) {
    throw std::length_error("register of " + std::to_string(n) +
                            " qubits exceeds the engine limit of " +
                            std::to_string(kMaxQubits));
  }
  return std::size_t{1} << n;
}

void check_targets(std::size_t n, std::span<const std::size_t> targets) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] >= n) throw std::out_of_range("qubit index out of range");
    for (std::size_t j = i + 1; j < targets.size(); ++j) {
      if (targets[i] == targets[j]) throw std::invalid_argument("repeated target qubit");
    }
  }
}

// Offsets of each local index of `targets` inside the full register.
std::vector<std::size_t> local_offsets(std::size_t n, std::span<const std::size_t> targets) {
  const std::size_t k = targets.size();
  std::vector<std::size_t> offsets(std::size_t{1} << k, 0);
  for (std::size_t l = 0; l < offsets.size(); ++l) {
    for (std::size_t t = 0; t < k; ++t) {
      if ((l >> (k - 1 - t)) & 1U) offsets[l] |= qubit_bit(n, targets[t]);
    }
  }
  return offsets;
}

std::size_t target_mask(std::size_t n, std::span<const std::size_t> targets) {
  std::size_t mask = 0;
  for (auto t : targets) mask |= qubit_bit(n, t);
  return mask;
}

void apply_in_place(Vector& amps, std::size_t n, const Matrix& m,
                    std::span<const std::size_t> targets) {
  check_targets(n, targets);
  const std::size_t local = std::size_t{1} << targets.size();
  if (static_cast<std::size_t>(m.rows()) != local || m.rows() != m.cols()) {
    throw std::invalid_argument("gate dimension does not match target count");
  }
  const auto offsets = local_offsets(n, targets);
  const std::size_t mask = target_mask(n, targets);
  Vector gathered(idx(local));
  for (std::size_t base = 0; base < (std::size_t{1} << n); ++base) {
    if (base & mask) continue;
    for (std::size_t l = 0; l < local; ++l) gathered[idx(l)] = amps[idx(base | offsets[l])];
    const Vector out = m * gathered;
    for (std::size_t l = 0; l < local; ++l) amps[idx(base | offsets[l])] = out[idx(l)];
  }
}

// P|i> = coeff(i) |i ^ xmask>.
struct PauliAction {
  std::size_t xmask = 0;
  std::size_t zmask = 0;
  std::size_t ycount = 0;
  int phase = 0;

  PauliAction(std::size_t n, const PauliString& p) : phase(p.phase()) {
    if (p.size() != n) throw std::invalid_argument("Pauli length does not match register");
    for (std::size_t q = 0; q < n; ++q) {
      const auto bits = static_cast<std::uint8_t>(p[q]);
      if (bits & 1U) xmask |= qubit_bit(n, q);
      if (bits & 2U) zmask |= qubit_bit(n, q);
      if (p[q] == Pauli::Y) ++ycount;
    }
  }

  // Y = iXZ, so the letters contribute i^{#Y} (-1)^{popcount(i & zmask)}.
  Complex coeff(std::size_t i) const {
    static constexpr Complex kI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const int sign_flip = std::popcount(i & zmask) % 2 == 0 ? 0 : 2;
    return kI[(phase + static_cast<int>(ycount) + sign_flip) % 4];
  }
};

Vector pauli_apply(const Vector& amps, std::size_t n, const PauliString& p) {
  const PauliAction act(n, p);
  Vector out(amps.size());
  for (std::size_t i = 0; i < static_cast<std::size_t>(amps.size()); ++i) {
    out[idx(i ^ act.xmask)] = act.coeff(i) * amps[idx(i)];
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- Ket

Ket::Ket(std::size_t n, Vector amps) : n_(n), amps_(std::move(amps)) {
  if (static_cast<std::size_t>(amps_.size()) != dim_of(n)) {
    throw std::invalid_argument("amplitude count does not match qubit count");
  }
}

Ket Ket::zero(std::size_t n) { return Ket(n, Vector::Zero(idx(dim_of(n)))); }

Ket Ket::basis(std::size_t n, std::size_t index) {
  Ket k = zero(n);
  if (index >= k.dim()) throw std::out_of_range("basis index out of range");
  k.amps_[idx(index)] = 1.0;
  return k;
}

Ket& Ket::operator+=(const Ket& other) {
  if (other.n_ != n_) throw std::invalid_argument("ket size mismatch");
  amps_ += other.amps_;
  return *this;
}

Ket operator*(Complex c, Ket k) {
  k.amps_ *= c;
  return k;
}

// ---------------------------------------------------------------- StateVector

StateVector::StateVector(std::size_t n) : n_(n), amps_(Vector::Zero(idx(dim_of(n)))) {
  amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t n, Vector amps) : n_(n), amps_(std::move(amps)) {
  if (static_cast<std::size_t>(amps_.size()) != dim_of(n)) {
    throw std::invalid_argument("amplitude count does not match qubit count");
  }
  if (std::abs(amps_.squaredNorm() - 1.0) > kAlgebraTol) {
    throw std::invalid_argument("state vector is not normalized");
  }
}

StateVector::StateVector(std::size_t n, Vector amps, Unchecked)
    : n_(n), amps_(std::move(amps)) {}

StateVector StateVector::normalized(const Ket& k) {
  const double nrm = k.norm();
  if (nrm < 1e-300) throw std::invalid_argument("cannot normalize the zero vector");
  return StateVector(k.qubits(), k.amps() / nrm, Unchecked{});
}

StateVector StateVector::normalized(std::size_t n, Vector amps) {
  return normalized(Ket(n, std::move(amps)));
}

StateVector StateVector::basis(std::size_t n, std::size_t index) {
  return normalized(Ket::basis(n, index));
}

StateVector StateVector::product(std::string_view kets) {
  const double r = std::numbers::sqrt2 / 2.0;
  Vector acc = Vector::Ones(1);
  for (char c : kets) {
    Vector single(2);
    switch (c) {
      case '0': single << 1.0, 0.0; break;
      case '1': single << 0.0, 1.0; break;
      case '+': single << r, r; break;
      case '-': single << r, -r; break;
      default: throw std::invalid_argument(std::string("unknown ket symbol '") + c + "'");
    }
    Vector next(acc.size() * 2);
    for (Eigen::Index i = 0; i < acc.size(); ++i) {
      next[2 * i] = acc[i] * single[0];
      next[2 * i + 1] = acc[i] * single[1];
    }
    acc = std::move(next);
  }
  return normalized(kets.size(), std::move(acc));
}

Complex StateVector::inner(const StateVector& other) const {
  if (other.n_ != n_) throw std::invalid_argument("state size mismatch");
  return amps_.dot(other.amps_);
}

// ---------------------------------------------------------------- DensityMatrix

DensityMatrix::DensityMatrix(std::size_t n, Matrix entries) : n_(n), entries_(std::move(entries)) {
  const auto d = idx(dim_of(n));
  if (entries_.rows() != d || entries_.cols() != d) {
    throw std::invalid_argument("density matrix dimension mismatch");
  }
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > kAlgebraTol) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(entries_.trace() - Complex(1.0)) > kAlgebraTol) {
    throw std::invalid_argument("density matrix trace is not 1");
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& s) {
  return DensityMatrix(s.qubits(), s.amps() * s.amps().adjoint());
}

double DensityMatrix::purity() const { return (entries_ * entries_).trace().real(); }

double DensityMatrix::expectation(const PauliString& p) const {
  if (!p.is_hermitian()) throw std::domain_error("observable " + p.str() + " is not Hermitian");
  const PauliAction act(n_, p);
  // P|j> = coeff(j)|j ^ x>, so Tr(P rho) = sum_j coeff(j) rho(j, j ^ x).
  Complex acc = 0.0;
  for (std::size_t j = 0; j < dim_of(n_); ++j) {
    acc += act.coeff(j) * entries_(idx(j), idx(j ^ act.xmask));
  }
  return acc.real();
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------- gates

namespace gates {

Matrix identity(std::size_t qubits) {
  const auto d = idx(dim_of(qubits));
  return Matrix::Identity(d, d);
}

Matrix hadamard() {
  const double r = std::numbers::sqrt2 / 2.0;
  Matrix h(2, 2);
  h << r, r, r, -r;
  return h;
}

Matrix pauli(Pauli p) {
  Matrix m = Matrix::Zero(2, 2);
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

Matrix s() {
  Matrix m(2, 2);
  m << 1, 0, 0, Complex(0, 1);
  return m;
}

Matrix cz() {
  Matrix m = Matrix::Identity(4, 4);
  m(3, 3) = -1.0;
  return m;
}

Matrix cnot() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return m;
}

Matrix dense(const PauliString& p) {
  Matrix acc = Matrix::Identity(1, 1);
  for (Pauli letter : p.letters()) {
    const Matrix single = pauli(letter);
    Matrix next(acc.rows() * 2, acc.cols() * 2);
    for (Eigen::Index r = 0; r < 2; ++r) {
      for (Eigen::Index c = 0; c < 2; ++c) {
        next.block(r * acc.rows(), c * acc.cols(), acc.rows(), acc.cols()) = acc * single(r, c);
      }
    }
    acc = std::move(next);
  }
  static constexpr Complex kI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return acc * kI[p.phase()];
}

}  // namespace gates

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

StateVector apply_gate(const StateVector& state, const Matrix& gate,
                       std::span<const std::size_t> targets) {
  if (!is_unitary(gate)) throw std::invalid_argument("gate is not unitary");
  Vector amps = state.amps();
  apply_in_place(amps, state.qubits(), gate, targets);
  return StateVector(state.qubits(), std::move(amps), StateVector::Unchecked{});
}

StateVector apply_gate(const StateVector& state, const Matrix& gate,
                       std::initializer_list<std::size_t> targets) {
  return apply_gate(state, gate, std::span<const std::size_t>(targets.begin(), targets.size()));
}

Ket apply_matrix(const Ket& k, const Matrix& m, std::span<const std::size_t> targets) {
  Vector amps = k.amps();
  apply_in_place(amps, k.qubits(), m, targets);
  return Ket(k.qubits(), std::move(amps));
}

StateVector apply_pauli(const StateVector& state, const PauliString& p) {
  return StateVector(state.qubits(), pauli_apply(state.amps(), state.qubits(), p),
                     StateVector::Unchecked{});
}

Ket apply_pauli(const Ket& k, const PauliString& p) {
  return Ket(k.qubits(), pauli_apply(k.amps(), k.qubits(), p));
}

double expectation(const StateVector& state, const PauliString& p) {
  if (!p.is_hermitian()) throw std::domain_error("observable " + p.str() + " is not Hermitian");
  const PauliAction act(state.qubits(), p);
  const Vector& a = state.amps();
  Complex acc = 0.0;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    acc += std::conj(a[idx(i ^ act.xmask)]) * act.coeff(i) * a[idx(i)];
  }
  return acc.real();
}

// ---------------------------------------------------------------- measurement

MeasurementBasis::MeasurementBasis(std::string name, std::size_t qubits,
                                   std::vector<BasisElement> elements)
    : name_(std::move(name)), k_(qubits), elements_(std::move(elements)) {
  const auto d = idx(dim_of(k_));
  Matrix resolution = Matrix::Zero(d, d);
  for (const auto& e : elements_) {
    if (e.vec.size() != d) throw std::invalid_argument("basis element has wrong dimension");
    resolution += e.vec * e.vec.adjoint();
  }
  if ((resolution - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > kExpectationTol) {
    throw std::invalid_argument("measurement '" + name_ + "' does not resolve the identity");
  }
}

MeasurementBasis MeasurementBasis::computational(std::size_t qubits) {
  std::vector<BasisElement> els;
  for (std::size_t i = 0; i < dim_of(qubits); ++i) {
    els.push_back({bitstring(qubits, i), Ket::basis(qubits, i).amps()});
  }
  return MeasurementBasis("Z^" + std::to_string(qubits), qubits, std::move(els));
}

MeasurementBasis MeasurementBasis::pauli(Pauli p) {
  const double r = std::numbers::sqrt2 / 2.0;
  Vector a(2), b(2);
  std::string la, lb;
  switch (p) {
    case Pauli::I:
      return MeasurementBasis("I", 1, {{"", Ket::basis(1, 0).amps()}, {"", Ket::basis(1, 1).amps()}});
    case Pauli::Z: a << 1, 0; b << 0, 1; la = "0"; lb = "1"; break;
    case Pauli::X: a << r, r; b << r, -r; la = "+"; lb = "-"; break;
    case Pauli::Y:
      a << r, Complex(0, r);
      b << r, Complex(0, -r);
      la = "+i";
      lb = "-i";
      break;
  }
  return MeasurementBasis(std::string(1, to_char(p)), 1, {{la, a}, {lb, b}});
}

MeasurementBasis MeasurementBasis::bell() {
  const double r = std::numbers::sqrt2 / 2.0;
  Vector phip(4), phim(4), psip(4), psim(4);
  phip << r, 0, 0, r;
  phim << r, 0, 0, -r;
  psip << 0, r, r, 0;
  psim << 0, r, -r, 0;
  return MeasurementBasis("Bell", 2,
                          {{"Phi+", phip}, {"Phi-", phim}, {"Psi+", psip}, {"Psi-", psim}});
}

MeasurementBasis MeasurementBasis::tensor(std::span<const MeasurementBasis> parts) {
  std::vector<BasisElement> acc{{"", Vector::Ones(1)}};
  std::size_t k = 0;
  std::string name;
  for (const auto& part : parts) {
    std::vector<BasisElement> next;
    for (const auto& a : acc) {
      for (const auto& b : part.elements()) {
        Vector v(a.vec.size() * b.vec.size());
        for (Eigen::Index i = 0; i < a.vec.size(); ++i) {
          v.segment(i * b.vec.size(), b.vec.size()) = a.vec[i] * b.vec;
        }
        next.push_back({a.label + b.label, std::move(v)});
      }
    }
    acc = std::move(next);
    k += part.qubits();
    name += part.name();
  }
  return MeasurementBasis(name, k, std::move(acc));
}

Ket project(const Ket& state, const Vector& v, std::span<const std::size_t> targets) {
  const std::size_t n = state.qubits();
  check_targets(n, targets);
  const std::size_t k = targets.size();
  if (static_cast<std::size_t>(v.size()) != (std::size_t{1} << k)) {
    throw std::invalid_argument("projector dimension does not match target count");
  }
  std::vector<std::size_t> rest;
  for (std::size_t q = 0; q < n; ++q) {
    if (std::find(targets.begin(), targets.end(), q) == targets.end()) rest.push_back(q);
  }
  const auto toff = local_offsets(n, targets);
  const auto roff = local_offsets(n, rest);
  Ket out = Ket::zero(rest.size());
  for (std::size_t r = 0; r < roff.size(); ++r) {
    Complex acc = 0.0;
    for (std::size_t l = 0; l < toff.size(); ++l) {
      acc += std::conj(v[idx(l)]) * state.amps()[idx(roff[r] | toff[l])];
    }
    out.amps()[idx(r)] = acc;
  }
  return out;
}

std::vector<MeasurementBranch> measure_branches(const StateVector& state,
                                                const MeasurementBasis& basis,
                                                std::span<const std::size_t> targets) {
  if (basis.qubits() != targets.size()) {
    throw std::invalid_argument("basis width does not match target count");
  }
  std::vector<MeasurementBranch> out;
  const Ket k = state.ket();
  for (const auto& e : basis.elements()) {
    Ket projected = project(k, e.vec, targets);
    const double p = projected.amps().squaredNorm();
    if (p <= 1e-12) continue;
    out.push_back({e.label, p, StateVector::normalized(projected)});
  }
  return out;
}

DensityMatrix partial_trace(const StateVector& state, std::span<const std::size_t> keep) {
  const std::size_t n = state.qubits();
  if (keep.empty()) throw std::invalid_argument("partial trace must keep at least one qubit");
  check_targets(n, keep);
  std::vector<std::size_t> traced;
  for (std::size_t q = 0; q < n; ++q) {
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) traced.push_back(q);
  }
  const auto koff = local_offsets(n, keep);
  const auto toff = local_offsets(n, traced);
  const auto d = idx(koff.size());
  Matrix rho = Matrix::Zero(d, d);
  for (std::size_t e = 0; e < toff.size(); ++e) {
    Vector column(d);
    for (std::size_t a = 0; a < koff.size(); ++a) column[idx(a)] = state[koff[a] | toff[e]];
    rho += column * column.adjoint();
  }
  // Symmetrize away rounding so the Hermitian check is exact.
  Matrix herm = 0.5 * (rho + rho.adjoint());
  herm /= herm.trace().real();
  return DensityMatrix(keep.size(), std::move(herm));
}

bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol) {
  if (a.qubits() != b.qubits()) throw std::invalid_argument("state size mismatch");
  return std::abs(a.inner(b)) >= 1.0 - tol;
}

double fidelity(const StateVector& a, const StateVector& b) { return std::norm(a.inner(b)); }

std::string bitstring(std::size_t n, std::size_t index) {
  std::string s(n, '0');
  for (std::size_t q = 0; q < n; ++q) {
    if (index & qubit_bit(n, q)) s[q] = '1';
  }
  return s;
}

}  // namespace dqis

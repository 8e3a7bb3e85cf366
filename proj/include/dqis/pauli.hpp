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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace dqis {

/// Single-site Pauli letter. The two low bits are the symplectic (x, z) pair.
enum class Pauli : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

char to_char(Pauli p);
Pauli pauli_from_char(char c);

/// Signed multi-qubit Pauli word i^phase * P_0 (x) P_1 (x) ... (x) P_{n-1}.
///
/// Site 0 is the leftmost letter, which is qubit 1 in ket notation and the
/// most significant bit of a state-vector index. The phase is kept as an
/// exponent of i modulo 4 so the algebra is exact.
class PauliString {
 public:
  PauliString() = default;
  /// Identity on n sites.
  explicit PauliString(std::size_t n);
  explicit PauliString(std::vector<Pauli> letters, int phase = 0);

  /// Parses `[+|-|+i|-i|i]LETTERS`, e.g. "-IIXZX" or "+iXY".
  static PauliString parse(std::string_view text);
  /// Identity everywhere except `letter` at `site`.
  static PauliString single(std::size_t n, std::size_t site, Pauli letter);

  std::size_t size() const { return letters_.size(); }
  int phase() const { return phase_; }
  Pauli operator[](std::size_t site) const { return letters_[site]; }
  const std::vector<Pauli>& letters() const { return letters_; }

  bool is_hermitian() const { return phase_ % 2 == 0; }
  /// +1 or -1; throws std::domain_error for phases +-i.
  int sign() const;
  /// True when every letter is I (phase ignored).
  bool is_identity_letters() const;
  std::size_t weight() const;

  /// Letters with phase reset to +1.
  PauliString stripped() const;
  PauliString with_phase(int phase) const;
  PauliString operator-() const;

  std::string str() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::vector<Pauli> letters_;
  int phase_ = 0;
};

/// Exact operator product a*b including the accumulated phase.
PauliString multiply(const PauliString& a, const PauliString& b);
PauliString operator*(const PauliString& a, const PauliString& b);
/// Product of the listed factors, left to right. Empty list needs `n`.
PauliString product(std::span<const PauliString> factors, std::size_t n);

/// True iff ab = ba (symplectic inner product parity is even).
bool commutes(const PauliString& a, const PauliString& b);
bool all_commute(std::span<const PauliString> set);

/// GF(2) view of a phase-stripped Pauli word.
struct SymplecticForm {
  boost::dynamic_bitset<> x;
  boost::dynamic_bitset<> z;

  static SymplecticForm of(const PauliString& p);
  PauliString to_pauli() const;
  /// x bits followed by z bits, 2n wide.
  boost::dynamic_bitset<> row() const;

  friend bool operator==(const SymplecticForm&, const SymplecticForm&) = default;
};

/// Rank over GF(2) of the symplectic rows (phases ignored).
std::size_t rank_gf2(std::span<const PauliString> set);

/// h written as sign * prod_{i in indices} gens[i] (ascending index order).
struct GeneratorExpression {
  std::vector<std::size_t> indices;
  int sign = 1;
};

/// Writes h as a product of gens. Among all solutions the one with the fewest
/// factors is returned, ties broken by the lexicographically smallest index
/// list. Returns nullopt if h is outside the span.
std::optional<GeneratorExpression> express_in_generators(
    const PauliString& h, std::span<const PauliString> gens);

/// Every index subset whose product equals h up to sign, smallest first.
/// Throws std::length_error when more than 2^20 solutions exist.
std::vector<GeneratorExpression> all_expressions(
    const PauliString& h, std::span<const PauliString> gens);

}  // namespace dqis

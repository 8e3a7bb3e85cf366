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
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dqis/graph.hpp"
#include "dqis/pauli.hpp"
#include "dqis/state.hpp"

namespace dqis {

using Recipe = std::vector<std::vector<std::size_t>>;

/// Sum of m Hermitian Pauli words, each sign folded into the word.
class BellOperator {
 public:
  explicit BellOperator(std::vector<PauliString> terms);
  /// Terms plus the generator subsets they were built from. The recipe must
  /// reproduce each term up to sign; the sign is recorded per term.
  BellOperator(std::vector<PauliString> terms, std::vector<PauliString> generators, Recipe recipe);

  std::size_t size() const { return terms_.size(); }
  std::size_t qubits() const { return terms_.front().size(); }
  const std::vector<PauliString>& terms() const { return terms_; }
  bool has_recipe() const { return recipe_.has_value(); }
  const Recipe& recipe() const;
  const std::vector<PauliString>& generators() const { return generators_; }
  /// +1 when term j equals the product of its recipe generators, -1 when it
  /// equals minus that product.
  int recipe_sign(std::size_t j) const { return recipe_signs_.at(j); }

 private:
  std::vector<PauliString> terms_;
  std::vector<PauliString> generators_;
  std::optional<Recipe> recipe_;
  std::vector<int> recipe_signs_;
};

/// Terms are exact products of the listed generators (0-based indices).
BellOperator build_bell(std::span<const PauliString> gens, const Recipe& recipe);

/// A non-contextual value for every (site, letter) that occurs in some term.
struct LocalVariable {
  std::size_t site;
  Pauli letter;
  friend auto operator<=>(const LocalVariable&, const LocalVariable&) = default;
};

struct LRBound {
  int q = 0;      // most terms simultaneously +1
  int m = 0;
  int bound = 0;  // 2q - m
  std::map<LocalVariable, int> witness;
  std::size_t variables = 0;
};

/// Exhaustive search over +-1 assignments to the letters used at each site.
/// The range is split across `workers` threads (0 = hardware concurrency).
LRBound lr_bound(const BellOperator& b, unsigned workers = 0);

/// Sum of the term values under an explicit local assignment.
int evaluate_assignment(const BellOperator& b, const std::map<LocalVariable, int>& values);

double quantum_value(const BellOperator& b, const StateVector& s);

struct DegeneracySet {
  std::vector<GraphSignature> signatures;  // sorted
  std::size_t generator_count = 0;
  std::size_t rank = 0;  // GF(2) rank of the recipe rows over the generators
  std::size_t expected_size() const { return std::size_t{1} << (generator_count - rank); }
};

/// All generator sign vectors under which every term evaluates to +1.
DegeneracySet degenerate_signatures(const BellOperator& b, std::span<const PauliString> gens);

/// True iff the ordered product of all terms is +identity while the claimed
/// values multiply to -1.
bool verify_ghz_contradiction(const BellOperator& b, std::span<const int> claimed_values);

}  // namespace dqis

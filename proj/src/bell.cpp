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

#include "dqis/bell.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <thread>

namespace dqis {

BellOperator::BellOperator(std::vector<PauliString> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw std::invalid_argument("Bell operator needs at least one term");
  for (const auto& t : terms_) {
    if (t.size() != terms_.front().size()) throw std::invalid_argument("term length mismatch");
    if (!t.is_hermitian()) throw std::invalid_argument("term " + t.str() + " is not Hermitian");
  }
}

BellOperator::BellOperator(std::vector<PauliString> terms, std::vector<PauliString> generators,
                           Recipe recipe)
    : BellOperator(std::move(terms)) {
  if (recipe.size() != terms_.size()) throw std::invalid_argument("one recipe row per term");
  for (const auto& g : generators) {
    if (g.size() != qubits()) throw std::invalid_argument("generator length mismatch");
  }
  for (std::size_t j = 0; j < terms_.size(); ++j) {
    PauliString acc(qubits());
    for (auto i : recipe[j]) {
      if (i >= generators.size()) throw std::out_of_range("recipe index out of range");
      acc = acc * generators[i];
    }
    if (acc.stripped() != terms_[j].stripped() || !acc.is_hermitian()) {
      throw std::invalid_argument("recipe row " + std::to_string(j + 1) + " gives " + acc.str() +
                                  ", not " + terms_[j].str());
    }
    recipe_signs_.push_back(acc.phase() == terms_[j].phase() ? 1 : -1);
  }
  generators_ = std::move(generators);
  recipe_ = std::move(recipe);
}

const Recipe& BellOperator::recipe() const {
  if (!recipe_) throw std::logic_error("Bell operator has no generator recipe");
  return *recipe_;
}

BellOperator build_bell(std::span<const PauliString> gens, const Recipe& recipe) {
  if (gens.empty()) throw std::invalid_argument("need at least one generator");
  if (!all_commute(gens)) throw std::invalid_argument("generators do not commute pairwise");
  std::vector<PauliString> terms;
  for (const auto& row : recipe) {
    PauliString acc(gens.front().size());
    for (auto i : row) {
      if (i >= gens.size()) throw std::out_of_range("recipe index out of range");
      acc = acc * gens[i];
    }
    terms.push_back(std::move(acc));
  }
  return BellOperator(std::move(terms), {gens.begin(), gens.end()}, recipe);
}

LRBound lr_bound(const BellOperator& b, unsigned workers) {
  // Variables: one per (site, letter) pair used by some term.
  std::vector<LocalVariable> vars;
  for (std::size_t site = 0; site < b.qubits(); ++site) {
    for (Pauli letter : {Pauli::X, Pauli::Y, Pauli::Z}) {
      const bool used = std::any_of(b.terms().begin(), b.terms().end(),
                                    [&](const PauliString& t) { return t[site] == letter; });
      if (used) vars.push_back({site, letter});
    }
  }
  if (vars.size() > 40) throw std::length_error("too many local variables for exhaustive search");

  // Term j's value under assignment `a` (bit set = value -1) is
  // sign_j * (-1)^{popcount(a & mask_j)}.
  std::vector<std::uint64_t> masks;
  std::vector<int> signs;
  for (const auto& t : b.terms()) {
    std::uint64_t mask = 0;
    for (std::size_t v = 0; v < vars.size(); ++v) {
      if (t[vars[v].site] == vars[v].letter) mask |= std::uint64_t{1} << v;
    }
    masks.push_back(mask);
    signs.push_back(t.sign());
  }

  const std::uint64_t total = std::uint64_t{1} << vars.size();
  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(1, total >> 12)));

  struct Best {
    int value = std::numeric_limits<int>::min();
    std::uint64_t assignment = 0;
  };
  std::vector<Best> best(workers);
  auto scan = [&](unsigned w) {
    const std::uint64_t lo = total * w / workers;
    const std::uint64_t hi = total * (w + 1) / workers;
    Best local;
    for (std::uint64_t a = lo; a < hi; ++a) {
      int sum = 0;
      for (std::size_t j = 0; j < masks.size(); ++j) {
        sum += (std::popcount(a & masks[j]) & 1) ? -signs[j] : signs[j];
      }
      if (sum > local.value) local = {sum, a};
    }
    best[w] = local;
  };
  if (workers == 1) {
    scan(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(scan, w);
  }
  // Earliest worker wins ties, so the witness is the smallest maximizing index.
  Best overall;
  for (const auto& r : best) {
    if (r.value > overall.value) overall = r;
  }

  LRBound out;
  out.m = static_cast<int>(b.size());
  out.bound = overall.value;
  out.q = (overall.value + out.m) / 2;
  out.variables = vars.size();
  for (std::size_t v = 0; v < vars.size(); ++v) {
    out.witness[vars[v]] = ((overall.assignment >> v) & 1U) ? -1 : 1;
  }
  return out;
}

int evaluate_assignment(const BellOperator& b, const std::map<LocalVariable, int>& values) {
  int total = 0;
  for (const auto& t : b.terms()) {
    int v = t.sign();
    for (std::size_t site = 0; site < t.size(); ++site) {
      if (t[site] == Pauli::I) continue;
      v *= values.at({site, t[site]});
    }
    total += v;
  }
  return total;
}

double quantum_value(const BellOperator& b, const StateVector& s) {
  if (s.qubits() != b.qubits()) throw std::invalid_argument("state does not match operator size");
  double total = 0.0;
  for (const auto& t : b.terms()) total += expectation(s, t);
  return total;
}

DegeneracySet degenerate_signatures(const BellOperator& b, std::span<const PauliString> gens) {
  if (!b.has_recipe()) throw std::invalid_argument("degeneracy needs a generator recipe");
  const Recipe& recipe = b.recipe();
  if (b.generators().size() > gens.size()) {
    throw std::invalid_argument("recipe refers to more generators than supplied");
  }
  for (std::size_t i = 0; i < b.generators().size(); ++i) {
    if (b.generators()[i] != gens[i]) {
      throw std::invalid_argument("supplied generators must extend the recipe's generators");
    }
  }
  const std::size_t k = gens.size();
  if (k > 30) throw std::length_error("too many generators");

  // Linear system over GF(2): for each term j, sum_{i in R_j} x_i = [sign_j == -1].
  // Eliminate with an augmented column.
  struct Row {
    std::uint64_t coeffs;
    int rhs;
  };
  std::vector<Row> rows;
  for (std::size_t j = 0; j < recipe.size(); ++j) {
    std::uint64_t c = 0;
    for (auto i : recipe[j]) c ^= std::uint64_t{1} << i;
    rows.push_back({c, b.recipe_sign(j) == -1 ? 1 : 0});
  }
  std::vector<Row> basis;
  std::vector<int> pivots;
  bool consistent = true;
  for (auto r : rows) {
    for (std::size_t p = 0; p < basis.size(); ++p) {
      if ((r.coeffs >> pivots[p]) & 1U) {
        r.coeffs ^= basis[p].coeffs;
        r.rhs ^= basis[p].rhs;
      }
    }
    if (r.coeffs == 0) {
      if (r.rhs) consistent = false;
      continue;
    }
    const int pivot = std::countr_zero(r.coeffs);
    // Keep the basis fully reduced on its pivot columns.
    for (auto& other : basis) {
      if ((other.coeffs >> pivot) & 1U) {
        other.coeffs ^= r.coeffs;
        other.rhs ^= r.rhs;
      }
    }
    basis.push_back(r);
    pivots.push_back(pivot);
  }

  DegeneracySet out;
  out.generator_count = k;
  out.rank = basis.size();
  if (!consistent) return out;

  std::vector<std::size_t> free_vars;
  for (std::size_t i = 0; i < k; ++i) {
    if (std::find(pivots.begin(), pivots.end(), static_cast<int>(i)) == pivots.end()) {
      free_vars.push_back(i);
    }
  }
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_vars.size()); ++mask) {
    std::uint64_t x = 0;
    for (std::size_t f = 0; f < free_vars.size(); ++f) {
      if ((mask >> f) & 1U) x |= std::uint64_t{1} << free_vars[f];
    }
    for (std::size_t p = 0; p < basis.size(); ++p) {
      const int parity = std::popcount(basis[p].coeffs & x & ~(std::uint64_t{1} << pivots[p])) & 1;
      if (parity ^ basis[p].rhs) x |= std::uint64_t{1} << pivots[p];
    }
    std::vector<std::uint8_t> bits(k);
    for (std::size_t i = 0; i < k; ++i) bits[i] = (x >> i) & 1U;
    out.signatures.emplace_back(std::move(bits));
  }
  std::sort(out.signatures.begin(), out.signatures.end());
  return out;
}

bool verify_ghz_contradiction(const BellOperator& b, std::span<const int> claimed_values) {
  if (claimed_values.size() != b.size()) throw std::invalid_argument("one claimed value per term");
  int value_product = 1;
  for (int v : claimed_values) {
    if (v != 1 && v != -1) throw std::invalid_argument("claimed values must be +1 or -1");
    value_product *= v;
  }
  const PauliString p = product(b.terms(), b.qubits());
  return p.is_identity_letters() && p.phase() == 0 && value_product == -1;
}

}  // namespace dqis

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

#include "dqis/pauli.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace dqis {

namespace {

void require_same_size(const PauliString& a, const PauliString& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("Pauli length mismatch: " + a.str() + " vs " +
                                b.str());
  }
}

int mod4(int v) { return ((v % 4) + 4) % 4; }

// Single-site product a*b = i^phase * letter.
std::pair<Pauli, int> site_product(Pauli a, Pauli b) {
  if (a == Pauli::I) return {b, 0};
  if (b == Pauli::I) return {a, 0};
  if (a == b) return {Pauli::I, 0};
  const auto letter = static_cast<Pauli>(static_cast<std::uint8_t>(a) ^
                                         static_cast<std::uint8_t>(b));
  // XY = iZ, YZ = iX, ZX = iY; reversed order picks up -i.
  const bool cyclic = (a == Pauli::X && b == Pauli::Y) ||
                      (a == Pauli::Y && b == Pauli::Z) ||
                      (a == Pauli::Z && b == Pauli::X);
  return {letter, cyclic ? 1 : 3};
}

// Row-reduced basis that remembers which original rows each basis row mixes.
struct Gf2Eliminator {
  struct Entry {
    boost::dynamic_bitset<> row;
    boost::dynamic_bitset<> combo;
    std::size_t pivot;
  };
  std::vector<Entry> basis;
  std::vector<boost::dynamic_bitset<>> dependencies;

  void reduce(boost::dynamic_bitset<>& row, boost::dynamic_bitset<>& combo) const {
    for (const auto& e : basis) {
      if (row.test(e.pivot)) {
        row ^= e.row;
        combo ^= e.combo;
      }
    }
  }

  void insert(boost::dynamic_bitset<> row, boost::dynamic_bitset<> combo) {
    reduce(row, combo);
    if (row.none()) {
      dependencies.push_back(std::move(combo));
      return;
    }
    const std::size_t pivot = row.find_first();
    basis.push_back({std::move(row), std::move(combo), pivot});
  }
};

}  // namespace

char to_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default:
      throw std::invalid_argument(std::string("not a Pauli letter: '") + c + "'");
  }
}

PauliString::PauliString(std::size_t n) : letters_(n, Pauli::I) {}

PauliString::PauliString(std::vector<Pauli> letters, int phase)
    : letters_(std::move(letters)), phase_(mod4(phase)) {}

PauliString PauliString::parse(std::string_view text) {
  int phase = 0;
  if (text.starts_with("+i")) {
    phase = 1;
    text.remove_prefix(2);
  } else if (text.starts_with("-i")) {
    phase = 3;
    text.remove_prefix(2);
  } else if (text.starts_with("i")) {
    phase = 1;
    text.remove_prefix(1);
  } else if (text.starts_with("+")) {
    text.remove_prefix(1);
  } else if (text.starts_with("-")) {
    phase = 2;
    text.remove_prefix(1);
  }
  if (text.empty()) throw std::invalid_argument("empty Pauli word");
  std::vector<Pauli> letters;
  letters.reserve(text.size());
  for (char c : text) letters.push_back(pauli_from_char(c));
  return PauliString(std::move(letters), phase);
}

PauliString PauliString::single(std::size_t n, std::size_t site, Pauli letter) {
  if (site >= n) throw std::out_of_range("Pauli site out of range");
  PauliString p(n);
  p.letters_[site] = letter;
  return p;
}

int PauliString::sign() const {
  if (!is_hermitian()) {
    throw std::domain_error("Pauli word " + str() + " is not Hermitian");
  }
  return phase_ == 0 ? 1 : -1;
}

bool PauliString::is_identity_letters() const {
  return std::all_of(letters_.begin(), letters_.end(),
                     [](Pauli p) { return p == Pauli::I; });
}

std::size_t PauliString::weight() const {
  return static_cast<std::size_t>(std::count_if(
      letters_.begin(), letters_.end(), [](Pauli p) { return p != Pauli::I; }));
}

PauliString PauliString::stripped() const { return PauliString(letters_, 0); }

PauliString PauliString::with_phase(int phase) const {
  return PauliString(letters_, phase);
}

PauliString PauliString::operator-() const {
  return PauliString(letters_, phase_ + 2);
}

std::string PauliString::str() const {
  static constexpr const char* kPrefix[] = {"", "+i", "-", "-i"};
  std::string out = kPrefix[phase_];
  for (Pauli p : letters_) out.push_back(to_char(p));
  return out;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  require_same_size(a, b);
  std::vector<Pauli> letters(a.size());
  int phase = a.phase() + b.phase();
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto [letter, ph] = site_product(a[i], b[i]);
    letters[i] = letter;
    phase += ph;
  }
  return PauliString(std::move(letters), phase);
}

PauliString operator*(const PauliString& a, const PauliString& b) {
  return multiply(a, b);
}

PauliString product(std::span<const PauliString> factors, std::size_t n) {
  PauliString acc(n);
  for (const auto& f : factors) acc = multiply(acc, f);
  return acc;
}

bool commutes(const PauliString& a, const PauliString& b) {
  require_same_size(a, b);
  std::size_t anti = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != Pauli::I && b[i] != Pauli::I && a[i] != b[i]) ++anti;
  }
  return anti % 2 == 0;
}

bool all_commute(std::span<const PauliString> set) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      if (!commutes(set[i], set[j])) return false;
    }
  }
  return true;
}

SymplecticForm SymplecticForm::of(const PauliString& p) {
  SymplecticForm f{boost::dynamic_bitset<>(p.size()),
                   boost::dynamic_bitset<>(p.size())};
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto bits = static_cast<std::uint8_t>(p[i]);
    f.x[i] = (bits & 1U) != 0;
    f.z[i] = (bits & 2U) != 0;
  }
  return f;
}

PauliString SymplecticForm::to_pauli() const {
  if (x.size() != z.size()) throw std::invalid_argument("x/z width mismatch");
  std::vector<Pauli> letters(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    letters[i] = static_cast<Pauli>((x[i] ? 1U : 0U) | (z[i] ? 2U : 0U));
  }
  return PauliString(std::move(letters));
}

boost::dynamic_bitset<> SymplecticForm::row() const {
  boost::dynamic_bitset<> r(x.size() + z.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    r[i] = x[i];
    r[x.size() + i] = z[i];
  }
  return r;
}

std::size_t rank_gf2(std::span<const PauliString> set) {
  if (set.empty()) return 0;
  Gf2Eliminator elim;
  for (const auto& p : set) {
    require_same_size(p, set.front());
    elim.insert(SymplecticForm::of(p).row(), boost::dynamic_bitset<>(set.size()));
  }
  return elim.basis.size();
}

std::vector<GeneratorExpression> all_expressions(
    const PauliString& h, std::span<const PauliString> gens) {
  if (!h.is_hermitian()) {
    throw std::invalid_argument("cannot express non-Hermitian " + h.str());
  }
  for (const auto& g : gens) require_same_size(g, h);

  Gf2Eliminator elim;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    boost::dynamic_bitset<> combo(gens.size());
    combo.set(i);
    elim.insert(SymplecticForm::of(gens[i]).row(), std::move(combo));
  }
  auto target = SymplecticForm::of(h).row();
  boost::dynamic_bitset<> particular(gens.size());
  elim.reduce(target, particular);
  if (target.any()) return {};

  const std::size_t free_dims = elim.dependencies.size();
  if (free_dims > 20) throw std::length_error("too many generator expressions");

  std::vector<boost::dynamic_bitset<>> solutions;
  solutions.reserve(std::size_t{1} << free_dims);
  for (std::size_t mask = 0; mask < (std::size_t{1} << free_dims); ++mask) {
    auto s = particular;
    for (std::size_t k = 0; k < free_dims; ++k) {
      if ((mask >> k) & 1U) s ^= elim.dependencies[k];
    }
    solutions.push_back(std::move(s));
  }

  std::vector<GeneratorExpression> out;
  out.reserve(solutions.size());
  for (const auto& s : solutions) {
    GeneratorExpression e;
    PauliString acc(h.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (s.test(i)) {
        e.indices.push_back(i);
        acc = multiply(acc, gens[i]);
      }
    }
    const int diff = ((h.phase() - acc.phase()) % 4 + 4) % 4;
    if (diff % 2 != 0) {
      throw std::domain_error("generator product is not Hermitian for " + h.str());
    }
    e.sign = diff == 0 ? 1 : -1;
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.indices.size() != b.indices.size()) {
      return a.indices.size() < b.indices.size();
    }
    return a.indices < b.indices;
  });
  return out;
}

std::optional<GeneratorExpression> express_in_generators(
    const PauliString& h, std::span<const PauliString> gens) {
  auto all = all_expressions(h, gens);
  if (all.empty()) return std::nullopt;
  return all.front();
}

}  // namespace dqis

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

#include "dqis/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace dqis {

Graph::Graph(std::size_t n, std::span<const Edge> edges) : n_(n) {
  if (n == 0) throw std::invalid_argument("graph needs at least one vertex");
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) throw std::out_of_range("edge endpoint out of range");
    if (a == b) throw std::invalid_argument("self-loops are not allowed");
    edges_.insert({std::min(a, b), std::max(a, b)});
  }
}

Graph::Graph(std::size_t n, std::initializer_list<Edge> edges)
    : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

std::vector<std::size_t> Graph::neighbors(std::size_t v) const {
  if (v >= n_) throw std::out_of_range("vertex out of range");
  std::vector<std::size_t> out;
  for (auto [a, b] : edges_) {
    if (a == v) out.push_back(b);
    if (b == v) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

GraphSignature::GraphSignature(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw std::invalid_argument("signature bits must be 0 or 1");
  }
}

GraphSignature GraphSignature::parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  for (char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument("signature must be a 0/1 string");
    bits.push_back(c == '1' ? 1 : 0);
  }
  return GraphSignature(std::move(bits));
}

GraphSignature GraphSignature::from_signs(std::span<const int> signs) {
  std::vector<std::uint8_t> bits;
  for (int s : signs) {
    if (s != 1 && s != -1) throw std::invalid_argument("signs must be +1 or -1");
    bits.push_back(s == -1 ? 1 : 0);
  }
  return GraphSignature(std::move(bits));
}

std::vector<int> GraphSignature::signs() const {
  std::vector<int> out;
  for (auto b : bits_) out.push_back(b ? -1 : 1);
  return out;
}

std::string GraphSignature::str() const {
  std::string s;
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

std::vector<PauliString> generators(const Graph& g) {
  std::vector<PauliString> out;
  for (std::size_t j = 0; j < g.size(); ++j) {
    std::vector<Pauli> letters(g.size(), Pauli::I);
    letters[j] = Pauli::X;
    for (auto k : g.neighbors(j)) letters[k] = Pauli::Z;
    out.emplace_back(std::move(letters));
  }
  return out;
}

StateVector canonical_state(const Graph& g) {
  if (g.size() > kMaxQubits) throw std::length_error("graph exceeds the engine limit");
  StateVector s = StateVector::product(std::string(g.size(), '+'));
  const Matrix cz = gates::cz();
  for (auto [a, b] : g.edges()) s = apply_gate(s, cz, {a, b});
  return s;
}

StateVector basis_state(const Graph& g, const GraphSignature& x) {
  if (x.size() != g.size()) throw std::invalid_argument("signature length does not match graph");
  std::vector<Pauli> letters(g.size(), Pauli::I);
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (x.bit(j)) letters[j] = Pauli::Z;
  }
  return apply_pauli(canonical_state(g), PauliString(std::move(letters)));
}

Graph linear_cluster(std::size_t n) {
  if (n < 1) throw std::invalid_argument("cluster needs at least one qubit");
  std::vector<Graph::Edge> edges;
  for (std::size_t j = 0; j + 1 < n; ++j) edges.emplace_back(j, j + 1);
  return Graph(n, edges);
}

std::vector<StateVector> stabilizer_eigenspace(std::span<const PauliString> gens,
                                               std::span<const int> signs) {
  if (gens.empty()) throw std::invalid_argument("need at least one generator");
  if (gens.size() != signs.size()) throw std::invalid_argument("one sign per generator");
  if (!all_commute(gens)) throw std::invalid_argument("generators must commute");
  const std::size_t n = gens.front().size();
  const std::size_t rank = rank_gf2(gens);
  const std::size_t target_dim = std::size_t{1} << (n - rank);

  std::vector<StateVector> basis;
  for (std::size_t i = 0; i < (std::size_t{1} << n) && basis.size() < target_dim; ++i) {
    Ket v = Ket::basis(n, i);
    for (std::size_t j = 0; j < gens.size(); ++j) {
      // (1 + s g)/2
      v = 0.5 * (v + Complex(signs[j]) * apply_pauli(v, gens[j]));
    }
    for (const auto& b : basis) {
      v += -b.amps().dot(v.amps()) * b.ket();
    }
    if (v.norm() > 1e-8) basis.push_back(StateVector::normalized(v));
  }
  return basis;
}

}  // namespace dqis

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
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dqis/pauli.hpp"
#include "dqis/state.hpp"

namespace dqis {

/// Simple undirected graph on vertices 0..n-1.
class Graph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  explicit Graph(std::size_t n, std::span<const Edge> edges = {});
  Graph(std::size_t n, std::initializer_list<Edge> edges);

  std::size_t size() const { return n_; }
  /// Edges with first < second.
  const std::set<Edge>& edges() const { return edges_; }
  std::vector<std::size_t> neighbors(std::size_t v) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t n_;
  std::set<Edge> edges_;
};

/// Bit string x labelling the graph basis state prod_j Z_j^{x_j} |G>.
/// Generator g_j has eigenvalue (-1)^{x_j} on that state.
class GraphSignature {
 public:
  GraphSignature() = default;
  explicit GraphSignature(std::vector<std::uint8_t> bits);
  /// "0101"-style text, qubit 0 first.
  static GraphSignature parse(std::string_view text);
  /// From a sign vector of +1/-1 entries.
  static GraphSignature from_signs(std::span<const int> signs);
  static GraphSignature zeros(std::size_t n) { return GraphSignature(std::vector<std::uint8_t>(n, 0)); }

  std::size_t size() const { return bits_.size(); }
  std::uint8_t bit(std::size_t j) const { return bits_[j]; }
  int sign(std::size_t j) const { return bits_[j] ? -1 : 1; }
  std::vector<int> signs() const;
  std::string str() const;

  friend auto operator<=>(const GraphSignature&, const GraphSignature&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// g_j = X_j prod_{k in N(j)} Z_k.
std::vector<PauliString> generators(const Graph& g);

/// prod_{(j,k) in E} CZ_{jk} |+>^n.
StateVector canonical_state(const Graph& g);

StateVector basis_state(const Graph& g, const GraphSignature& x);

/// Path 0-1-...-(n-1).
Graph linear_cluster(std::size_t n);

/// Orthonormal basis of the joint eigenspace {g_i = signs[i]} of a commuting
/// Pauli set, built by projecting computational basis vectors.
std::vector<StateVector> stabilizer_eigenspace(std::span<const PauliString> gens,
                                               std::span<const int> signs);

}  // namespace dqis

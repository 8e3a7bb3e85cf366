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

// Independent reference computations for the unit tests. Nothing here calls
// into the library's algebra or state engine.

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dqis/pauli.hpp"

namespace oracle {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

inline Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

inline Mat letter(char c) {
  Mat m(2, 2);
  switch (c) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, C(0, -1), C(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

/// Dense matrix of a word like "-iXYZ", built only from 2x2 kron products.
inline Mat dense(const std::string& text) {
  std::size_t pos = 0;
  C phase = 1.0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') phase = -1.0;
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    phase *= C(0, 1);
    ++pos;
  }
  Mat m = Mat::Identity(1, 1);
  for (; pos < text.size(); ++pos) m = kron(m, letter(text[pos]));
  return phase * m;
}

inline Mat dense(const dqis::PauliString& p) {
  std::string letters;
  for (auto l : p.letters()) letters += dqis::to_char(l);
  static const C units[] = {1.0, C(0, 1), -1.0, C(0, -1)};
  return units[p.phase()] * dense(letters);
}

/// Product ket from a string over {0, 1, +, -}.
inline Vec ket(const std::string& s) {
  const double r = std::sqrt(0.5);
  Vec out = Vec::Ones(1);
  for (char c : s) {
    Vec v(2);
    if (c == '0') v << 1, 0;
    else if (c == '1') v << 0, 1;
    else if (c == '+') v << r, r;
    else v << r, -r;
    out = kron(out, v);
  }
  return out;
}

inline Vec random_state(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> g;
  Vec v(dim);
  for (auto& a : v) a = C(g(rng), g(rng));
  return v / v.norm();
}

inline dqis::PauliString random_word(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(0, 3);
  std::vector<dqis::Pauli> letters;
  for (std::size_t i = 0; i < n; ++i) letters.push_back(static_cast<dqis::Pauli>(d(rng)));
  return dqis::PauliString(letters, d(rng));
}

/// GF(2) rank of bit rows by plain elimination.
inline std::size_t gf2_rank(std::vector<std::uint64_t> rows) {
  std::size_t rank = 0;
  for (int bit = 63; bit >= 0; --bit) {
    const std::uint64_t m = std::uint64_t{1} << bit;
    auto it = std::find_if(rows.begin() + static_cast<long>(rank), rows.end(), [&](auto r) { return r & m; });
    if (it == rows.end()) continue;
    std::swap(*it, rows[rank]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != rank && (rows[i] & m)) rows[i] ^= rows[rank];
    }
    ++rank;
  }
  return rank;
}

/// x bits in the high half, z bits in the low half.
inline std::uint64_t symplectic_row(const dqis::PauliString& p) {
  std::uint64_t x = 0, z = 0;
  for (auto l : p.letters()) {
    const char c = dqis::to_char(l);
    x = (x << 1) | (c == 'X' || c == 'Y');
    z = (z << 1) | (c == 'Z' || c == 'Y');
  }
  return (x << 32) | z;
}

}  // namespace oracle

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

#include "dqis/dqis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <set>
#include <stdexcept>
#include <utility>

#include "dqis/error.hpp"
#include "dqis/fixtures.hpp"

namespace dqis {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

Pauli basis_letter(char c) {
  switch (c) {
    case 'z': return Pauli::Z;
    case 'x': return Pauli::X;
    case 'y': return Pauli::Y;
    default: throw ConfigError(std::string("unknown measurement basis letter '") + c + "'");
  }
}

// Unitary whose first columns are the given orthonormal vectors.
Matrix complete_unitary(const std::vector<Vector>& columns, std::size_t dim) {
  Matrix u = Matrix::Zero(idx(dim), idx(dim));
  std::size_t filled = 0;
  for (const auto& c : columns) u.col(idx(filled++)) = c;
  for (std::size_t e = 0; e < dim && filled < dim; ++e) {
    Vector v = Vector::Unit(idx(dim), idx(e));
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t c = 0; c < filled; ++c) v -= u.col(idx(c)).dot(v) * u.col(idx(c));
    }
    if (v.norm() > 1e-6) u.col(idx(filled++)) = v / v.norm();
  }
  return u;
}

// psi[j][k]: Rex state of input j under outcome k.
DivergenceReport assess(const std::vector<JointOutcome>& outcomes,
                        const std::vector<std::vector<Ket>>& psi, std::size_t rex_dim) {
  const std::size_t d = psi.size();
  if (d > rex_dim) throw ConfigError("recoverer holds fewer dimensions than the code space");
  DivergenceReport report;
  report.ok = true;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    OutcomeCheck check;
    check.label = outcomes[k].label;
    check.gram = Matrix(idx(d), idx(d));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        check.gram(idx(i), idx(j)) = psi[i][k].amps().dot(psi[j][k].amps());
      }
    }
    std::vector<double> norms(d);
    for (std::size_t j = 0; j < d; ++j) norms[j] = std::sqrt(check.gram(idx(j), idx(j)).real());
    const auto [lo, hi] = std::minmax_element(norms.begin(), norms.end());
    check.vanishing = *hi <= kFidelityTol;
    check.equal_norms = *hi - *lo <= kFidelityTol;
    check.orthogonal = true;
    check.parallel = d > 1 && *lo > kFidelityTol;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i + 1; j < d; ++j) {
        const double overlap = std::abs(check.gram(idx(i), idx(j)));
        if (overlap > kFidelityTol) check.orthogonal = false;
        if (overlap < norms[i] * norms[j] - kFidelityTol) check.parallel = false;
      }
    }
    if (!(check.equal_norms && check.orthogonal)) report.ok = false;
    if (!check.vanishing && check.equal_norms && check.orthogonal) {
      std::vector<Vector> cols;
      for (std::size_t j = 0; j < d; ++j) cols.push_back(psi[j][k].amps() / norms[j]);
      report.recovery.unitaries.emplace(check.label, complete_unitary(cols, rex_dim));
    }
    report.outcomes.push_back(std::move(check));
  }
  if (!report.ok) report.recovery.unitaries.clear();
  return report;
}

}  // namespace

CodeSpace::CodeSpace(std::vector<StateVector> codewords) : words_(std::move(codewords)) {
  if (words_.empty()) throw std::invalid_argument("code space needs at least one code word");
  const std::size_t n = words_.front().qubits();
  if (words_.size() > (std::size_t{1} << n)) throw std::invalid_argument("more code words than dimensions");
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i].qubits() != n) throw std::invalid_argument("code words differ in size");
    for (std::size_t j = 0; j < words_.size(); ++j) {
      const double target = i == j ? 1.0 : 0.0;
      if (std::abs(words_[i].inner(words_[j]) - target) > kExpectationTol) {
        throw std::invalid_argument("code words are not orthonormal");
      }
    }
  }
}

Secret::Secret(Vector amps) : amps_(std::move(amps)) {
  if (amps_.size() == 0) throw std::invalid_argument("secret must have at least one amplitude");
  if (std::abs(amps_.norm() - 1.0) > kAlgebraTol) throw std::invalid_argument("secret is not normalized");
}

Secret Secret::qubit(Complex alpha, Complex beta) {
  Vector v(2);
  v << alpha, beta;
  return Secret(v);
}

Secret Secret::basis(std::size_t d, std::size_t j) {
  if (j >= d) throw std::out_of_range("basis index out of range");
  return Secret(Vector::Unit(idx(d), idx(j)));
}

StateVector Secret::embedded(std::size_t r) const {
  if (r >= 63 || dim() > (std::size_t{1} << r)) throw std::invalid_argument("register too small for secret");
  Vector v = Vector::Zero(idx(std::size_t{1} << r));
  v.head(amps_.size()) = amps_;
  return StateVector(r, v);
}

StateVector encode(const Secret& s, const CodeSpace& c) {
  if (s.dim() != c.dim()) throw std::invalid_argument("secret and code space dimensions differ");
  Ket acc = Ket::zero(c.qubits());
  for (std::size_t j = 0; j < c.dim(); ++j) acc += s[j] * c[j].ket();
  return StateVector::normalized(acc);
}

EncryptionKey EncryptionKey::pauli(char letter) {
  switch (letter) {
    case 'I': return {2, 0};
    case 'Z': return {2, 1};
    case 'X': return {2, 2};
    case 'Y': return {2, 3};
    default: throw std::invalid_argument(std::string("unknown Pauli key '") + letter + "'");
  }
}

std::string EncryptionKey::str() const {
  if (d == 2 && index < 4) return std::string(1, "IZXY"[index]);
  return "X^" + std::to_string(index / d) + "Z^" + std::to_string(index % d);
}

Matrix key_operator(const EncryptionKey& k) {
  if (k.d < 2 || k.index >= k.d * k.d) throw std::invalid_argument("encryption key out of range");
  const std::size_t a = k.index / k.d, b = k.index % k.d;
  Matrix x = Matrix::Zero(idx(k.d), idx(k.d));
  Matrix z = Matrix::Zero(idx(k.d), idx(k.d));
  for (std::size_t j = 0; j < k.d; ++j) {
    x(idx((j + 1) % k.d), idx(j)) = 1.0;
    z(idx(j), idx(j)) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(k.d));
  }
  Matrix u = Matrix::Identity(idx(k.d), idx(k.d));
  for (std::size_t i = 0; i < a; ++i) u = u * x;
  for (std::size_t i = 0; i < b; ++i) u = u * z;
  if (k.d == 2 && k.index == 3) u *= Complex(0.0, 1.0);
  return u;
}

Secret encrypt(const Secret& s, const EncryptionKey& k) {
  if (s.dim() != k.d) throw std::invalid_argument("key family does not match secret dimension");
  return Secret(key_operator(k) * s.amps());
}

Secret decrypt(const Secret& s, const EncryptionKey& k) {
  if (s.dim() != k.d) throw std::invalid_argument("key family does not match secret dimension");
  return Secret(key_operator(k).adjoint() * s.amps());
}

Matrix pad_average(const Secret& s) {
  const std::size_t d = s.dim();
  Matrix acc = Matrix::Zero(idx(d), idx(d));
  const Matrix rho = s.density();
  for (std::size_t i = 0; i < d * d; ++i) {
    const Matrix u = key_operator({d, i});
    acc += u * rho * u.adjoint();
  }
  return acc / static_cast<double>(d * d);
}

TeleportConfig::TeleportConfig(std::size_t n, std::vector<PartySpec> parties)
    : n_(n), parties_(std::move(parties)) {
  if (n_ == 0 || n_ + 1 > kMaxQubits) throw ConfigError("unsupported register size");
  std::set<std::string> names;
  std::vector<int> owner(n_, -1);
  int dealers = 0, recoverers = 0;
  for (std::size_t p = 0; p < parties_.size(); ++p) {
    auto& party = parties_[p];
    if (party.name.empty() || !names.insert(party.name).second) {
      throw ConfigError("party names must be unique and nonempty");
    }
    if (party.qubits.empty()) throw ConfigError("party " + party.name + " holds no qubits");
    for (auto q : party.qubits) {
      if (q >= n_) throw ConfigError("party " + party.name + " holds qubit outside the register");
      if (owner[q] != -1) throw ConfigError("qubit " + std::to_string(q + 1) + " has two owners");
      owner[q] = static_cast<int>(p);
    }
    std::size_t letters = 0;
    switch (party.role) {
      case Role::Dealer:
        ++dealers;
        letters = party.qubits.size() - 1;
        break;
      case Role::Agent: letters = party.qubits.size(); break;
      case Role::Recoverer:
        ++recoverers;
        std::sort(party.qubits.begin(), party.qubits.end());
        break;
    }
    if (party.role != Role::Recoverer) {
      if (party.bases.size() != letters) {
        throw ConfigError("party " + party.name + " needs " + std::to_string(letters) + " basis letters");
      }
      for (char c : party.bases) basis_letter(c);
    }
  }
  if (dealers != 1 || recoverers != 1) throw ConfigError("need exactly one dealer and one recoverer");
  if (std::find(owner.begin(), owner.end(), -1) != owner.end()) {
    throw ConfigError("qubit ownership must cover the whole register");
  }
}

const PartySpec& TeleportConfig::dealer() const {
  return *std::find_if(parties_.begin(), parties_.end(), [](const PartySpec& p) { return p.role == Role::Dealer; });
}

const PartySpec& TeleportConfig::recoverer() const {
  return *std::find_if(parties_.begin(), parties_.end(),
                       [](const PartySpec& p) { return p.role == Role::Recoverer; });
}

std::vector<PartyMeasurement> party_measurements(const TeleportConfig& cfg) {
  std::vector<PartyMeasurement> measured;
  auto add = [&](const PartySpec& p) {
    std::vector<MeasurementBasis> parts;
    std::vector<std::size_t> targets;
    std::size_t first_letter = 0;
    if (p.role == Role::Dealer) {
      parts.push_back(MeasurementBasis::bell());
      targets = {0, p.qubits[0] + 1};
      first_letter = 1;
    }
    for (std::size_t i = first_letter; i < p.qubits.size(); ++i) {
      parts.push_back(MeasurementBasis::pauli(basis_letter(p.bases[i - first_letter])));
      targets.push_back(p.qubits[i] + 1);
    }
    measured.push_back({p.name, MeasurementBasis::tensor(parts), std::move(targets)});
  };
  add(cfg.dealer());
  for (const auto& p : cfg.parties()) {
    if (p.role == Role::Agent) add(p);
  }
  return measured;
}

std::vector<JointOutcome> joint_outcomes(const TeleportConfig& cfg) {
  const auto measured = party_measurements(cfg);
  std::vector<JointOutcome> out{{"", {}, Vector::Ones(1), {}}};
  for (const auto& m : measured) {
    std::vector<JointOutcome> next;
    for (const auto& o : out) {
      for (const auto& e : m.basis.elements()) {
        JointOutcome j = o;
        j.label += (j.label.empty() ? "" : ",") + m.name + "=" + e.label;
        j.by_party[m.name] = e.label;
        j.projector = kron(o.projector, e.vec);
        j.targets.insert(j.targets.end(), m.targets.begin(), m.targets.end());
        next.push_back(std::move(j));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<Ket> teleport_input(const StateVector& input, const StateVector& code,
                                const TeleportConfig& cfg) {
  if (input.qubits() != 1) throw std::invalid_argument("teleported input must be one qubit");
  if (code.qubits() != cfg.qubits()) throw ConfigError("configuration and code word sizes differ");
  const Ket full(cfg.qubits() + 1, kron(input.amps(), code.amps()));
  std::vector<Ket> out;
  for (const auto& o : joint_outcomes(cfg)) out.push_back(project(full, o.projector, o.targets));
  return out;
}

DivergenceReport check_divergence(const CodeSpace& c, const TeleportConfig& cfg) {
  if (c.qubits() != cfg.qubits()) throw ConfigError("configuration and code space sizes differ");
  const StateVector fiducial = StateVector::basis(1, 0);
  std::vector<std::vector<Ket>> psi;
  for (const auto& w : c.codewords()) psi.push_back(teleport_input(fiducial, w, cfg));
  return assess(joint_outcomes(cfg), psi, std::size_t{1} << cfg.recoverer_qubits());
}

DivergenceReport channel_recovery(const StateVector& codeword, const TeleportConfig& cfg) {
  std::vector<std::vector<Ket>> psi;
  for (std::size_t j = 0; j < 2; ++j) psi.push_back(teleport_input(StateVector::basis(1, j), codeword, cfg));
  return assess(joint_outcomes(cfg), psi, std::size_t{1} << cfg.recoverer_qubits());
}

std::vector<TeleportBranch> run_teleportation(const Secret& s, const CodeSpace& c,
                                              const TeleportConfig& cfg, const RecoveryMap& r) {
  const StateVector logical = encode(s, c);
  const StateVector target = s.embedded(cfg.recoverer_qubits());
  std::vector<TeleportBranch> out;
  const auto rex = teleport_input(StateVector::basis(1, 0), logical, cfg);
  const auto outcomes = joint_outcomes(cfg);
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    const double p = rex[k].amps().squaredNorm();
    if (p <= kAlgebraTol) continue;
    const auto u = r.unitaries.find(outcomes[k].label);
    if (u == r.unitaries.end()) throw std::out_of_range("no recovery for outcome " + outcomes[k].label);
    const StateVector recovered =
        StateVector::normalized(cfg.recoverer_qubits(), u->second.adjoint() * rex[k].amps());
    out.push_back({outcomes[k].label, outcomes[k].by_party, p, recovered, fidelity(recovered, target)});
  }
  return out;
}

std::string format_linear_state(const Ket& a, const Ket& b, const std::string& bases) {
  if (a.qubits() != bases.size() || b.qubits() != bases.size()) {
    throw std::invalid_argument("basis string does not match state size");
  }
  Ket ra = a, rb = b;
  for (std::size_t q = 0; q < bases.size(); ++q) {
    if (bases[q] == 'x') {
      const std::size_t t[] = {q};
      ra = apply_matrix(ra, gates::hadamard(), t);
      rb = apply_matrix(rb, gates::hadamard(), t);
    } else if (bases[q] != 'z') {
      throw std::invalid_argument("format bases must be z or x");
    }
  }
  Complex scale = 0.0;
  for (const Ket* k : {&ra, &rb}) {
    for (Eigen::Index i = 0; i < k->amps().size(); ++i) {
      if (std::abs(k->amps()[i]) > std::abs(scale) + 1e-9) scale = k->amps()[i];
    }
  }
  if (std::abs(scale) < 1e-12) return "0";
  auto label = [&](std::size_t i) {
    std::string s;
    for (std::size_t q = 0; q < bases.size(); ++q) {
      const bool one = (i >> (bases.size() - 1 - q)) & 1U;
      s += bases[q] == 'x' ? (one ? '-' : '+') : (one ? '1' : '0');
    }
    return s;
  };
  auto coefficient = [](Complex c, bool first) {
    auto near = [&](Complex v) { return std::abs(c - v) < 1e-9; };
    if (near(1.0)) return std::string(first ? "" : " + ");
    if (near(-1.0)) return std::string(first ? "-" : " - ");
    char text[64];
    if (std::abs(c.imag()) < 1e-9) {
      std::snprintf(text, sizeof text, "%.4g", c.real());
    } else {
      std::snprintf(text, sizeof text, "(%.4g%+.4gi)", c.real(), c.imag());
    }
    return std::string(first ? "" : " + ") + text;
  };
  std::string out;
  for (const auto& [name, k] : {std::pair{"a", &ra}, std::pair{"b", &rb}}) {
    std::string part;
    for (Eigen::Index i = 0; i < k->amps().size(); ++i) {
      const Complex c = k->amps()[i] / scale;
      if (std::abs(c) < 1e-9) continue;
      part += coefficient(c, part.empty()) + "|" + label(static_cast<std::size_t>(i)) + ">";
    }
    if (part.empty()) continue;
    if (!out.empty()) out += " + ";
    out += std::string(name) + "(" + part + ")";
  }
  return out;
}

namespace {

struct PrintedRow {
  std::string table;
  std::string label;
  std::string printed;
  std::vector<TableTerm> terms;
  std::size_t alice;  // Bell element index
  int bob;            // computational outcome on Bob's two qubits, -1 if none
};

// "-0000 +1100" as coefficient ca or cb on each ket.
std::vector<TableTerm> signed_kets(const std::string& text, bool beta) {
  std::vector<TableTerm> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == ' ') {
      ++pos;
      continue;
    }
    const double sign = text[pos] == '-' ? -1.0 : 1.0;
    const std::size_t end = std::min(text.find(' ', pos), text.size());
    const std::string ket = text.substr(pos + 1, end - pos - 1);
    out.push_back(beta ? TableTerm{0.0, sign, ket} : TableTerm{sign, 0.0, ket});
    pos = end;
  }
  return out;
}

std::vector<TableTerm> join(std::vector<TableTerm> a, const std::vector<TableTerm>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<PrintedRow> printed_rows() {
  const std::vector<TableTerm> t1_phi{{1, 1, "0+0"}, {1, 1, "1+1"}, {1, -1, "0-1"}, {1, -1, "1-0"}};
  const std::vector<TableTerm> t1_psi{{1, 1, "0+0"}, {-1, -1, "1-0"}, {1, -1, "0-1"}, {-1, 1, "1+1"}};
  const std::string p1_phi = "(a+b)(|0+0> + |1+1>) + (a-b)(|0-1> + |1-0>)";
  const std::string p1_psi = "(a+b)(|0+0> - |1-0>) + (a-b)(|0-1> - |1+1>)";
  const auto t3_phi = join(signed_kets("-0000 -1100 -0110 -0011 +1001 +1010 +0101 +1111", false),
                           signed_kets("-0111 -1110 +1101 +1011 +0001 +0010 +0100 +1000", true));
  const auto t3_psi = join(signed_kets("-1000 -0001 +0010 +0100 +1110 +1101 +1011 +0111", false),
                           signed_kets("+0110 -1111 -0011 -1001 -1100 +0101 +1010 +0000", true));
  const std::string p3_phi =
      "a(-|0000> - |1100> - |0110> - |0011> + |1001> + |1010> + |0101> + |1111>) + "
      "b(-|0111> - |1110> + |1101> + |1011> + |0001> + |0010> + |0100> + |1000>)";
  const std::string p3_psi =
      "a(-|1000> - |0001> + |0010> + |0100> + |1110> + |1101> + |1011> + |0111>) + "
      "b(|0110> - |1111> - |0011> - |1001> - |1100> + |0101> + |1010> + |0000>)";
  std::vector<PrintedRow> rows;
  const char* bell[] = {"Phi+", "Phi-", "Psi+", "Psi-"};
  for (std::size_t a = 0; a < 4; ++a) {
    rows.push_back({"I", bell[a], a < 2 ? p1_phi : p1_psi, a < 2 ? t1_phi : t1_psi, a, -1});
  }
  rows.push_back({"II", "Phi+,00", "a|+> + b|->", {{1, 0, "+"}, {0, 1, "-"}}, 0, 0});
  rows.push_back({"II", "Phi+,01", "a|-> + b|+>", {{1, 0, "-"}, {0, 1, "+"}}, 0, 1});
  rows.push_back({"II", "Phi+,10", "a|+> - b|->", {{1, 0, "+"}, {0, -1, "-"}}, 0, 2});
  rows.push_back({"II", "Phi+,11", "b|+> - a|->", {{0, 1, "+"}, {-1, 0, "-"}}, 0, 3});
  for (std::size_t a = 0; a < 4; ++a) {
    rows.push_back({"III", bell[a], a < 2 ? p3_phi : p3_psi, a < 2 ? t3_phi : t3_psi, a, -1});
  }
  auto t4 = [](const char* alpha, const char* beta) {
    return join(signed_kets(alpha, false), signed_kets(beta, true));
  };
  rows.push_back({"IV", "Phi+,00", "a(-|00> - |11>) + b(|01> + |10>)", t4("-00 -11", "+01 +10"), 0, 0});
  rows.push_back({"IV", "Phi+,11", "a(-|00> + |11>) + b(|01> - |10>)", t4("-00 +11", "+01 -10"), 0, 3});
  rows.push_back({"IV", "Phi+,01", "a(|01> - |10>) + b(|00> - |11>)", t4("+01 -10", "+00 -11"), 0, 1});
  rows.push_back({"IV", "Phi+,10", "a(|01> + |10>) + b(|00> + |11>)", t4("+01 +10", "+00 +11"), 0, 2});
  return rows;
}

// Branch state of the encoded secret after Alice's Bell element and, when
// requested, Bob's computational outcome on the next two qubits.
Ket branch(const CodeSpace& code, const Secret& s, std::size_t alice, int bob) {
  const StateVector logical = encode(s, code);
  const Ket full(code.qubits() + 1, kron(Ket::basis(1, 0).amps(), logical.amps()));
  const std::size_t alice_targets[] = {0, 1};
  Ket k = project(full, MeasurementBasis::bell().elements()[alice].vec, alice_targets);
  if (bob >= 0) {
    const std::size_t bob_targets[] = {0, 1};
    k = project(k, Ket::basis(2, static_cast<std::size_t>(bob)).amps(), bob_targets);
  }
  return k;
}

Ket printed_state(const std::vector<TableTerm>& terms, const Secret& s) {
  Ket acc = Ket::zero(terms.front().ket.size());
  for (const auto& t : terms) acc += (t.c_alpha * s[0] + t.c_beta * s[1]) * StateVector::product(t.ket).ket();
  return acc;
}

}  // namespace

std::vector<TableRow> reproduce_tables() {
  const CodeSpace cluster = dqis_fixture("cluster4").code;
  const CodeSpace fiveq = dqis_fixture("fiveq").code;
  const std::vector<Secret> probes{
      Secret::qubit(0.6, std::polar(0.8, std::numbers::pi / 7.0)),
      Secret::qubit(std::polar(0.28, 0.3), std::polar(0.96, -0.9)),
  };
  std::vector<TableRow> out;
  for (const auto& row : printed_rows()) {
    const CodeSpace& code = row.table == "I" || row.table == "II" ? cluster : fiveq;
    std::string bases;
    if (row.table == "I") bases = "zxz";
    else if (row.table == "II") bases = "x";
    else bases = std::string(row.table == "III" ? 4 : 2, 'z');
    TableRow r{row.table, row.label, row.printed, "", 1.0, false};
    for (const auto& probe : probes) {
      const Ket sim = branch(code, probe, row.alice, row.bob);
      const Ket printed = printed_state(row.terms, probe);
      const double overlap = std::abs(printed.amps().dot(sim.amps())) / (printed.norm() * sim.norm());
      r.overlap = std::min(r.overlap, overlap);
    }
    r.matched = r.overlap >= 1.0 - kFidelityTol;
    r.simulated = format_linear_state(branch(code, Secret::basis(2, 0), row.alice, row.bob),
                                      branch(code, Secret::basis(2, 1), row.alice, row.bob), bases);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace dqis

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "stabdec/circuit.hpp"
#include "stabdec/code.hpp"
#include "stabdec/errors.hpp"
#include "stabdec/pauli.hpp"

namespace stabdec {

constexpr int kMaxSimQubits = 16;

/// Dense amplitude vector over n <= 16 qubits. Index bit layout matches
/// PauliString: qubit 1 is the most significant of the n used bits, so
/// amp(0b10000) on five qubits reads |10000>.
class StateVector {
 public:
  explicit StateVector(int n) : n_(checked_n(n)), amps_(std::size_t{1} << n) {
    amps_[0] = 1.0;
  }

  static StateVector basis(int n, std::uint64_t bits) {
    StateVector s(n);
    if (bits >> n) throw PreconditionError("basis label exceeds qubit count");
    s.amps_[0] = 0.0;
    s.amps_[bits] = 1.0;
    return s;
  }

  static StateVector from_expansion(const CodewordExpansion& e) {
    StateVector s(e.n);
    if (e.coefficients.empty()) throw PreconditionError("empty codeword expansion");
    s.amps_.assign(s.amps_.size(), 0.0);
    for (const auto& [bits, amp] : e.terms()) s.amps_[bits] = amp;
    return s;
  }

  int n() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<std::complex<double>>& amplitudes() const { return amps_; }

  std::complex<double> amp(std::uint64_t idx) const { return amps_.at(idx); }
  void set_amp(std::uint64_t idx, std::complex<double> v) { amps_.at(idx) = v; }

  double norm() const {
    double s = 0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
  }

  void normalize() {
    double nrm = norm();
    if (nrm < 1e-300) throw PreconditionError("cannot normalize the zero vector");
    for (auto& a : amps_) a /= nrm;
  }

  int bit_pos(int qubit) const {
    if (qubit < 1 || qubit > n_) throw PreconditionError("qubit index out of range");
    return n_ - qubit;
  }

  void apply_gate(const Gate& g) {
    switch (g.kind) {
      case GateKind::H: apply_h(g.q0); return;
      case GateKind::X: apply_x(g.q0); return;
      case GateKind::Z: apply_z(g.q0); return;
      case GateKind::S: apply_s(g.q0); return;
      case GateKind::CNOT: apply_cnot(g.q0, g.q1); return;
      case GateKind::CZ: apply_cz(g.q0, g.q1); return;
    }
    throw PreconditionError("unknown gate kind");
  }

  /// Applies gates in order. The circuit may be narrower than the state;
  /// its qubit labels then address the leading qubits.
  void apply_circuit_in_place(const Circuit& c) {
    if (c.width > n_) throw PreconditionError("circuit wider than state");
    for (const Gate& g : c.gates) apply_gate(g);
  }

 private:
  static int checked_n(int n) {
    if (n < 1 || n > kMaxSimQubits) {
      throw LimitError("state width must be in [1, " + std::to_string(kMaxSimQubits) + "]");
    }
    return n;
  }

  void apply_h(int q) {
    std::uint64_t m = std::uint64_t{1} << bit_pos(q);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
      if (i & m) continue;
      auto a0 = amps_[i], a1 = amps_[i | m];
      amps_[i] = (a0 + a1) * inv_sqrt2;
      amps_[i | m] = (a0 - a1) * inv_sqrt2;
    }
  }

  void apply_x(int q) {
    std::uint64_t m = std::uint64_t{1} << bit_pos(q);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
      if (!(i & m)) std::swap(amps_[i], amps_[i | m]);
    }
  }

  void apply_z(int q) {
    std::uint64_t m = std::uint64_t{1} << bit_pos(q);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
      if (i & m) amps_[i] = -amps_[i];
    }
  }

  void apply_s(int q) {
    std::uint64_t m = std::uint64_t{1} << bit_pos(q);
    const std::complex<double> phase(0.0, 1.0);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
      if (i & m) amps_[i] *= phase;
    }
  }

  void apply_cnot(int control, int target) {
    std::uint64_t cm = std::uint64_t{1} << bit_pos(control);
    std::uint64_t tm = std::uint64_t{1} << bit_pos(target);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
      if ((i & cm) && !(i & tm)) std::swap(amps_[i], amps_[i | tm]);
    }
  }

  void apply_cz(int a, int b) {
    std::uint64_t am = std::uint64_t{1} << bit_pos(a);
    std::uint64_t bm = std::uint64_t{1} << bit_pos(b);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
      if ((i & am) && (i & bm)) amps_[i] = -amps_[i];
    }
  }

  int n_;
  std::vector<std::complex<double>> amps_;
};

inline StateVector apply_circuit(StateVector s, const Circuit& c) {
  s.apply_circuit_in_place(c);
  return s;
}

/// |<a|b>|^2, defined for equal widths.
inline double fidelity(const StateVector& a, const StateVector& b) {
  if (a.n() != b.n()) throw PreconditionError("state width mismatch");
  std::complex<double> ip = 0;
  for (std::uint64_t i = 0; i < a.dim(); ++i) ip += std::conj(a.amp(i)) * b.amp(i);
  return std::norm(ip);
}

/// <s| p |s> for a signed Pauli p; real because p is Hermitian up to
/// the tracked sign.
inline double stabilizer_expectation(const StateVector& s, const PauliString& p) {
  if (p.n() != s.n()) throw PreconditionError("state/operator width mismatch");
  std::complex<double> acc = 0;
  for (std::uint64_t i = 0; i < s.dim(); ++i) {
    if (s.amp(i) == std::complex<double>{}) continue;
    BasisImage img = apply_to_basis(p, i);
    acc += std::conj(s.amp(img.bits)) * (static_cast<double>(img.sign) * s.amp(i));
  }
  return acc.real();
}

/// Reduced density matrix on a subset of qubits, row-major, with the
/// subset's smallest qubit index as the most significant sub-index bit.
class ReducedDensity {
 public:
  ReducedDensity(int qubit_count, std::vector<std::complex<double>> entries)
      : qubits_(qubit_count), entries_(std::move(entries)) {}

  int qubit_count() const { return qubits_; }
  std::size_t dim() const { return std::size_t{1} << qubits_; }

  std::complex<double> at(std::size_t row, std::size_t col) const {
    return entries_[row * dim() + col];
  }

  /// Tr(rho^2); 1 for pure states.
  double purity() const {
    double s = 0;
    for (const auto& e : entries_) s += std::norm(e);
    return s;
  }

  /// <psi| rho |psi>.
  double overlap(const StateVector& psi) const {
    if (psi.dim() != dim()) throw PreconditionError("density/state dimension mismatch");
    std::complex<double> acc = 0;
    for (std::size_t r = 0; r < dim(); ++r) {
      for (std::size_t c = 0; c < dim(); ++c) {
        acc += std::conj(psi.amp(r)) * at(r, c) * psi.amp(c);
      }
    }
    return acc.real();
  }

  /// Tr(rho sigma) for two density matrices of equal shape.
  static double cross_trace(const ReducedDensity& rho, const ReducedDensity& sigma) {
    if (rho.dim() != sigma.dim()) throw PreconditionError("density dimension mismatch");
    std::complex<double> acc = 0;
    for (std::size_t r = 0; r < rho.dim(); ++r) {
      for (std::size_t c = 0; c < rho.dim(); ++c) {
        acc += rho.at(r, c) * std::conj(sigma.at(r, c));
      }
    }
    return acc.real();
  }

 private:
  int qubits_;
  std::vector<std::complex<double>> entries_;
};

namespace detail {

inline std::vector<int> checked_subset(const StateVector& s, std::vector<int> subset) {
  if (subset.empty()) throw PreconditionError("qubit subset must be non-empty");
  std::sort(subset.begin(), subset.end());
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] < 1 || subset[i] > s.n()) {
      throw PreconditionError("qubit subset index out of range");
    }
    if (i && subset[i] == subset[i - 1]) {
      throw PreconditionError("qubit subset indices must be distinct");
    }
  }
  return subset;
}

}  // namespace detail

inline ReducedDensity reduced_density(const StateVector& s, std::vector<int> subset) {
  subset = detail::checked_subset(s, std::move(subset));
  int ns = static_cast<int>(subset.size());
  int nr = s.n() - ns;
  std::vector<int> rest;
  {
    std::vector<bool> in_sub(s.n() + 1, false);
    for (int q : subset) in_sub[q] = true;
    for (int q = 1; q <= s.n(); ++q) {
      if (!in_sub[q]) rest.push_back(q);
    }
  }
  // Bit positions in the full index for each sub/rest sub-index bit.
  auto positions = [&](const std::vector<int>& qs) {
    std::vector<int> pos;
    for (int q : qs) pos.push_back(s.bit_pos(q));
    return pos;
  };
  std::vector<int> sub_pos = positions(subset), rest_pos = positions(rest);
  auto compose = [](const std::vector<int>& pos, std::uint64_t idx) {
    std::uint64_t full = 0;
    int bits = static_cast<int>(pos.size());
    for (int i = 0; i < bits; ++i) {
      if ((idx >> (bits - 1 - i)) & 1) full |= std::uint64_t{1} << pos[i];
    }
    return full;
  };
  std::size_t sub_dim = std::size_t{1} << ns;
  std::size_t rest_dim = std::size_t{1} << nr;
  std::vector<std::complex<double>> rho(sub_dim * sub_dim, 0.0);
  std::vector<std::complex<double>> slice(sub_dim);
  for (std::uint64_t rest_idx = 0; rest_idx < rest_dim; ++rest_idx) {
    std::uint64_t rest_bits = compose(rest_pos, rest_idx);
    for (std::uint64_t a = 0; a < sub_dim; ++a) {
      slice[a] = s.amp(rest_bits | compose(sub_pos, a));
    }
    for (std::uint64_t a = 0; a < sub_dim; ++a) {
      if (slice[a] == std::complex<double>{}) continue;
      for (std::uint64_t b = 0; b < sub_dim; ++b) {
        rho[a * sub_dim + b] += slice[a] * std::conj(slice[b]);
      }
    }
  }
  return ReducedDensity(ns, std::move(rho));
}

struct FactorCheck {
  bool separable;
  double purity;
};

/// Tests whether the subset factors out of the state: purity of its
/// reduced density within tol of 1.
inline FactorCheck factor_check(const StateVector& s, const std::vector<int>& subset,
                                double tol = 1e-10) {
  double p = reduced_density(s, subset).purity();
  return {p >= 1.0 - tol, p};
}

namespace detail {

/// Fixes the global phase: first amplitude of magnitude above cutoff
/// becomes real positive.
inline void canonicalize_phase(std::vector<std::complex<double>>& amps) {
  double best = 0;
  for (const auto& a : amps) best = std::max(best, std::abs(a));
  double cutoff = best * 1e-9;
  for (const auto& a : amps) {
    if (std::abs(a) > cutoff) {
      std::complex<double> phase = a / std::abs(a);
      for (auto& b : amps) b /= phase;
      return;
    }
  }
}

inline StateVector project_slice(const StateVector& s, const std::vector<int>& keep,
                                 std::uint64_t fixed_bits) {
  std::vector<int> pos;
  for (int q : keep) pos.push_back(s.bit_pos(q));
  int nk = static_cast<int>(keep.size());
  std::vector<std::complex<double>> amps(std::size_t{1} << nk);
  for (std::uint64_t idx = 0; idx < amps.size(); ++idx) {
    std::uint64_t full = fixed_bits;
    for (int i = 0; i < nk; ++i) {
      if ((idx >> (nk - 1 - i)) & 1) full |= std::uint64_t{1} << pos[i];
    }
    amps[idx] = s.amp(full);
  }
  double norm = 0;
  for (const auto& a : amps) norm += std::norm(a);
  norm = std::sqrt(norm);
  if (norm < 1e-300) throw PreconditionError("projected slice has zero norm");
  for (auto& a : amps) a /= norm;
  canonicalize_phase(amps);
  StateVector out(nk);
  for (std::uint64_t idx = 0; idx < amps.size(); ++idx) out.set_amp(idx, amps[idx]);
  return out;
}

}  // namespace detail

/// The single-qubit factor carried by `qubit`, with canonical global
/// phase. Requires the qubit to be separable within tol.
inline StateVector extract_factor(const StateVector& s, int qubit, double tol = 1e-10) {
  FactorCheck fc = factor_check(s, {qubit}, tol);
  if (!fc.separable) {
    throw PreconditionError("qubit is entangled with the rest of the state");
  }
  // Slice along the largest-amplitude setting of the other qubits.
  std::uint64_t best_idx = 0;
  double best = -1;
  for (std::uint64_t i = 0; i < s.dim(); ++i) {
    if (std::abs(s.amp(i)) > best) {
      best = std::abs(s.amp(i));
      best_idx = i;
    }
  }
  std::uint64_t qmask = std::uint64_t{1} << s.bit_pos(qubit);
  return detail::project_slice(s, {qubit}, best_idx & ~qmask);
}

/// The complementary factor on the remaining qubits (ascending order),
/// with canonical global phase.
inline StateVector extract_complement(const StateVector& s, int qubit, double tol = 1e-10) {
  if (s.n() < 2) throw PreconditionError("no complement for a single-qubit state");
  FactorCheck fc = factor_check(s, {qubit}, tol);
  if (!fc.separable) {
    throw PreconditionError("qubit is entangled with the rest of the state");
  }
  std::uint64_t best_idx = 0;
  double best = -1;
  for (std::uint64_t i = 0; i < s.dim(); ++i) {
    if (std::abs(s.amp(i)) > best) {
      best = std::abs(s.amp(i));
      best_idx = i;
    }
  }
  std::vector<int> keep;
  for (int q = 1; q <= s.n(); ++q) {
    if (q != qubit) keep.push_back(q);
  }
  std::uint64_t qmask = std::uint64_t{1} << s.bit_pos(qubit);
  return detail::project_slice(s, keep, best_idx & qmask);
}

}  // namespace stabdec

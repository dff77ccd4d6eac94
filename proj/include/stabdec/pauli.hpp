#pragma once

#include <bit>
#include <cstdint>
#include <string>

#include "stabdec/errors.hpp"

namespace stabdec {

/// Signed element of the n-qubit error group in symplectic form:
///
///   sign * prod_q X^{x_q} Z^{z_q}        (X to the left of Z on each qubit)
///
/// Only signs +1/-1 occur; the letter Y denotes the unsigned product X*Z.
/// Qubit 1 is the leftmost tensor factor and is stored in the most
/// significant of the n used bits, so masks read like ket labels.
class PauliString {
 public:
  PauliString() = default;

  /// Identity on n qubits.
  explicit PauliString(int n) : n_(checked_n(n)) {}

  PauliString(int n, std::uint64_t x, std::uint64_t z, int sign = +1)
      : n_(checked_n(n)), x_(x), z_(z), sign_(sign) {
    std::uint64_t valid = mask();
    if ((x_ & ~valid) || (z_ & ~valid)) {
      throw PreconditionError("pauli bit mask exceeds qubit count");
    }
    if (sign_ != 1 && sign_ != -1) {
      throw PreconditionError("pauli sign must be +1 or -1");
    }
  }

  int n() const { return n_; }
  std::uint64_t x() const { return x_; }
  std::uint64_t z() const { return z_; }
  int sign() const { return sign_; }

  /// 0-based mask position of 1-based qubit q (qubit 1 = MSB).
  int bit_pos(int qubit) const {
    if (qubit < 1 || qubit > n_) {
      throw PreconditionError("qubit index out of range");
    }
    return n_ - qubit;
  }

  bool x_bit(int qubit) const { return (x_ >> bit_pos(qubit)) & 1; }
  bool z_bit(int qubit) const { return (z_ >> bit_pos(qubit)) & 1; }

  std::string str() const {
    std::string out;
    if (sign_ < 0) out += '-';
    for (int q = 1; q <= n_; ++q) {
      bool xb = x_bit(q), zb = z_bit(q);
      out += xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
    }
    return out;
  }

  bool operator==(const PauliString&) const = default;

  std::uint64_t mask() const {
    return n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
  }

 private:
  static int checked_n(int n) {
    if (n < 0 || n > 64) throw LimitError("pauli length must be in [0, 64]");
    return n;
  }

  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  int sign_ = +1;
};

/// Parses text like "XZZXI" or "-IXYZ". Letters I/X/Y/Z only, optional
/// leading '+' or '-'. Y contributes both an x and a z bit, no phase.
inline PauliString parse_pauli(const std::string& text) {
  std::size_t pos = 0;
  int sign = +1;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    sign = text[pos] == '-' ? -1 : +1;
    ++pos;
  }
  if (pos == text.size()) throw ParseError("empty pauli string: '" + text + "'");
  int n = static_cast<int>(text.size() - pos);
  if (n > 64) throw LimitError("pauli length must be in [0, 64]");
  std::uint64_t x = 0, z = 0;
  for (int q = 0; q < n; ++q) {
    std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
    switch (text[pos + q]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Z': z |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      default:
        throw ParseError("bad pauli letter '" + std::string(1, text[pos + q]) +
                         "' in '" + text + "'");
    }
  }
  return PauliString(n, x, z, sign);
}

/// Group product a*b. Sign picks up (-1)^{|a.z & b.x|} from commuting
/// each Z in a past each X in b.
inline PauliString multiply(const PauliString& a, const PauliString& b) {
  if (a.n() != b.n()) throw PreconditionError("pauli length mismatch");
  int sign = a.sign() * b.sign();
  if (std::popcount(a.z() & b.x()) & 1) sign = -sign;
  return PauliString(a.n(), a.x() ^ b.x(), a.z() ^ b.z(), sign);
}

/// Symplectic commutation test: true iff <a.x, b.z> + <a.z, b.x> is even.
inline bool commutes(const PauliString& a, const PauliString& b) {
  if (a.n() != b.n()) throw PreconditionError("pauli length mismatch");
  int overlap = std::popcount(a.x() & b.z()) + std::popcount(a.z() & b.x());
  return (overlap & 1) == 0;
}

/// Number of qubits acted on non-trivially.
inline int weight(const PauliString& p) {
  return std::popcount(p.x() | p.z());
}

/// Group inverse: p squares to (-1)^{|x & z|}, so only the sign moves.
inline PauliString inverse(const PauliString& p) {
  int sign = p.sign();
  if (std::popcount(p.x() & p.z()) & 1) sign = -sign;
  return PauliString(p.n(), p.x(), p.z(), sign);
}

struct BasisImage {
  int sign;
  std::uint64_t bits;
};

/// Action on a computational basis ket: Z factors read the input bits,
/// X factors flip them.  p|bits> = sign * (-1)^{|z & bits|} |bits ^ x>.
inline BasisImage apply_to_basis(const PauliString& p, std::uint64_t bits) {
  if (bits & ~p.mask()) throw PreconditionError("basis state exceeds qubit count");
  int sign = p.sign();
  if (std::popcount(p.z() & bits) & 1) sign = -sign;
  return {sign, bits ^ p.x()};
}

}  // namespace stabdec

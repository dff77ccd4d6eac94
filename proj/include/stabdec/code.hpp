#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stabdec/errors.hpp"
#include "stabdec/gf2.hpp"
#include "stabdec/pauli.hpp"

namespace stabdec {

/// An [[n, k, d]] stabilizer code: f = n-k commuting, independent
/// generators plus one logical X/Z pair per encoded qubit.
struct StabilizerCode {
  int n = 0;
  int k = 0;
  std::vector<PauliString> generators;
  std::vector<PauliString> logical_x;
  std::vector<PauliString> logical_z;
  std::optional<int> distance;

  int f() const { return n - k; }

  std::optional<int> t() const {
    if (!distance) return std::nullopt;
    return (*distance - 1) / 2;
  }
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Symplectic check matrix (X block | Z block), one row per generator.
/// Column q-1 is qubit q's X bit, column n+q-1 its Z bit. Works on
/// arbitrary generator lists, valid or not.
inline Gf2Matrix check_matrix(const StabilizerCode& code) {
  int f = static_cast<int>(code.generators.size());
  Gf2Matrix m(f, 2 * code.n);
  for (int r = 0; r < f; ++r) {
    const PauliString& g = code.generators[r];
    if (g.n() != code.n) throw PreconditionError("generator length differs from n");
    for (int q = 1; q <= code.n; ++q) {
      if (g.x_bit(q)) m.set(r, q - 1, 1);
      if (g.z_bit(q)) m.set(r, code.n + q - 1, 1);
    }
  }
  return m;
}

inline ValidationReport validate(const StabilizerCode& code) {
  ValidationReport rep;
  auto add = [&](const std::string& s) { rep.violations.push_back(s); };

  if (code.n < 1 || code.n > 64) add("n must be in [1, 64]");
  if (code.k < 0 || code.k > code.n) add("k must be in [0, n]");
  if (code.distance && *code.distance < 1) add("distance must be positive when set");
  if (!rep.ok()) return rep;

  if (static_cast<int>(code.generators.size()) != code.f()) {
    add("expected " + std::to_string(code.f()) + " generators, found " +
        std::to_string(code.generators.size()));
  }
  if (static_cast<int>(code.logical_x.size()) != code.k) {
    add("expected " + std::to_string(code.k) + " logical_x operators, found " +
        std::to_string(code.logical_x.size()));
  }
  if (static_cast<int>(code.logical_z.size()) != code.k) {
    add("expected " + std::to_string(code.k) + " logical_z operators, found " +
        std::to_string(code.logical_z.size()));
  }
  auto check_len = [&](const PauliString& p, const std::string& label) {
    if (p.n() != code.n) add(label + " acts on " + std::to_string(p.n()) +
                             " qubits, expected " + std::to_string(code.n));
  };
  for (std::size_t i = 0; i < code.generators.size(); ++i) {
    check_len(code.generators[i], "generator " + std::to_string(i + 1));
  }
  for (std::size_t i = 0; i < code.logical_x.size(); ++i) {
    check_len(code.logical_x[i], "logical_x[" + std::to_string(i + 1) + "]");
  }
  for (std::size_t i = 0; i < code.logical_z.size(); ++i) {
    check_len(code.logical_z[i], "logical_z[" + std::to_string(i + 1) + "]");
  }
  if (!rep.ok()) return rep;

  for (std::size_t i = 0; i < code.generators.size(); ++i) {
    for (std::size_t j = i + 1; j < code.generators.size(); ++j) {
      if (!commutes(code.generators[i], code.generators[j])) {
        add("generator " + std::to_string(i + 1) + " anticommutes with generator " +
            std::to_string(j + 1));
      }
    }
  }
  if (!code.generators.empty() &&
      gf2_rank(check_matrix(code)) != static_cast<int>(code.generators.size())) {
    add("generators are linearly dependent");
  }
  for (std::size_t i = 0; i < code.generators.size(); ++i) {
    for (std::size_t j = 0; j < code.logical_x.size(); ++j) {
      if (!commutes(code.generators[i], code.logical_x[j])) {
        add("generator " + std::to_string(i + 1) + " anticommutes with logical_x[" +
            std::to_string(j + 1) + "]");
      }
    }
    for (std::size_t j = 0; j < code.logical_z.size(); ++j) {
      if (!commutes(code.generators[i], code.logical_z[j])) {
        add("generator " + std::to_string(i + 1) + " anticommutes with logical_z[" +
            std::to_string(j + 1) + "]");
      }
    }
  }
  for (std::size_t i = 0; i < code.logical_x.size(); ++i) {
    for (std::size_t j = 0; j < code.logical_z.size(); ++j) {
      bool comm = commutes(code.logical_x[i], code.logical_z[j]);
      if (i == j && comm) {
        add("logical_x[" + std::to_string(i + 1) + "] commutes with logical_z[" +
            std::to_string(j + 1) + "]");
      }
      if (i != j && !comm) {
        add("logical_x[" + std::to_string(i + 1) + "] anticommutes with logical_z[" +
            std::to_string(j + 1) + "]");
      }
    }
  }
  for (std::size_t i = 0; i < code.logical_x.size(); ++i) {
    for (std::size_t j = i + 1; j < code.logical_x.size(); ++j) {
      if (!commutes(code.logical_x[i], code.logical_x[j])) {
        add("logical_x operators " + std::to_string(i + 1) + " and " +
            std::to_string(j + 1) + " anticommute");
      }
      if (!commutes(code.logical_z[i], code.logical_z[j])) {
        add("logical_z operators " + std::to_string(i + 1) + " and " +
            std::to_string(j + 1) + " anticommute");
      }
    }
  }
  return rep;
}

inline void require_valid(const StabilizerCode& code) {
  ValidationReport rep = validate(code);
  if (!rep.ok()) throw ValidationError(rep.violations);
}

inline StabilizerCode five_qubit_code() {
  StabilizerCode c;
  c.n = 5;
  c.k = 1;
  c.generators = {parse_pauli("XZZXI"), parse_pauli("IXZZX"), parse_pauli("XIXZZ"),
                  parse_pauli("ZXIXZ")};
  c.logical_x = {parse_pauli("XXXXX")};
  c.logical_z = {parse_pauli("ZZZZZ")};
  c.distance = 3;
  return c;
}

inline StabilizerCode steane_code() {
  StabilizerCode c;
  c.n = 7;
  c.k = 1;
  c.generators = {parse_pauli("IIIXXXX"), parse_pauli("IXXIIXX"), parse_pauli("XIXIXIX"),
                  parse_pauli("IIIZZZZ"), parse_pauli("IZZIIZZ"), parse_pauli("ZIZIZIZ")};
  c.logical_x = {parse_pauli("XXXXXXX")};
  c.logical_z = {parse_pauli("ZZZZZZZ")};
  c.distance = 3;
  return c;
}

/// A codeword as a signed combination of computational basis kets.
/// `coefficients` holds the raw integer weights from summing the group;
/// terms() rescales them to unit norm.
class CodewordExpansion {
 public:
  int n = 0;
  std::map<std::uint64_t, long long> coefficients;

  double normalizer() const {
    double s = 0;
    for (const auto& [bits, c] : coefficients) {
      (void)bits;
      s += static_cast<double>(c) * static_cast<double>(c);
    }
    return std::sqrt(s);
  }

  std::map<std::uint64_t, double> terms() const {
    std::map<std::uint64_t, double> out;
    double norm = normalizer();
    for (const auto& [bits, c] : coefficients) {
      out[bits] = static_cast<double>(c) / norm;
    }
    return out;
  }

  double amplitude(std::uint64_t bits) const {
    auto it = coefficients.find(bits);
    if (it == coefficients.end()) return 0.0;
    return static_cast<double>(it->second) / normalizer();
  }
};

/// |Psi_j> = sum over the full stabilizer group of M (Xbar^j |0...0>),
/// collected per basis label. Terms that cancel are dropped; an empty
/// result means |0...0> has no support in the code space.
inline CodewordExpansion codeword(const StabilizerCode& code, int j) {
  require_valid(code);
  if (code.k != 1) throw PreconditionError("codeword expansion requires k = 1");
  if (j != 0 && j != 1) throw PreconditionError("codeword index must be 0 or 1");
  int f = code.f();
  if (f > 24) throw LimitError("stabilizer group too large to enumerate (f > 24)");

  CodewordExpansion e;
  e.n = code.n;
  std::uint64_t subsets = std::uint64_t{1} << f;
  for (std::uint64_t s = 0; s < subsets; ++s) {
    PauliString m(code.n);
    for (int g = 0; g < f; ++g) {
      if ((s >> g) & 1) m = multiply(m, code.generators[g]);
    }
    if (j == 1) m = multiply(m, code.logical_x[0]);
    BasisImage img = apply_to_basis(m, 0);
    e.coefficients[img.bits] += img.sign;
  }
  for (auto it = e.coefficients.begin(); it != e.coefficients.end();) {
    if (it->second == 0) it = e.coefficients.erase(it);
    else ++it;
  }
  if (e.coefficients.empty()) {
    throw PreconditionError("|0...0> has no support in the code space");
  }
  return e;
}

namespace detail {

inline std::uint64_t swap_mask_bits(std::uint64_t v, int a, int b) {
  std::uint64_t ba = (v >> a) & 1, bb = (v >> b) & 1;
  if (ba != bb) v ^= (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
  return v;
}

inline PauliString swap_qubits(const PauliString& p, int qa, int qb) {
  int a = p.bit_pos(qa), b = p.bit_pos(qb);
  return PauliString(p.n(), swap_mask_bits(p.x(), a, b), swap_mask_bits(p.z(), a, b),
                     p.sign());
}

}  // namespace detail

/// Standard-form result: the transformed code plus the qubit relabeling
/// used to get there. qubit_map[p-1] is the original label of the qubit
/// now at position p.
struct StandardForm {
  std::vector<int> qubit_map;
  StabilizerCode code;
  int x_rank = 0;
};

/// Row-reduces the X block to an identity leading block of size r via
/// generator products, row swaps and qubit relabeling (lexicographic-
/// first pivots), then row-reduces the Z block of the remaining pure-Z
/// rows over columns r+1..n. Sign bookkeeping rides along in the
/// PauliString products.
inline StandardForm standard_form(const StabilizerCode& code) {
  require_valid(code);
  StandardForm sf;
  sf.code = code;
  sf.qubit_map.resize(code.n);
  for (int q = 1; q <= code.n; ++q) sf.qubit_map[q - 1] = q;

  auto& gens = sf.code.generators;
  int f = static_cast<int>(gens.size());
  auto swap_cols = [&](int qa, int qb) {
    if (qa == qb) return;
    for (auto& g : gens) g = detail::swap_qubits(g, qa, qb);
    for (auto& l : sf.code.logical_x) l = detail::swap_qubits(l, qa, qb);
    for (auto& l : sf.code.logical_z) l = detail::swap_qubits(l, qa, qb);
    std::swap(sf.qubit_map[qa - 1], sf.qubit_map[qb - 1]);
  };

  // Phase 1: X block -> [I_r | A] with RREF rows.
  int r = 0;
  while (r < f) {
    int pivot_row = -1, pivot_col = -1;
    for (int c = r + 1; c <= code.n && pivot_row < 0; ++c) {
      for (int row = r; row < f; ++row) {
        if (gens[row].x_bit(c)) {
          pivot_row = row;
          pivot_col = c;
          break;
        }
      }
    }
    if (pivot_row < 0) break;
    std::swap(gens[r], gens[pivot_row]);
    swap_cols(pivot_col, r + 1);
    for (int row = 0; row < f; ++row) {
      if (row != r && gens[row].x_bit(r + 1)) gens[row] = multiply(gens[row], gens[r]);
    }
    ++r;
  }
  sf.x_rank = r;

  // Phase 2: Z block of the pure-Z rows -> pivots at columns r+1..f.
  for (int i = r; i < f; ++i) {
    int target_col = i + 1;
    int pivot_row = -1, pivot_col = -1;
    for (int c = target_col; c <= code.n && pivot_row < 0; ++c) {
      for (int row = i; row < f; ++row) {
        if (gens[row].z_bit(c)) {
          pivot_row = row;
          pivot_col = c;
          break;
        }
      }
    }
    if (pivot_row < 0) {
      throw PreconditionError("standard form failed: dependent pure-Z rows");
    }
    std::swap(gens[i], gens[pivot_row]);
    swap_cols(pivot_col, target_col);
    for (int row = r; row < f; ++row) {
      if (row != i && gens[row].z_bit(target_col)) gens[row] = multiply(gens[row], gens[i]);
    }
  }
  return sf;
}

namespace detail {

/// Exact signed membership of `t` in the group generated by
/// `code.generators`.
inline bool in_stabilizer_group(const StabilizerCode& code, const PauliString& t) {
  Gf2Matrix cm = check_matrix(code);
  std::vector<std::uint8_t> v(2 * code.n, 0);
  for (int q = 1; q <= code.n; ++q) {
    v[q - 1] = t.x_bit(q);
    v[code.n + q - 1] = t.z_bit(q);
  }
  auto combo = gf2_express_in_rows(cm, v);
  if (!combo) return false;
  PauliString prod(code.n);
  for (int idx : *combo) prod = multiply(prod, code.generators[idx]);
  return prod == t;
}

}  // namespace detail

/// "Reversal" here is the all-qubit NOT. A k = 1 code is reversal
/// symmetric when its logical X is X on every qubit, so |Psi_1>'s basis
/// terms are the bit complements of |Psi_0>'s (symmetric basis pairs).
/// Purely structural: validity and the sign of X-bar are checked by the
/// consumers that need them.
inline bool is_reversal_symmetric(const StabilizerCode& code) {
  if (code.k != 1 || code.logical_x.size() != 1) {
    throw PreconditionError("reversal symmetry is defined for k = 1 codes");
  }
  const PauliString& lx = code.logical_x[0];
  return lx.x() == lx.mask() && lx.z() == 0;
}

/// Line-oriented code file:
///   n 5
///   k 1
///   stabilizer XZZXI      (one line per generator)
///   logical_x XXXXX       (k lines)
///   logical_z ZZZZZ       (k lines)
///   distance 3            (optional)
/// Blank lines and lines starting with '#' are skipped.
inline StabilizerCode parse_code_file(std::istream& in) {
  StabilizerCode code;
  bool saw_n = false, saw_k = false;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError("code file line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string key;
    if (!(fields >> key)) continue;
    if (key[0] == '#') continue;
    std::string value;
    if (!(fields >> value)) throw fail("missing value after '" + key + "'");
    std::string extra;
    if (fields >> extra) throw fail("trailing tokens after '" + value + "'");
    if (key != "n" && key != "k" && key != "distance" && key != "stabilizer" &&
        key != "logical_x" && key != "logical_z") {
      throw fail("unknown key '" + key + "'");
    }
    try {
      if (key == "n") {
        code.n = std::stoi(value);
        saw_n = true;
      } else if (key == "k") {
        code.k = std::stoi(value);
        saw_k = true;
      } else if (key == "distance") {
        code.distance = std::stoi(value);
      } else if (key == "stabilizer") {
        code.generators.push_back(parse_pauli(value));
      } else if (key == "logical_x") {
        code.logical_x.push_back(parse_pauli(value));
      } else {
        code.logical_z.push_back(parse_pauli(value));
      }
    } catch (const ParseError& e) {
      throw fail(e.what());
    } catch (const std::exception& e) {
      throw fail(std::string("bad value: ") + e.what());
    }
  }
  if (!saw_n || !saw_k) throw ParseError("code file must set both n and k");
  return code;
}

inline StabilizerCode parse_code_file(const std::string& text) {
  std::istringstream in(text);
  return parse_code_file(in);
}

}  // namespace stabdec

#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "stabdec/errors.hpp"
#include "stabdec/gf2.hpp"

namespace stabdec {

enum class GateKind { H, X, Z, S, CNOT, CZ };

inline int gate_arity(GateKind k) {
  return (k == GateKind::CNOT || k == GateKind::CZ) ? 2 : 1;
}

inline const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Z: return "Z";
    case GateKind::S: return "S";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CZ: return "CZ";
  }
  throw PreconditionError("unknown gate kind");
}

/// One gate on 1-based qubit operands. Two-qubit operands are distinct;
/// for CNOT, q0 is the control and q1 the target.
struct Gate {
  GateKind kind;
  int q0 = 0;
  int q1 = 0;

  static Gate h(int q) { return make(GateKind::H, q, 0); }
  static Gate x(int q) { return make(GateKind::X, q, 0); }
  static Gate z(int q) { return make(GateKind::Z, q, 0); }
  static Gate s(int q) { return make(GateKind::S, q, 0); }
  static Gate cnot(int control, int target) { return make(GateKind::CNOT, control, target); }
  static Gate cz(int a, int b) { return make(GateKind::CZ, a, b); }

  static Gate make(GateKind kind, int q0, int q1) {
    if (q0 < 1) throw PreconditionError("gate operand must be a positive qubit index");
    if (gate_arity(kind) == 2) {
      if (q1 < 1) throw PreconditionError("gate operand must be a positive qubit index");
      if (q0 == q1) throw PreconditionError("two-qubit gate operands must be distinct");
    } else if (q1 != 0) {
      throw PreconditionError("single-qubit gate takes one operand");
    }
    return Gate{kind, q0, q1};
  }

  bool operator==(const Gate&) const = default;
};

/// A flat gate list over `width` qubits. The last `ancilla_count` qubits
/// are workspace initialized to |0>; the rest carry the code block.
struct Circuit {
  int width = 0;
  int ancilla_count = 0;
  std::vector<Gate> gates;

  Circuit() = default;
  Circuit(int width_, int ancilla_count_ = 0)
      : width(width_), ancilla_count(ancilla_count_) {
    check_shape();
  }

  void check_shape() const {
    if (width < 1) throw PreconditionError("circuit width must be positive");
    if (ancilla_count < 0 || ancilla_count >= width) {
      throw PreconditionError("ancilla count must be in [0, width)");
    }
  }

  Circuit& append(const Gate& g) {
    int hi = std::max(g.q0, g.q1);
    if (hi > width) throw PreconditionError("gate operand exceeds circuit width");
    gates.push_back(g);
    return *this;
  }

  bool operator==(const Circuit&) const = default;
};

inline int gate_count(const Circuit& c) { return static_cast<int>(c.gates.size()); }

/// Reversed gate list with each gate inverted. All supported kinds are
/// self-inverse except S, which inverts as three S applications.
inline Circuit inverse(const Circuit& c) {
  Circuit out(c.width, c.ancilla_count);
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
    if (it->kind == GateKind::S) {
      out.append(*it).append(*it).append(*it);
    } else {
      out.append(*it);
    }
  }
  return out;
}

/// Ordered qubit walk q1 -> q2 -> ... -> qm realized as CNOTs along the
/// links. Qubits are distinct and 1-based.
struct ChainSpec {
  std::vector<int> order;

  explicit ChainSpec(std::vector<int> order_) : order(std::move(order_)) {
    if (order.empty()) throw PreconditionError("chain must name at least one qubit");
    std::set<int> seen;
    for (int q : order) {
      if (q < 1) throw PreconditionError("chain qubit index must be positive");
      if (!seen.insert(q).second) throw PreconditionError("chain qubits must be distinct");
    }
  }

  int size() const { return static_cast<int>(order.size()); }
};

/// CNOT q1 q2, CNOT q2 q3, ... over a chain of at least two qubits.
inline Circuit make_linked_chain(const ChainSpec& spec, int width) {
  if (spec.size() < 2) throw PreconditionError("linked chain needs at least two qubits");
  Circuit c(width, 0);
  for (int i = 1; i < spec.size(); ++i) {
    c.append(Gate::cnot(spec.order[i - 1], spec.order[i]));
  }
  return c;
}

/// True iff the gates are all CNOT, each control repeats the previous
/// target, targets are pairwise distinct, and none revisits the first
/// control.
inline bool is_linked_chain(const std::vector<Gate>& gates) {
  if (gates.empty()) return false;
  for (const Gate& g : gates) {
    if (g.kind != GateKind::CNOT) return false;
  }
  std::set<int> used = {gates.front().q0};
  int prev_target = gates.front().q0;
  for (const Gate& g : gates) {
    if (g.q0 != prev_target) return false;
    if (!used.insert(g.q1).second) return false;
    prev_target = g.q1;
  }
  return true;
}

/// The linear action of a CNOT-only circuit on basis labels, as a matrix
/// L over GF(2) with bits' = L * bits (row/col i <-> qubit i+1).
inline Gf2Matrix cnot_linear_map(const Circuit& c) {
  Gf2Matrix m = Gf2Matrix::identity(c.width);
  for (const Gate& g : c.gates) {
    if (g.kind != GateKind::CNOT) {
      throw PreconditionError("linear map requires a CNOT-only circuit");
    }
    m.xor_row(g.q1 - 1, g.q0 - 1);
  }
  return m;
}

/// Text form: a header line `# width W ancilla A`, then one gate per
/// line, LF endings. Stable bytes for equal circuits.
inline std::string serialize(const Circuit& c) {
  c.check_shape();
  std::ostringstream out;
  out << "# width " << c.width << " ancilla " << c.ancilla_count << "\n";
  for (const Gate& g : c.gates) {
    out << gate_name(g.kind) << ' ' << g.q0;
    if (gate_arity(g.kind) == 2) out << ' ' << g.q1;
    out << "\n";
  }
  return out.str();
}

inline Circuit parse_circuit(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  Circuit c;
  int lineno = 0;
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError("circuit line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::vector<std::string> tok;
    std::string t;
    while (fields >> t) tok.push_back(t);
    if (tok.empty()) continue;
    if (!have_header) {
      if (tok.size() != 5 || tok[0] != "#" || tok[1] != "width" || tok[3] != "ancilla") {
        throw fail("expected header '# width W ancilla A'");
      }
      try {
        c.width = std::stoi(tok[2]);
        c.ancilla_count = std::stoi(tok[4]);
      } catch (const std::exception&) {
        throw fail("bad header number");
      }
      try {
        c.check_shape();
      } catch (const PreconditionError& e) {
        throw fail(e.what());
      }
      have_header = true;
      continue;
    }
    if (tok[0] == "#") continue;
    GateKind kind;
    if (tok[0] == "H") kind = GateKind::H;
    else if (tok[0] == "X") kind = GateKind::X;
    else if (tok[0] == "Z") kind = GateKind::Z;
    else if (tok[0] == "S") kind = GateKind::S;
    else if (tok[0] == "CNOT") kind = GateKind::CNOT;
    else if (tok[0] == "CZ") kind = GateKind::CZ;
    else throw fail("unknown gate '" + tok[0] + "'");
    std::size_t want = static_cast<std::size_t>(gate_arity(kind)) + 1;
    if (tok.size() != want) throw fail("wrong operand count for " + tok[0]);
    int q0 = 0, q1 = 0;
    try {
      q0 = std::stoi(tok[1]);
      if (want == 3) q1 = std::stoi(tok[2]);
    } catch (const std::exception&) {
      throw fail("bad operand");
    }
    try {
      c.append(Gate::make(kind, q0, q1));
    } catch (const PreconditionError& e) {
      throw fail(e.what());
    }
  }
  if (!have_header) throw ParseError("circuit text has no header line");
  return c;
}

}  // namespace stabdec
